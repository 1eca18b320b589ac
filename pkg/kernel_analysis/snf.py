#!/usr/bin/env python3

"""
Smith normal form over the integers.

Matrices are lists of lists of Python ints, so every entry is arbitrary
precision. The pivot is always the nonzero entry of least absolute value
in the remaining block.
"""

from typing import List, Optional, Sequence, Tuple

IntegerMatrix = List[List[int]]


def identity(n: int) -> IntegerMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], inner: Optional[int] = None) -> IntegerMatrix:
    """Product of an (m x k) and a (k x n) matrix; inner gives k when m or k is 0"""
    k = inner if inner is not None else (len(a[0]) if a else len(b))
    n = len(b[0]) if b else 0
    return [[sum(row[t] * b[t][j] for t in range(k)) for j in range(n)] for row in a]


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) determinant of a square integer matrix"""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    previous = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // previous
        previous = m[k][k]
    return sign * m[n - 1][n - 1]


class SmithNormalForm:
    """
    Smith normal form by unimodular row and column operations.

    After run(), ``left @ A @ right == diagonal`` with left, right
    unimodular and the diagonal entries d1 | d2 | ... nonnegative.

    Args:
        matrix: the integer matrix A (m x n)
        columns: n, required when A has no rows
    """

    def __init__(self, matrix: Sequence[Sequence[int]], columns: Optional[int] = None):
        self.a: IntegerMatrix = [[int(x) for x in row] for row in matrix]
        self.m = len(self.a)
        self.n = columns if columns is not None else (len(self.a[0]) if self.a else 0)
        for row in self.a:
            if len(row) != self.n:
                raise ValueError(f"Ragged matrix: row of length {len(row)}, expected {self.n}")
        self.left = identity(self.m)
        self.right = identity(self.n)

    # elementary operations, mirrored into left / right

    def _swap_rows(self, i: int, j: int):
        if i != j:
            self.a[i], self.a[j] = self.a[j], self.a[i]
            self.left[i], self.left[j] = self.left[j], self.left[i]

    def _swap_columns(self, i: int, j: int):
        if i != j:
            for row in self.a:
                row[i], row[j] = row[j], row[i]
            for row in self.right:
                row[i], row[j] = row[j], row[i]

    def _add_row(self, target: int, source: int, k: int):
        """row target += k * row source"""
        if k:
            a, u = self.a, self.left
            a[target] = [x + k * y for x, y in zip(a[target], a[source])]
            u[target] = [x + k * y for x, y in zip(u[target], u[source])]

    def _add_column(self, target: int, source: int, k: int):
        """column target += k * column source"""
        if k:
            for row in self.a:
                row[target] += k * row[source]
            for row in self.right:
                row[target] += k * row[source]

    def _negate_row(self, i: int):
        self.a[i] = [-x for x in self.a[i]]
        self.left[i] = [-x for x in self.left[i]]

    def _min_entry(self, s: int) -> Optional[Tuple[int, int]]:
        best = None
        for i in range(s, self.m):
            row = self.a[i]
            for j in range(s, self.n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        return i, j
        return None if best is None else (best[1], best[2])

    def _non_divisible(self, s: int) -> Optional[int]:
        pivot = self.a[s][s]
        for i in range(s + 1, self.m):
            row = self.a[i]
            for j in range(s + 1, self.n):
                if row[j] % pivot:
                    return i
        return None

    def run(self) -> Tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
        """Returns (S, U, V) with U A V = S"""
        for s in range(min(self.m, self.n)):
            position = self._min_entry(s)
            if position is None:
                break
            self._swap_rows(s, position[0])
            self._swap_columns(s, position[1])
            while True:
                pivot = self.a[s][s]
                for i in range(s + 1, self.m):
                    if self.a[i][s]:
                        self._add_row(i, s, -(self.a[i][s] // pivot))
                for j in range(s + 1, self.n):
                    if self.a[s][j]:
                        self._add_column(j, s, -(self.a[s][j] // pivot))
                leftovers = [(abs(self.a[i][s]), i, s) for i in range(s + 1, self.m) if self.a[i][s]]
                leftovers += [(abs(self.a[s][j]), s, j) for j in range(s + 1, self.n) if self.a[s][j]]
                if leftovers:
                    _, i, j = min(leftovers)
                    if j == s:
                        self._swap_rows(s, i)
                    else:
                        self._swap_columns(s, j)
                    continue
                row = self._non_divisible(s)
                if row is None:
                    break
                self._add_row(s, row, 1)
            if self.a[s][s] < 0:
                self._negate_row(s)
        return self.a, self.left, self.right

    def diagonal(self) -> List[int]:
        return [self.a[i][i] for i in range(min(self.m, self.n))]


def smith_normal_form(matrix: Sequence[Sequence[int]], columns: Optional[int] = None):
    """(S, U, V) with U A V = S, U and V unimodular, S diagonal with d1 | d2 | ..."""
    return SmithNormalForm(matrix, columns).run()


def invariant_factors(matrix: Sequence[Sequence[int]], columns: Optional[int] = None) -> List[int]:
    snf = SmithNormalForm(matrix, columns)
    snf.run()
    return snf.diagonal()
