#!/usr/bin/env python3

import argparse
import glob
import json
import os

import pandas as pd


class ReportViewer:
    """
    Viewer for saved analysis sessions
    """

    def __init__(self, report_dir="analysis_reports"):
        self.report_dir = report_dir

    def list_available_sessions(self):
        """List all available analysis sessions"""
        json_files = glob.glob(os.path.join(self.report_dir, "report_*.json"))

        if not json_files:
            print(f"[ERROR] No analysis reports found in {self.report_dir}")
            return []

        sessions = []
        print(f"[INFO] Available analysis sessions in {self.report_dir}:")
        print("-" * 60)

        for i, json_file in enumerate(sorted(json_files), 1):
            basename = os.path.basename(json_file)
            timestamp_str = basename.replace("report_", "").replace(".json", "")

            try:
                with open(json_file, 'r') as f:
                    metadata = json.load(f)
                duration = metadata.get('session_duration_seconds', 0)
                cases = [r.get('case') for r in metadata.get('reports', [])]

                print(f"{i:2d}. {timestamp_str}")
                print(f"    Session: {metadata.get('session_start', 'Unknown')}")
                print(f"    Duration: {duration:.1f}s | Reports: {len(cases)}")
                print(f"    Cases: {', '.join(str(c) for c in cases)}")
            except Exception:
                print(f"{i:2d}. {timestamp_str} ([WARNING] unreadable session)")

            sessions.append(json_file)

        print("-" * 60)
        return sessions

    def load_session(self, json_file):
        """One row per report of a session"""
        with open(json_file, 'r') as f:
            metadata = json.load(f)
        rows = []
        for r in metadata.get('reports', []):
            rows.append({
                'case': r.get('case'),
                'verdict': r.get('verdict'),
                'cosets': r.get('cosets'),
                'kernel_invariants': r.get('kernel_invariants'),
                'affine_invariants': r.get('affine_invariants'),
                'errors': len(r.get('errors', [])),
                'failures': len(r.get('failures', [])),
                'exit_code': r.get('exit_code'),
            })
        return pd.DataFrame(rows)

    def analyze_session(self, json_file):
        """Print a summary of one session"""
        if not os.path.exists(json_file):
            print(f"[ERROR] File not found: {json_file}")
            return None

        print(f"[INFO] Analyzing session: {os.path.basename(json_file)}")

        try:
            df = self.load_session(json_file)

            if len(df) == 0:
                print("[WARNING] No reports in session")
                return df

            print("=" * 60)
            print(df.to_string(index=False))
            print("=" * 60)
            print(f"   Reports: {len(df)}")
            print(f"   Verdicts: {df['verdict'].value_counts(dropna=False).to_dict()}")
            print(f"   Clean reports: {int((df['exit_code'] == 0).sum())} of {len(df)}")

            csv_file = json_file.replace("report_", "corpus_").replace(".json", ".csv")
            if os.path.exists(csv_file):
                corpus = pd.read_csv(csv_file)
                print(f"   Corpus: {int(corpus['passed'].sum())} of {len(corpus)} fixtures passed")

            return df

        except Exception as e:
            print(f"[ERROR] Error analyzing session: {e}")
            return None

    def compare_sessions(self, json_files):
        """Compare verdict and invariant columns across sessions"""
        if len(json_files) < 2:
            print("[WARNING] Need at least 2 sessions to compare")
            return None

        frames = []
        for json_file in json_files:
            try:
                df = self.load_session(json_file)
                label = os.path.basename(json_file).replace("report_", "").replace(".json", "")
                df = df.set_index('case')[['verdict', 'kernel_invariants', 'affine_invariants']]
                frames.append(df.add_prefix(f"{label}:"))
            except Exception as e:
                print(f"[WARNING] Error loading {json_file}: {e}")

        if len(frames) < 2:
            print("[ERROR] Need at least 2 readable sessions to compare")
            return None

        table = pd.concat(frames, axis=1)
        print("=" * 60)
        print(table.to_string())
        print("=" * 60)

        verdicts = table[[c for c in table.columns if c.endswith(":verdict")]]
        changed = verdicts.nunique(axis=1, dropna=False) > 1
        if changed.any():
            print(f"[WARNING] Verdict changed for: {', '.join(changed[changed].index.astype(str))}")
        else:
            print("[INFO] Verdicts agree across sessions")
        return table


def view(report_dir, session=None, latest=False, compare=None):
    viewer = ReportViewer(report_dir)
    sessions = viewer.list_available_sessions()

    if not sessions:
        return 1

    if latest:
        print(f"\n[INFO] Analyzing latest session...")
        return 0 if viewer.analyze_session(sessions[-1]) is not None else 1

    if session:
        if 1 <= session <= len(sessions):
            return 0 if viewer.analyze_session(sessions[session - 1]) is not None else 1
        print(f"[ERROR] Invalid session number. Choose 1-{len(sessions)}")
        return 1

    if compare:
        compare_files = []
        for session_num in compare:
            if 1 <= session_num <= len(sessions):
                compare_files.append(sessions[session_num - 1])
            else:
                print(f"[WARNING] Invalid session number: {session_num}")
        return 0 if viewer.compare_sessions(compare_files) is not None else 1

    print(f"\n[INFO] Usage examples:")
    print(f"   python report_viewer.py --latest")
    print(f"   python report_viewer.py --session 1")
    print(f"   python report_viewer.py --compare 1 2 3")
    return 0


def main():
    parser = argparse.ArgumentParser(description='Analysis Report Viewer')
    parser.add_argument('--report-dir', default='analysis_reports', help='Analysis reports directory')
    parser.add_argument('--session', type=int, help='Show specific session number')
    parser.add_argument('--compare', nargs='+', type=int, help='Compare multiple sessions')
    parser.add_argument('--latest', action='store_true', help='Show latest session')

    args = parser.parse_args()
    return view(args.report_dir, args.session, args.latest, args.compare)


if __name__ == "__main__":
    raise SystemExit(main())
