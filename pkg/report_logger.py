#!/usr/bin/env python3

import json
import os
import time
from datetime import datetime

import pandas as pd


class AnalysisLogger:
    """
    Analysis logger that collects the reports of one run and writes them
    as a session: report_<ts>.json, report_<ts>.txt and, for corpus runs,
    corpus_<ts>.csv
    """

    def __init__(self, report_dir="analysis_reports"):
        """
        Initialize analysis logger

        Args:
            report_dir (str): Directory to save session files
        """
        self.report_dir = report_dir
        self.reports = []
        self.corpus_rows = []

        # Metadata
        self.session_start_time = time.time()

        # File paths
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        self.json_file = os.path.join(report_dir, f"report_{timestamp}.json")
        self.text_file = os.path.join(report_dir, f"report_{timestamp}.txt")
        self.csv_file = os.path.join(report_dir, f"corpus_{timestamp}.csv")

    def log_report(self, report):
        """
        Log one AnalysisReport

        Args:
            report (AnalysisReport): the finished report
        """
        self.reports.append(report)

    def log_corpus(self, summary):
        """
        Log a corpus run: every fixture report plus one table row per fixture

        Args:
            summary (CorpusSummary): the finished corpus run
        """
        for result in summary.results:
            if result.report is not None:
                self.reports.append(result.report)
        self.corpus_rows.extend(summary.rows())

    def _save_corpus_csv(self):
        """Save corpus rows to CSV file"""
        try:
            df = pd.DataFrame(self.corpus_rows, columns=["case", "passed", "verdict", "index",
                                                         "invariants", "seconds", "failures"])
            df.to_csv(self.csv_file, index=False)
        except Exception as e:
            print(f"[WARNING] Failed to save CSV: {e}")

    def save_reports(self):
        """Save the JSON mirror and the text form of every report"""
        metadata = {
            'session_start': datetime.fromtimestamp(self.session_start_time).isoformat(),
            'session_duration_seconds': time.time() - self.session_start_time,
            'total_reports': len(self.reports),
            'exit_codes': [r.exit_code for r in self.reports],
            'reports': [r.to_dict() for r in self.reports],
            'files': {
                'text': self.text_file,
                'csv': self.csv_file if self.corpus_rows else None,
            },
        }
        try:
            with open(self.json_file, 'w') as f:
                json.dump(metadata, f, indent=2)
        except Exception as e:
            print(f"[WARNING] Failed to save report: {e}")

        try:
            with open(self.text_file, 'w') as f:
                f.write("\n\n".join(r.to_text() for r in self.reports) + "\n")
        except Exception as e:
            print(f"[WARNING] Failed to save text report: {e}")

    def save(self):
        """Write the whole session; failures are reported, never raised"""
        if not self.reports and not self.corpus_rows:
            print("[WARNING] No reports recorded")
            return
        try:
            os.makedirs(self.report_dir, exist_ok=True)
        except Exception as e:
            print(f"[WARNING] Failed to save session, cannot create {self.report_dir}: {e}")
            return

        self.save_reports()
        if self.corpus_rows:
            self._save_corpus_csv()

        print("=" * 60)
        print(f"[INFO] Session saved: {len(self.reports)} report(s)")
        print(f"[INFO]    Reports: {self.json_file}")
        print(f"[INFO]    Text:    {self.text_file}")
        if self.corpus_rows:
            print(f"[INFO]    Corpus:  {self.csv_file}")
        print("=" * 60)
