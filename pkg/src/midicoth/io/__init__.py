from .report_writer import format_table, run_summary, system_info, write_csv_stream, write_json, write_rows_csv

__all__ = ["format_table", "run_summary", "system_info", "write_csv_stream", "write_json", "write_rows_csv"]
