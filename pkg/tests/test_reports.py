import json

from midicoth.io.report_writer import format_table, run_summary, write_json, write_rows_csv
from midicoth.utils.corpus import corpus_path, missing_files


def test_csv_and_json(tmp_path):
    rows = [{"label": "Base PPM", "size": 10}, {"label": "+M", "size": 9}]
    assert write_rows_csv(str(tmp_path / "r.csv"), rows) == 2
    assert (tmp_path / "r.csv").read_text(encoding="utf-8").splitlines() == ["label,size", "Base PPM,10", "+M,9"]
    assert write_rows_csv(str(tmp_path / "none.csv"), []) == 0

    summ = run_summary("bench", ["a.txt"], {"a.txt": rows})
    write_json(str(tmp_path / "s.json"), summ)
    loaded = json.loads((tmp_path / "s.json").read_text(encoding="utf-8"))
    assert loaded["command"] == "bench" and loaded["results"]["a.txt"][1]["size"] == 9
    assert "numpy" in loaded["system"]


def test_format_table_alignment():
    text = format_table([{"label": "Base PPM", "size": 42672}, {"label": "+M", "size": 100}])
    lines = text.splitlines()
    assert lines[0].startswith("label") and set(lines[1]) <= {"-", " "}
    assert lines[2].endswith("42,672") and lines[3].endswith("100")
    assert len(lines[2]) == len(lines[3])
    assert format_table([]) == ""


def test_corpus_locator(monkeypatch, tmp_path):
    (tmp_path / "alice29.txt").write_bytes(b"x")
    monkeypatch.setenv("MIDICOTH_CORPUS", str(tmp_path))
    assert corpus_path("alice29.txt") == str(tmp_path / "alice29.txt")
    assert missing_files(["alice29.txt", "nope.bin"]) == ["nope.bin"]
