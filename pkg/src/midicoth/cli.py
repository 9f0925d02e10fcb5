# src/midicoth/cli.py
"""
Command-line front end.

    midicoth c INPUT OUTPUT          compress ('-' = stdin / stdout)
    midicoth d INPUT OUTPUT          decompress
    midicoth bench [FILE ...]        ablation cascade (defaults to the corpus files)
    midicoth stats INPUT             denoiser diagnostics + per-layer bit ledger

Data goes to the output path or stdout, everything else to stderr through
logging. Exit codes: 0 ok, 1 I/O error, 2 bad or corrupt container,
3 missing corpus files.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from typing import List, Optional, Sequence

from .codec.ablation import layer_bit_accounting, total_improvement
from .codec.container import Container
from .codec.pipeline import Pipeline, compress, decompress
from .config import BENCH_FILES, TWEEDIE_MAX_STEPS, TWEEDIE_STEPS, PipelineConfig
from .denoise.tweedie import score_diagnostics
from .errors import MidicothError
from .io.report_writer import format_table, run_summary, write_csv_stream, write_json, write_rows_csv
from .utils.corpus import corpus_dirs, corpus_path

log = logging.getLogger("midicoth")

EXIT_OK, EXIT_IO, EXIT_FORMAT, EXIT_CORPUS = 0, 1, 2, 3


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as f:
        return f.read()


def _write_output(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    with open(path, "wb") as f:
        f.write(data)


def _steps(value: str) -> int:
    n = int(value)
    if not 1 <= n <= TWEEDIE_MAX_STEPS:
        raise argparse.ArgumentTypeError(f"steps must be in 1..{TWEEDIE_MAX_STEPS}")
    return n


def config_from_args(args: argparse.Namespace) -> PipelineConfig:
    return PipelineConfig(
        enable_match=not args.no_match,
        enable_word=not args.no_word,
        enable_highctx=not args.no_highctx,
        enable_tweedie=not args.no_tweedie,
        tweedie_steps=args.steps,
    )


def _size_line(name: str, n_in: int, n_out: int, seconds: float) -> str:
    ratio = n_out / n_in * 100.0 if n_in else 0.0
    bpb = n_out * 8.0 / n_in if n_in else 0.0
    speed = n_in / 1024.0 / seconds if seconds > 0 else 0.0
    return f"{name}: {n_in:,} -> {n_out:,} bytes  ratio {ratio:.2f}%  {bpb:.3f} bpb  {speed:.1f} KB/s"


# ------------------ Subcommands ------------------

def run_compress(args: argparse.Namespace) -> int:
    cfg = config_from_args(args)
    data = _read_input(args.input)
    t0 = time.perf_counter()
    container = compress(data, cfg)
    seconds = time.perf_counter() - t0
    _write_output(args.output, container.to_bytes())
    log.info("%s [%s]", _size_line(args.input, len(data), len(container), seconds), cfg.label())
    return EXIT_OK


def run_decompress(args: argparse.Namespace) -> int:
    container = Container.from_bytes(_read_input(args.input))
    t0 = time.perf_counter()
    data = decompress(container)
    seconds = time.perf_counter() - t0
    _write_output(args.output, data)
    log.info("%s: %d -> %d bytes in %.1fs [%s]", args.input, len(container), len(data), seconds,
             container.config.label())
    return EXIT_OK


def run_bench(args: argparse.Namespace) -> int:
    paths: List[str] = []
    missing: List[str] = []
    for name in (args.files or BENCH_FILES):
        p = name if os.path.isfile(name) else corpus_path(name)
        if p is None:
            missing.append(name)
        else:
            paths.append(p)
    if missing:
        log.error("missing corpus files: %s (searched %s)", ", ".join(missing), ", ".join(corpus_dirs()))
        return EXIT_CORPUS

    csv_rows = []
    results = {}
    for p in paths:
        data = _read_input(p)
        name = os.path.basename(p)
        log.info("bench %s (%d bytes)", name, len(data))
        rows = layer_bit_accounting(data, args.steps, verify=args.verify)
        table = [r.to_dict() for r in rows]
        print(f"\n{name}  ({len(data):,} bytes)")
        print(format_table(table, ["label", "size", "ratio", "bpb", "delta_pct", "seconds"]))
        print(f"total improvement: {total_improvement(rows):+.2f}%")
        csv_rows.extend({"file": name, **r} for r in table)
        results[name] = {"input_bytes": len(data), "rows": table, "total_improvement_pct": total_improvement(rows)}

    # one comma-separated line per (file, configuration), after the tables
    print()
    sys.stdout.flush()
    write_csv_stream(sys.stdout, csv_rows)

    if args.csv:
        write_rows_csv(args.csv, csv_rows)
        log.info("CSV -> %s", args.csv)
    if args.json:
        write_json(args.json, run_summary("bench", paths, results, {"tweedie_steps": args.steps}))
        log.info("JSON -> %s", args.json)
    return EXIT_OK


def run_stats(args: argparse.Namespace) -> int:
    cfg = config_from_args(args)
    data = _read_input(args.input)
    pipe = Pipeline(cfg, ledger=True)
    t0 = time.perf_counter()
    payload = pipe.encode(data)
    log.info("%s", _size_line(args.input, len(data), len(payload), time.perf_counter() - t0))

    if pipe.tweedie is not None:
        diag = [r._asdict() for r in score_diagnostics(pipe.tweedie.table)]
        print("denoiser corrections (observation-weighted mean |delta'|)")
        print(format_table(diag, ["gamma", "c_center", "step", "mean_abs_delta", "weight"]))
        if args.stats_out:
            write_rows_csv(args.stats_out, diag)
            log.info("diagnostics -> %s", args.stats_out)
    else:
        log.warning("tweedie layer disabled, no denoiser diagnostics")

    ledger = pipe.ledger
    print("\nper-stage code length")
    print(format_table([vars(r) for r in ledger.summary()], ["stage", "bytes", "bpb", "gain_pct"]))
    print(f"quantization overhead: {ledger.quantization_overhead_bits / 8.0:,.1f} bytes")
    return EXIT_OK


# ------------------ Parser ------------------

def _add_layer_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--no-match", action="store_true", help="Disable the match model")
    p.add_argument("--no-word", action="store_true", help="Disable the word model")
    p.add_argument("--no-highctx", action="store_true", help="Disable the order-5..8 model")
    p.add_argument("--no-tweedie", action="store_true", help="Disable the denoiser")
    p.add_argument("--steps", type=_steps, default=TWEEDIE_STEPS, help="Denoising steps (1-4)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="midicoth", description="Context-mixing byte compressor with Tweedie denoising")
    ap.add_argument("-v", "--verbose", action="store_true", help="DEBUG logging (progress lines)")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("c", help="Compress INPUT to OUTPUT")
    c.add_argument("input", help="Input path or '-'")
    c.add_argument("output", help="Output path or '-'")
    _add_layer_flags(c)
    c.set_defaults(func=run_compress)

    d = sub.add_parser("d", help="Decompress INPUT to OUTPUT")
    d.add_argument("input", help="Container path or '-'")
    d.add_argument("output", help="Output path or '-'")
    d.set_defaults(func=run_decompress)

    b = sub.add_parser("bench", help="Layer ablation cascade")
    b.add_argument("files", nargs="*", help=f"Files or corpus names (default: {', '.join(BENCH_FILES)})")
    b.add_argument("--steps", type=_steps, default=TWEEDIE_STEPS, help="Denoising steps (1-4)")
    b.add_argument("--verify", action="store_true", help="Decompress every row and compare")
    b.add_argument("--csv", default=None, help="Optional CSV path for the rows")
    b.add_argument("--json", default=None, help="Optional JSON summary path")
    b.set_defaults(func=run_bench)

    s = sub.add_parser("stats", help="Denoiser diagnostics and per-stage bit ledger")
    s.add_argument("input", help="Input path or '-'")
    s.add_argument("--stats-out", default=None, help="Optional CSV path for the diagnostics")
    _add_layer_flags(s)
    s.set_defaults(func=run_stats)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="[%(name)s] %(message)s", stream=sys.stderr, force=True)
    try:
        return args.func(args)
    except OSError as e:
        log.error("I/O error: %s", e)
        return EXIT_IO
    except MidicothError as e:
        log.error("%s: %s", type(e).__name__, e)
        return EXIT_FORMAT


if __name__ == "__main__":
    sys.exit(main())
