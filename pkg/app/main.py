# app/main.py
# Source-tree launcher: `python -m app.main c in out` works without installing.
import os, sys, traceback
print("[Launcher] start", file=sys.stderr, flush=True)

APP_DIR = os.path.dirname(os.path.abspath(__file__))
PROJECT_ROOT = os.path.dirname(APP_DIR)
SRC_DIR = os.path.join(PROJECT_ROOT, "src")
for p in (SRC_DIR, PROJECT_ROOT):
    if p not in sys.path:
        sys.path.insert(0, p)


def fatal(msg: str):
    print(msg, file=sys.stderr, flush=True)
    sys.exit(1)


print("[Launcher] importing midicoth", file=sys.stderr, flush=True)
try:
    from midicoth.cli import main
except Exception:
    fatal("Failed to import midicoth:\n\n" + traceback.format_exc())

rc = main(sys.argv[1:])
print(f"[Launcher] exited rc={rc}", file=sys.stderr, flush=True)
sys.exit(rc)
