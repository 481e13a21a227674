"""Regenerate tests/golden from the CLI cases (single worker)."""
import contextlib
import io
import json
import os
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from cli_cases import CASES  # noqa: E402
from ribbonquandle.cli import main  # noqa: E402


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        status = main(argv + ["--workers", "1"])
    return status, out.getvalue(), err.getvalue()


if __name__ == "__main__":
    golden = ROOT / "tests" / "golden"
    golden.mkdir(exist_ok=True)
    os.chdir(ROOT / "corpus")
    statuses = {}
    for name, argv in sorted(CASES.items()):
        status, out, err = run(argv)
        statuses[name] = status
        (golden / f"{name}.out").write_text(out)
        (golden / f"{name}.err").write_text(err)
    (golden / "exit_codes.json").write_text(json.dumps(statuses, indent=2, sort_keys=True) + "\n")
