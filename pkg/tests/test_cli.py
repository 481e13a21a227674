import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from cli_cases import CASES
from oracles import CORPUS

GOLDEN = Path(__file__).parent / "golden"
EXIT = json.loads((GOLDEN / "exit_codes.json").read_text())


@pytest.fixture
def in_corpus(monkeypatch):
    monkeypatch.chdir(CORPUS)


def _run(argv, workers):
    return _run_with(list(argv) + ["--workers", str(workers)])


def _run_with(argv):
    import contextlib
    import io
    from ribbonquandle.cli import main
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        status = main(argv)
    return status, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", sorted(CASES))
@pytest.mark.parametrize("workers", [1, 2, 8])
def test_golden(in_corpus, name, workers):
    status, out, err = _run(CASES[name], workers)
    assert out == (GOLDEN / f"{name}.out").read_text()
    assert err == (GOLDEN / f"{name}.err").read_text()
    assert status == EXIT[name]


def test_every_fixture_is_exercised():
    used = {a.removeprefix("conj:") for argv in CASES.values() for a in argv}
    fixtures = {str(p.relative_to(CORPUS)) for p in CORPUS.rglob("*") if p.is_file()}
    assert fixtures <= used, sorted(fixtures - used)


def test_documented_examples(in_corpus):
    status, out, _ = _run_with(["colorings", "--pd", "knots/trefoil.pd", "--target", "dihedral:3"])
    assert status == 0 and out.splitlines()[1].split("\t")[-1] == "9"
    status, out, _ = _run_with(["torus", "--p", "5", "--q", "2", "--target", "dihedral:5"])
    assert status == 0 and out.splitlines()[-1].split("\t")[-1] == "25"
    status, _, err = _run_with(["colorings", "--pd", "knots/broken.pd"])
    assert status == 3 and "line 1" in err


def test_json_is_canonical(in_corpus):
    _, out, _ = _run_with(["colorings", "--pd", "knots/figure8.pd", "--format", "json"])
    assert out == json.dumps(json.loads(out), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def test_entry_point_and_worker_variable():
    env = dict(os.environ, RIBBONQ_WORKERS="2")
    proc = subprocess.run([sys.executable, "-m", "ribbonquandle.cli", "colorings", "--pd",
                           "knots/figure8.pd", "--format", "json"],
                          cwd=CORPUS, env=env, capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "colorings_figure8.out").read_text()
    from ribbonquandle.cli import build_parser
    os.environ["RIBBONQ_WORKERS"] = "3"
    try:
        assert build_parser().parse_args(["colorings", "--pd", "x"]).workers == 3
    finally:
        del os.environ["RIBBONQ_WORKERS"]


def test_usage_errors():
    with pytest.raises(SystemExit) as info:
        _run_with(["colorings", "--workers", "0", "--pd", "x"])
    assert info.value.code == 2
    status, _, err = _run_with(["colorings"])
    assert status == 1 and "exactly one" in err
