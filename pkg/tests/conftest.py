import json

import pytest

from dangergraph.cli import main


@pytest.fixture
def run_cli(capsys):
    """Invoke the CLI in-process; returns (exit code, stdout, stderr)."""

    def run(*argv: str):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run


@pytest.fixture
def run_cli_json(run_cli):
    """Like run_cli but parses stdout as JSON."""

    def run(*argv: str):
        code, out, err = run_cli(*argv, "--format", "json")
        return code, json.loads(out), err

    return run


@pytest.fixture
def edge_file(tmp_path):
    """Write edge-list text to a temp file and return its path."""

    counter = {"k": 0}

    def make(text: str) -> str:
        counter["k"] += 1
        path = tmp_path / f"graph{counter['k']}.edges"
        path.write_text(text, encoding="utf-8")
        return str(path)

    return make
