import io
import json
import sys

import pytest

from wstate.cli import main


class CliResult:
    def __init__(self, code: int, stdout: str, stderr: str):
        self.code = code
        self.stdout = stdout
        self.stderr = stderr

    @property
    def json(self):
        return json.loads(self.stdout)

    @property
    def error(self):
        return json.loads(self.stderr)


@pytest.fixture
def run_cli(monkeypatch, capsys):
    """Invoke the CLI in-process and capture output and exit code."""

    def _run(*argv, stdin: str | None = None) -> CliResult:
        if stdin is not None:
            monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
        code = main(list(argv))
        captured = capsys.readouterr()
        return CliResult(code, captured.out, captured.err)

    return _run


def write_json(path, doc) -> str:
    path.write_text(json.dumps(doc))
    return str(path)
