"""The command line round trip: gen -> pack -> verify -> dot.

Runs the installed CLI in-process on a generated instance, keeps the
traced result document, replays it through the verifier, and renders a
DOT drawing. Everything is deterministic: same seed, same bytes.
"""

import io
import json
import tempfile
from contextlib import redirect_stdout
from pathlib import Path

from treepack.cli import main


def run(argv: list[str]) -> tuple[int, str]:
    buffer = io.StringIO()
    with redirect_stdout(buffer):
        code = main(argv)
    return code, buffer.getvalue()


with tempfile.TemporaryDirectory() as workdir:
    graph_file = str(Path(workdir) / "instance.gr")
    result_file = str(Path(workdir) / "result.json")

    code, _ = run(["gen", "6", "12", "2026", "-o", graph_file])
    print(f"gen:    exit {code}")
    print(Path(graph_file).read_text(), end="")

    code, out = run(["pack", graph_file, "2", "--trace"])
    Path(result_file).write_text(out)
    doc = json.loads(out)
    print(f"pack:   exit {code}, verdict {doc['verdict']}, {len(doc['trace'])} exchanges traced")

    code, _ = run(["verify", graph_file, result_file])
    print(f"verify: exit {code} (0 means the claim checks out, trace replay included)")

    code, dot = run(["dot", graph_file, result_file])
    print(f"dot:    exit {code}")
    print(dot, end="")

    code, out = run(["oracle", graph_file, "2"])
    print(f"oracle: exit {code}, {out}", end="")
