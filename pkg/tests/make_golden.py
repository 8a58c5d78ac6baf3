"""Regenerate tests/golden/ from the current CLI.  Review the diff before committing."""

import io
from pathlib import Path

from imagemilnor.cli import run

HERE = Path(__file__).resolve().parent
CASES = [
    ("validate", "crosscap"), ("mps", "s1"), ("stable", "quadruple"), ("findet", "degenerate"),
    ("mu", "s1"), ("alt", "h2"), ("image-milnor", "p3"), ("icss", "quadruple"), ("icss", "cusp"),
    ("zero-stables", "triple"), ("family", "cuspfam"), ("image-milnor", "c3c4"),
]


def render(command, germ, json=False):
    out, err = io.StringIO(), io.StringIO()
    argv = [command, str(HERE.parent / "corpus" / f"{germ}.germ"), "--seed", "0"] + (["--json"] if json else [])
    code = run(argv, out, err)
    return code, out.getvalue()


def golden_name(command, germ, json=False):
    return f"{command}-{germ}.{'json' if json else 'txt'}"


if __name__ == "__main__":
    for command, germ in CASES:
        for json in (False, True):
            _, text = render(command, germ, json)
            (HERE / "golden" / golden_name(command, germ, json)).write_text(text)
