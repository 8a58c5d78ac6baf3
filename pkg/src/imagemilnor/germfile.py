"""Germ description files.

    germ [name] {
      n = 2; p = 3;
      opsu;            # optional: f has a one-parameter stable unfolding
      parameter;       # optional: declare a family even if t is unused
      branch a(x, y) { x, y^2, x*y }
      probes = 1, -1/2;
    }

The last variable of a branch is its kernel direction y.  Using ``t``
anywhere in a component makes the file a one-parameter family.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional

from .germ import Branch, MultiGerm
from .parse import ExpressionParser, ParseError, TokenStream, tokenize
from .ratfunc import PARAMETER


def _int(s: TokenStream, what: str) -> int:
    tok = s.next()
    if tok.kind != "num":
        raise s.error(f"expected an integer for {what}", tok)
    return int(tok.text)


def _rational(s: TokenStream) -> Fraction:
    neg = s.accept("-")
    tok = s.next()
    if tok.kind != "num":
        raise s.error("expected a rational number", tok)
    value = Fraction(int(tok.text))
    if s.accept("/"):
        den = s.next()
        if den.kind != "num" or int(den.text) == 0:
            raise s.error("expected a nonzero denominator", den)
        value /= int(den.text)
    return -value if neg else value


def parse_germ_file(text: str, name: Optional[str] = None) -> MultiGerm:
    s = TokenStream(tokenize(text))
    s.expect("germ")
    if s.peek.kind == "ident":
        name = s.next().text
    s.expect("{")
    n = p = None
    opsu = declared = False
    probes: List[Fraction] = []
    branches: List[Branch] = []
    labels = set()
    while not s.accept("}"):
        tok = s.peek
        if tok.kind == "eof":
            raise s.error("unexpected end of input, expected '}'")
        if s.accept("n"):
            s.expect("=")
            n = _int(s, "n")
            s.expect(";")
        elif s.accept("p"):
            s.expect("=")
            p = _int(s, "p")
            s.expect(";")
        elif s.accept("opsu"):
            opsu = True
            s.expect(";")
        elif s.accept("parameter"):
            declared = True
            s.expect(";")
        elif s.accept("probes"):
            s.expect("=")
            probes.append(_rational(s))
            while s.accept(","):
                probes.append(_rational(s))
            s.expect(";")
        elif s.accept("branch"):
            if n is None or p is None:
                raise s.error("n and p must be given before the first branch", tok)
            branches.append(_branch(s, n, p, labels))
        else:
            raise s.error(f"unexpected {tok.text!r}; expected n, p, opsu, parameter, branch or probes")
    if s.peek.kind != "eof":
        raise s.error(f"unexpected {s.peek.text!r} after the germ block")
    if n is None or p is None:
        raise ParseError("missing n or p", 1, 1)
    if not branches:
        raise ParseError("a germ needs at least one branch", 1, 1)
    return MultiGerm(n, p, tuple(branches), has_opsu=opsu, declares_parameter=declared, probes=tuple(probes), name=name)


def _branch(s: TokenStream, n: int, p: int, labels: set) -> Branch:
    tok = s.next()
    if tok.kind != "ident":
        raise s.error("expected a branch label", tok)
    if tok.text in labels:
        raise s.error(f"duplicate branch label {tok.text!r}", tok)
    labels.add(tok.text)
    s.expect("(")
    names: List[str] = []
    open_tok = s.peek
    while True:
        v = s.next()
        if v.kind != "ident":
            raise s.error("expected a variable name", v)
        if v.text == PARAMETER:
            raise s.error(f"{PARAMETER!r} is reserved for the unfolding parameter", v)
        if v.text in names:
            raise s.error(f"variable {v.text!r} listed twice", v)
        names.append(v.text)
        if not s.accept(","):
            break
    s.expect(")")
    if len(names) != n:
        raise s.error(f"expected {n} source variables, found {len(names)}", open_tok)
    s.expect("{")
    parser = ExpressionParser(s, names)
    comps = [parser.parse_expression()]
    while s.accept(","):
        comps.append(parser.parse_expression())
    close = s.peek
    s.expect("}")
    if len(comps) != p:
        raise ParseError(f"expected {p} components, found {len(comps)}", close.line, close.column)
    s.accept(";")
    return Branch(tok.text, tuple(names), tuple(comps))


def render_germ(g: MultiGerm) -> str:
    """Canonical text; parse_germ_file(render_germ(g)) reproduces g."""
    head = f"germ {g.name} {{" if g.name and g.name.isidentifier() else "germ {"
    lines = [head, f"  n = {g.n};", f"  p = {g.p};"]
    if g.has_opsu:
        lines.append("  opsu;")
    if g.declares_parameter:
        lines.append("  parameter;")
    for b in g.branches:
        comps = ", ".join(c.to_text() for c in b.components)
        lines.append(f"  branch {b.label}({', '.join(b.variables)}) {{ {comps} }}")
    if g.probes:
        lines.append("  probes = " + ", ".join(str(q) for q in g.probes) + ";")
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_germ_file(path) -> MultiGerm:
    from pathlib import Path

    path = Path(path)
    return parse_germ_file(path.read_text(encoding="utf-8"), name=path.stem)
