"""Command line entry point ``imagemilnor``.

Exit codes: 0 success, 1 not finitely determined, 2 input error,
3 resource cap or genericity failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from typing import List, Optional, TextIO

from . import report as R
from .family import analyze_family
from .germ import InvalidGermError, require_valid, validate
from .germfile import load_germ_file
from .invariants import GermAnalysis, NotFinitelyDeterminedError, compute_report
from .localalg import GenericityError, ResourceLimitError
from .mps import NotAdaptedError
from .parse import ParseError

EXIT_OK, EXIT_NOT_FINDET, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3

COMMANDS = ("validate", "mps", "stable", "findet", "mu", "alt", "image-milnor", "icss", "zero-stables", "family")


def _default_seed() -> int:
    raw = os.environ.get("IMAGEMILNOR_SEED")
    try:
        return int(raw) if raw else 0
    except ValueError:
        return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="imagemilnor", description="Invariants of corank-1 multi-germs.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("file", help="germ description file")
    ap.add_argument("--json", action="store_true", help="emit the versioned JSON report")
    ap.add_argument("--seed", type=int, default=None, help="genericity seed (default $IMAGEMILNOR_SEED or 0)")
    ap.add_argument("-k", type=int, default=2, help="multiplicity for the mps command")
    ap.add_argument("--good", action="store_true", help="assert that the family is good (family command)")
    ap.add_argument("--probe", action="append", default=[], help="extra rational t value (family command)")
    return ap


def run(argv: Optional[List[str]] = None, out: TextIO = None, err: TextIO = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    seed = args.seed if args.seed is not None else _default_seed()
    try:
        g = load_germ_file(args.file)
        return _dispatch(args, g, seed, out)
    except (OSError, ParseError, NotAdaptedError, ValueError) as exc:
        if isinstance(exc, NotFinitelyDeterminedError):
            err.write(f"error: {exc}\n")
            return EXIT_NOT_FINDET
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (ResourceLimitError, GenericityError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_RESOURCE


def _dispatch(args, g, seed: int, out: TextIO) -> int:
    cmd = args.command
    if cmd == "validate":
        rep = validate(g)
        out.write(R.dumps(R.validation_json(rep)) if args.json else "\n".join(rep.lines()) + "\n")
        return EXIT_OK if rep.valid else EXIT_INPUT
    require_valid(g)
    if cmd == "family":
        probes = [Fraction(q) for q in args.probe]
        frep = analyze_family(g, probes, good_asserted=args.good, seed=seed)
        out.write(R.dumps(R.family_json(frep)) if args.json else R.family_text(frep))
        members = [frep.t0, frep.generic]
        return EXIT_OK if all(m is not None and m.finitely_determined for m in members) else EXIT_NOT_FINDET
    a = GermAnalysis(g, seed=seed)
    if cmd == "mps":
        if args.k < 1:
            raise ValueError("-k must be positive")
        comps = a.components(args.k)
        if args.json:
            out.write(R.dumps(R.mps_json(args.k, comps)))
        else:
            for c in comps:
                out.write(f"{c.label()}: ambient ({', '.join(c.variables)}), e={c.expected_dim}\n")
                for gen in c.generators:
                    out.write(f"  {gen.to_text()}\n")
                for note in c.dropped:
                    out.write(f"  dropped zero generator: {note}\n")
        return EXIT_OK
    if cmd == "stable":
        v = a.stability()
        if args.json:
            out.write(R.dumps({"report_version": R.REPORT_VERSION, "kind": "stability", "stable": v.stable,
                               "failure": str(v.failure) if v.failure else None}))
        else:
            out.write("stable: yes\n" if v.stable else f"stable: no ({v.failure})\n")
        return EXIT_OK
    if cmd == "findet":
        v = a.findet()
        if args.json:
            out.write(R.dumps({"report_version": R.REPORT_VERSION, "kind": "findet",
                               "finitely_determined": v.finitely_determined,
                               "failure": str(v.failure) if v.failure else None}))
        else:
            out.write("finitely determined: yes\n" if v.finitely_determined
                      else f"finitely determined: no ({v.failure})\n")
        return EXIT_OK if v.finitely_determined else EXIT_NOT_FINDET
    rep = compute_report(a, seed=seed)
    if not rep.finitely_determined:
        raise NotFinitelyDeterminedError(f"not finitely determined: {rep.findet_failure}")
    if args.json:
        full = R.invariants_json(rep)
        if cmd == "mu":
            payload = {"kind": "strata", "strata": full["strata"]}
        elif cmd == "alt":
            payload = {"kind": "alt", "d": rep.d, "s": rep.s, "mu_alt": full["mu_alt"], "mu_alt_top": rep.mu_alt_top}
        elif cmd == "image-milnor":
            payload = {"kind": "image-milnor", "mu_I": rep.mu_I}
        elif cmd == "icss":
            payload = {"kind": "icss", "icss": full["icss"], "cohomology": full["cohomology"]}
        else:
            payload = {"kind": "zero-stables", "census": full["census"]}
        payload["report_version"] = R.REPORT_VERSION
        out.write(R.dumps(payload))
        return EXIT_OK
    if cmd == "mu":
        lines = [f"k={k} {comp} stratum {st} e={e}: {verdict}" for k, comp, st, e, verdict in rep.strata]
        out.write("\n".join(lines or ["no nonempty strata"]) + "\n")
    elif cmd == "alt":
        out.write("\n".join(R.alt_lines(rep)) + "\n")
    elif cmd == "image-milnor":
        out.write(f"mu_I = {rep.mu_I}\n")
    elif cmd == "icss":
        lines = R.render_page(rep.e1) + [""] + R.render_page(rep.e2) + [""] + R.cohomology_lines(rep)
        out.write("\n".join(lines) + "\n")
    else:
        out.write("\n".join(R.census_lines(rep)) + "\n")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    code = run(argv)
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
