"""Text and JSON rendering of reports.  Output is deterministic."""

from __future__ import annotations

import json
import math
from typing import Dict, List, Tuple

from .family import FamilyReport, verdict_lines
from .germ import ValidationReport
from .invariants import AltRow, IcssPage, InvariantReport
from .mps import MpsComponent, disentanglement_nonempty, germ_nonempty, restrictions

REPORT_VERSION = 1


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- JSON ----------------------------------------------------------------------


def validation_json(rep: ValidationReport) -> dict:
    return {
        "report_version": REPORT_VERSION,
        "kind": "validation",
        "valid": rep.valid,
        "branches": [
            {
                "label": b.label,
                "rank": b.rank,
                "kernel_in_y": b.kernel_in_y,
                "adapted": b.adapted,
                "x_components": [i + 1 for i in b.x_positions],
                "multiplicity": None if b.multiplicity == math.inf else b.multiplicity,
            }
            for b in rep.branches
        ],
        "diagnostics": [{"code": d.code, "branch": d.branch, "message": d.message} for d in rep.diagnostics],
    }


def component_json(c: MpsComponent) -> dict:
    return {
        "label": c.label(),
        "assignment": list(c.assignment),
        "block_sizes": list(c.block_sizes),
        "variables": list(c.variables),
        "generators": [gen.to_text() for gen in c.generators],
        "expected_dim": c.expected_dim,
        "germ_nonempty": germ_nonempty(c),
        "dropped": list(c.dropped),
        "restrictions": [
            {
                "types": r.label(),
                "class_size": cls.size,
                "sign": cls.sign,
                "expected_dim": r.expected_dim,
                "disentanglement_nonempty": disentanglement_nonempty(r),
            }
            for cls, r in restrictions(c)
        ],
    }


def mps_json(k: int, comps: List[MpsComponent]) -> dict:
    return {"report_version": REPORT_VERSION, "kind": "mps", "k": k, "components": [component_json(c) for c in comps]}


def alt_row_json(row: AltRow) -> dict:
    return {
        "total": row.total,
        "orbits": [
            {
                "component": o.component,
                "isotropy_order": o.isotropy_order,
                "expected_dim": o.expected_dim,
                "mu_sum": o.mu_sum,
                "sign_sum": o.sign_sum,
                "contribution": o.contribution,
                "classes": [
                    {
                        "types": c.types,
                        "size": c.size,
                        "sign": c.sign,
                        "expected_dim": c.expected_dim,
                        "nonempty": c.nonempty,
                        "mu": c.mu,
                    }
                    for c in o.classes
                ],
            }
            for o in row.orbits
        ],
    }


def page_json(page: IcssPage) -> dict:
    return {
        "page": page.page,
        "entries": [{"r": r, "q": q, "rank": v} for (r, q), v in sorted(page.entries.items())],
        "annotations": list(page.annotations),
    }


def invariants_json(rep: InvariantReport) -> dict:
    out = {
        "report_version": REPORT_VERSION,
        "kind": "invariants",
        "name": rep.name,
        "n": rep.n,
        "p": rep.p,
        "s": rep.s,
        "stable": rep.stable,
        "stability_failure": rep.stability_failure,
        "finitely_determined": rep.finitely_determined,
        "findet_failure": rep.findet_failure,
        "d": rep.d,
        "mu_alt": {str(k): alt_row_json(row) for k, row in sorted(rep.alt.items())},
        "mu_alt_top": rep.mu_alt_top,
        "mu_I": rep.mu_I,
        "census": [
            {
                "k": c.k,
                "partition": list(c.partition.parts),
                "component": c.component,
                "stratum": c.stratum,
                "count": c.count,
            }
            for c in rep.census
        ],
        "icss": {"E1": page_json(rep.e1), "E2": page_json(rep.e2)} if rep.e1 else None,
        "cohomology": [{"degree": d, "rank": r} for d, r in sorted(rep.cohomology.items())],
        "strata": [
            {"k": k, "component": comp, "stratum": st, "expected_dim": e, "milnor": verdict}
            for k, comp, st, e, verdict in rep.strata
        ],
    }
    return out


def family_json(rep: FamilyReport) -> dict:
    t0, gen = rep.t0, rep.generic
    sc = rep.semicontinuity
    return {
        "report_version": REPORT_VERSION,
        "kind": "family",
        "name": rep.name,
        "has_opsu": rep.has_opsu,
        "members": {label: invariants_json(r) for label, r in rep.members.items()},
        "errors": dict(rep.errors),
        "mu_I": {"t0": t0.mu_I if t0 else None, "generic": gen.mu_I if gen else None},
        "s_constant": rep.s_constant,
        "d_constant": rep.d_constant,
        "hypothesis": rep.hypothesis,
        "mu_I_constant": rep.mu_I_constant,
        "mu_alt_constant": {str(k): v for k, v in sorted(rep.mu_alt_constant.items())},
        "strata_constant": rep.strata_constant,
        "zero_stables_constant": rep.zero_stables_constant,
        "disagreeing_probes": list(rep.disagreeing_probes),
        "semicontinuity": {
            "satisfied": sc.satisfied,
            "checked": list(sc.checked),
            "violations": list(sc.violations),
        }
        if sc
        else None,
        "verdicts": [
            {
                "name": v.name,
                "fired": v.fired,
                "text": v.text(),
                "hypotheses": [{"name": h, "holds": ok} for h, ok in v.hypotheses],
            }
            for v in rep.verdicts
        ],
    }


# -- schemas (draft 2020-12) -----------------------------------------------------

_NULLABLE_INT = {"type": ["integer", "null"]}

_PAGE = {
    "type": "object",
    "required": ["page", "entries", "annotations"],
    "properties": {
        "page": {"enum": [1, 2]},
        "entries": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["r", "q", "rank"],
                "properties": {
                    "r": {"type": "integer", "minimum": 0},
                    "q": {"type": "integer", "minimum": 0},
                    "rank": {"type": "integer", "minimum": 1},
                },
            },
        },
        "annotations": {"type": "array", "items": {"type": "string"}},
    },
}

INVARIANTS_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": [
        "report_version", "kind", "n", "p", "s", "stable", "finitely_determined",
        "d", "mu_alt", "mu_alt_top", "mu_I", "census", "icss", "cohomology",
    ],
    "properties": {
        "report_version": {"const": REPORT_VERSION},
        "kind": {"const": "invariants"},
        "name": {"type": ["string", "null"]},
        "n": {"type": "integer", "minimum": 1},
        "p": {"type": "integer", "minimum": 2},
        "s": {"type": "integer", "minimum": 1},
        "stable": {"type": "boolean"},
        "finitely_determined": {"type": "boolean"},
        "d": _NULLABLE_INT,
        "mu_alt": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["total", "orbits"],
                "properties": {"total": {"type": "integer", "minimum": 0}, "orbits": {"type": "array"}},
            },
        },
        "mu_alt_top": _NULLABLE_INT,
        "mu_I": _NULLABLE_INT,
        "census": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["k", "partition", "count"],
                "properties": {
                    "k": {"type": "integer", "minimum": 2},
                    "partition": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                    "count": {"type": "integer", "minimum": 1},
                },
            },
        },
        "icss": {
            "oneOf": [
                {"type": "null"},
                {"type": "object", "required": ["E1", "E2"], "properties": {"E1": _PAGE, "E2": _PAGE}},
            ]
        },
        "cohomology": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["degree", "rank"],
                "properties": {"degree": {"type": "integer"}, "rank": {"type": "integer", "minimum": 1}},
            },
        },
    },
}

FAMILY_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["report_version", "kind", "members", "mu_I", "hypothesis", "semicontinuity", "verdicts"],
    "properties": {
        "report_version": {"const": REPORT_VERSION},
        "kind": {"const": "family"},
        "members": {"type": "object", "additionalProperties": INVARIANTS_SCHEMA},
        "mu_I": {
            "type": "object",
            "required": ["t0", "generic"],
            "properties": {"t0": _NULLABLE_INT, "generic": _NULLABLE_INT},
        },
        "hypothesis": {"enum": ["s<=d everywhere", "s,d constant", "neither"]},
        "verdicts": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "fired", "text", "hypotheses"],
                "properties": {"fired": {"type": "boolean"}, "text": {"type": "string"}},
            },
        },
    },
}

SCHEMAS = {"invariants": INVARIANTS_SCHEMA, "family": FAMILY_SCHEMA}


# -- text ----------------------------------------------------------------------


def render_page(page: IcssPage) -> List[str]:
    cols = max(page.columns(), 1)
    rows = max(page.rows(), 1)
    cells = {rq: str(v) for rq, v in page.entries.items()}
    width = max([len(c) for c in cells.values()] + [len(str(cols - 1)), 1])
    lines = [f"E{page.page}"]
    for q in range(rows - 1, -1, -1):
        row = " ".join(cells.get((r, q), ".").rjust(width) for r in range(cols))
        lines.append(f"{q:>3} | {row}")
    lines.append("    +" + "-" * (cols * (width + 1)))
    lines.append("      " + " ".join(str(r).rjust(width) for r in range(cols)))
    lines.extend(f"  {a}" for a in page.annotations)
    return lines


def census_lines(rep: InvariantReport) -> List[str]:
    if not rep.census:
        return ["0-stables: none"]
    return ["0-stables:"] + [
        f"  k={c.k} partition {c.partition} component {c.component} stratum {c.stratum}: {c.count} point(s)"
        for c in rep.census
    ]


def alt_lines(rep: InvariantReport) -> List[str]:
    lines = []
    for k, row in sorted(rep.alt.items()):
        lines.append(f"mu_{k}^alt = {row.total}")
        for o in row.orbits:
            lines.append(
                f"  {o.component}: |H|={o.isotropy_order} e={o.expected_dim} "
                f"mu-sum={o.mu_sum} sign-sum={o.sign_sum} contribution={o.contribution}"
            )
    if rep.d is not None:
        lines.append(f"mu_{rep.d + 1}^alt = {rep.mu_alt_top} (top term, s={rep.s}, d={rep.d})")
    return lines


def cohomology_lines(rep: InvariantReport) -> List[str]:
    if not rep.cohomology:
        return ["reduced cohomology: trivial"]
    return [f"H~^{deg}: rank {rank}" for deg, rank in sorted(rep.cohomology.items())]


def invariants_text(rep: InvariantReport) -> str:
    head = [
        f"germ {rep.name or '-'}: n={rep.n} p={rep.p} s={rep.s}",
        f"stable: {'yes' if rep.stable else 'no'}",
        f"finitely determined: {'yes' if rep.finitely_determined else 'no'}"
        + (f" ({rep.findet_failure})" if rep.findet_failure else ""),
    ]
    if not rep.finitely_determined:
        return "\n".join(head) + "\n"
    body = [f"d = {rep.d}"] + alt_lines(rep) + [f"mu_I = {rep.mu_I}"] + census_lines(rep) + cohomology_lines(rep)
    return "\n".join(head + body) + "\n"


def family_text(rep: FamilyReport) -> str:
    lines = [f"family {rep.name or '-'}"]
    for label, r in rep.members.items():
        fd = "yes" if r.finitely_determined else "no"
        lines.append(f"  {label}: stable={'yes' if r.stable else 'no'} findet={fd} s={r.s} d={r.d} mu_I={r.mu_I}")
    for label, err in rep.errors.items():
        lines.append(f"  {label}: error: {err}")
    lines.append(f"hypothesis class: {rep.hypothesis}")
    lines.append(f"mu_I constant: {'yes' if rep.mu_I_constant else 'no'}")
    for k, ok in sorted(rep.mu_alt_constant.items()):
        lines.append(f"mu_{k}^alt constant: {'yes' if ok else 'no'}")
    lines.append(f"strata Milnor numbers constant: {'yes' if rep.strata_constant else 'no'}")
    lines.append(f"0-stable census constant: {'yes' if rep.zero_stables_constant else 'no'}")
    if rep.disagreeing_probes:
        lines.append("probes disagreeing with generic t: " + ", ".join(rep.disagreeing_probes))
    sc = rep.semicontinuity
    if sc:
        lines.append(f"semicontinuity: {'satisfied' if sc.satisfied else 'VIOLATED'}")
        lines.extend(f"  {c}" for c in sc.checked)
        lines.extend(f"  violation: {v}" for v in sc.violations)
    lines.append("verdicts:")
    lines.extend(f"  {v}" for v in verdict_lines(rep))
    return "\n".join(lines) + "\n"
