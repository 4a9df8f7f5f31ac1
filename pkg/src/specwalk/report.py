"""Bound-check records and deterministic report serialization."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .constants import BOUND_REL_TOL

SCHEMA_VERSION = 1

_RELATIONS = ("le", "ge", "lt")


def _fmt(x) -> str:
    """Render a float with 17 significant digits (reproducible diffs)."""
    if isinstance(x, float):
        if math.isnan(x):
            return "NaN"
        if math.isinf(x):
            return "Infinity" if x > 0 else "-Infinity"
        return format(x, ".17g")
    return repr(x)


@dataclass(frozen=True)
class BoundCheck:
    """One verified inequality: lhs `relation` rhs.

    `margin` is signed so that a nonnegative margin means the relation
    holds exactly; `holds` allows a relative slack of
    BOUND_REL_TOL * max(1, |rhs|).  Strict relations ("lt") are tested
    with the same slack, since floating point cannot witness strictness.
    """

    name: str
    paper_anchor: str
    lhs: float
    rhs: float
    relation: str
    holds: bool
    margin: float
    context: dict = field(default_factory=dict)

    @staticmethod
    def make(name: str, anchor: str, lhs: float, rhs: float, relation: str,
             context: dict | None = None) -> "BoundCheck":
        if relation not in _RELATIONS:
            raise ValueError(f"unknown relation {relation!r}")
        lhs = float(lhs)
        rhs = float(rhs)
        tol = BOUND_REL_TOL * max(1.0, abs(rhs))
        if relation == "ge":
            margin = lhs - rhs
        else:
            margin = rhs - lhs
        holds = margin >= -tol
        return BoundCheck(name=name, paper_anchor=anchor, lhs=lhs, rhs=rhs,
                          relation=relation, holds=holds, margin=margin,
                          context=dict(context or {}))

    @property
    def asserted(self) -> bool:
        """Heuristic, report-only records set context['asserted']=False."""
        return self.context.get("asserted", True) is not False

    def to_record(self) -> dict:
        return {
            "name": self.name,
            "paper_anchor": self.paper_anchor,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "relation": self.relation,
            "holds": self.holds,
            "margin": self.margin,
            "context": self.context,
        }


def dumps(obj, indent: int = 0) -> str:
    """JSON text with floats at 17 significant digits and sorted keys.

    The stdlib encoder cannot intercept float formatting, so this small
    recursive writer keeps report output byte-identical across runs.
    """
    pad = " " * indent
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, float):
        return _fmt(obj)
    if isinstance(obj, int):
        return repr(obj)
    if isinstance(obj, str):
        out = obj.replace("\\", "\\\\").replace('"', '\\"')
        out = out.replace("\n", "\\n").replace("\t", "\\t").replace("\r", "\\r")
        return f'"{out}"'
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = []
        for key in sorted(obj, key=str):
            items.append(f'{pad}  "{key}": {dumps(obj[key], indent + 2)}')
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}  {dumps(v, indent + 2)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    # numpy scalars and anything float-like
    if hasattr(obj, "item"):
        return dumps(obj.item(), indent)
    raise TypeError(f"cannot serialize {type(obj)!r}")


def checks_to_json(checks: list[BoundCheck]) -> str:
    return dumps([c.to_record() for c in checks]) + "\n"


def summary_csv(checks: list[BoundCheck]) -> str:
    """Per-checker CSV summary: counts and the worst margin seen."""
    rows: dict[str, list] = {}
    for c in checks:
        name = c.name
        entry = rows.setdefault(name, [0, 0, math.inf])
        entry[0] += 1
        entry[1] += 0 if c.holds else 1
        entry[2] = min(entry[2], c.margin)
    lines = ["checker,records,failures,worst_margin"]
    for name in sorted(rows):
        total, failed, worst = rows[name]
        lines.append(f"{name},{total},{failed},{_fmt(float(worst))}")
    return "\n".join(lines) + "\n"
