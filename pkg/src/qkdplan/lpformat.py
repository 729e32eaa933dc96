"""CPLEX-style LP text export and a reader for the same subset."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import LPFormatError
from .program import DeterministicProgram

__all__ = ["export_lp", "format_lp", "read_lp", "LPModel"]

_VALID = re.compile(r"^[A-Za-z_][A-Za-z0-9_.]*$")
_LINE_WIDTH = 200


def _num(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return repr(float(c))


def _terms(coeffs) -> str:
    parts = []
    for name, c in coeffs:
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        parts.append(f"{sign} {name}" if mag == 1 else f"{sign} {_num(mag)} {name}")
    if not parts:
        return "0"
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else text


def _wrap(prefix: str, body: str) -> list[str]:
    words = body.split(" ")
    lines, cur = [], prefix
    for w in words:
        if len(cur) + len(w) + 1 > _LINE_WIDTH and cur.strip():
            lines.append(cur)
            cur = "   "
        cur += " " + w
    lines.append(cur)
    return lines


def format_lp(p: DeterministicProgram) -> str:
    """LP text for ``p``: Minimize, Subject To, Bounds, Generals, Binaries."""
    seen: dict[str, str] = {}
    for name in p.variables:
        if not _VALID.match(name) or len(name) > 255:
            raise LPFormatError(f"variable name {name!r} is not a valid LP identifier")
        folded = name.lower()
        if folded in seen:
            raise LPFormatError(f"variable names {seen[folded]!r} and {name!r} collide")
        seen[folded] = name
    row_names = set()
    for c in p.constraints:
        if not _VALID.match(c.name) or c.name.lower() in row_names:
            raise LPFormatError(f"constraint name {c.name!r} is invalid or duplicated")
        row_names.add(c.name.lower())

    out = ["\\ qkdplan deterministic-equivalent program", "Minimize"]
    obj = [(v, p.objective[v]) for v in p.variables if v in p.objective]
    out += _wrap(" obj:", _terms(obj))
    out.append("Subject To")
    for c in p.constraints:
        terms = [(v, c.coeffs[v]) for v in c.coeffs if c.coeffs[v]]
        if not terms:
            # LP syntax has no empty rows; keep a trace of trivially satisfied ones.
            out.append(f"\\ {c.name}: 0 {c.sense} {_num(c.rhs)}")
            continue
        out += _wrap(f" {c.name}:", f"{_terms(terms)} {c.sense} {_num(c.rhs)}")
    out.append("Bounds")
    for v in p.variables.values():
        if v.kind == "integer":
            out.append(f" {v.name} >= 0")
    generals = [v.name for v in p.variables.values() if v.kind == "integer"]
    binaries = [v.name for v in p.variables.values() if v.kind == "binary"]
    out.append("Generals")
    out += [f" {n}" for n in generals]
    out.append("Binaries")
    out += [f" {n}" for n in binaries]
    out.append("End")
    return "\n".join(out) + "\n"


def export_lp(p: DeterministicProgram, path: str | Path) -> Path:
    """Write ``p`` as an LP file; returns the path written."""
    text = format_lp(p)
    path = Path(path)
    try:
        path.write_text(text)
    except OSError as exc:
        raise LPFormatError(f"cannot write {path}: {exc}") from exc
    return path


@dataclass
class LPModel:
    """Parsed LP content; coefficients as floats."""

    objective: dict[str, float] = field(default_factory=dict)
    rows: list[tuple[str, dict[str, float], str, float]] = field(default_factory=list)
    integers: list[str] = field(default_factory=list)
    binaries: list[str] = field(default_factory=list)
    lower: dict[str, float] = field(default_factory=dict)

    @property
    def variables(self) -> list[str]:
        names = dict.fromkeys(self.objective)
        for _, coeffs, _, _ in self.rows:
            names.update(dict.fromkeys(coeffs))
        names.update(dict.fromkeys(self.integers))
        names.update(dict.fromkeys(self.binaries))
        return list(names)


_TOKEN = re.compile(r"([+-])?\s*([0-9.eE+-]+\s+)?([A-Za-z_][A-Za-z0-9_.]*)")


def _parse_expr(text: str) -> dict[str, float]:
    coeffs: dict[str, float] = {}
    tokens = text.split()
    sign, coef = 1.0, None
    for tok in tokens:
        if tok in ("+", "-"):
            sign = 1.0 if tok == "+" else -1.0
            continue
        try:
            coef = float(tok)
            continue
        except ValueError:
            pass
        coeffs[tok] = coeffs.get(tok, 0.0) + sign * (1.0 if coef is None else coef)
        sign, coef = 1.0, None
    return coeffs


def read_lp(path: str | Path) -> LPModel:
    """Read the LP subset written by :func:`export_lp`."""
    model = LPModel()
    section = None
    statements: list[str] = []
    cur = ""
    lines = Path(path).read_text().splitlines()
    for raw in lines:
        line = raw.split("\\", 1)[0].rstrip()
        if not line.strip():
            continue
        head = line.strip().lower()
        if head in ("minimize", "subject to", "bounds", "generals", "binaries", "end"):
            if cur:
                statements.append((section, cur))
                cur = ""
            section = head
            continue
        if section in ("minimize", "subject to") and line.startswith("    "):
            cur += " " + line.strip()
            continue
        if cur:
            statements.append((section, cur))
        cur = line.strip()
    if cur:
        statements.append((section, cur))
    for section, stmt in statements:
        if section == "minimize":
            _, _, expr = stmt.partition(":")
            model.objective = _parse_expr(expr) if expr.strip() != "0" else {}
        elif section == "subject to":
            name, _, rest = stmt.partition(":")
            m = re.match(r"^(.*?)(<=|>=|=)\s*(\S+)$", rest.strip())
            if not m:
                raise LPFormatError(f"cannot parse constraint {stmt!r}")
            model.rows.append((name.strip(), _parse_expr(m[1]), m[2], float(m[3])))
        elif section == "bounds":
            m = re.match(r"^(\S+)\s*>=\s*(\S+)$", stmt)
            if not m:
                raise LPFormatError(f"cannot parse bound {stmt!r}")
            model.lower[m[1]] = float(m[2])
        elif section == "generals":
            model.integers.extend(stmt.split())
        elif section == "binaries":
            model.binaries.extend(stmt.split())
    return model
