"""Line-oriented text formats for every object the CLI consumes, plus the
machine-readable run report.

All files are plain text with rational literals ("3", "-1/2"); blank lines
and lines starting with '#' are ignored.  Formats:

  polytope   'dim n' then one facet per line 'a_1 ... a_n | b'
  involution n rows of the matrix L, then one row for the translation c
  subtorus   k' rows of the projection matrix
  fan        'rank n', ray rows 'v_1 ... v_n', cone rows 'c: i_1 ... i_n'
  automorph. n integer matrix rows
  betti      rows 'degree h_plus h_minus'
  critical   'zero table=<betti path>' plus component rows
             'comp <id> index=<2m> stab_rank=<r> series=<ratfun> pair=<id>'

Series literals are univariate polynomials like '1 + t^2 - 3/2*t^4' or
parenthesized quotients '(1+t^2)/(1-t^2)'.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .morse import CriticalComponent, ZeroLevel
from .polytope import AffineInvolution, HPolytope, SubtorusSpec
from .ratfun import Poly, RationalFunction
from .toric import FanAutomorphism, SimplicialFan, SignedBettiTable


class ParseError(ValueError):
    pass


def _data_lines(path) -> list[str]:
    lines = []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append(line)
    if not lines:
        raise ParseError(f"{path}: empty file")
    return lines


def _fractions(tokens) -> list[Fraction]:
    try:
        return [Fraction(tok) for tok in tokens]
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational literal: {exc}")


def load_polytope(path) -> HPolytope:
    lines = _data_lines(path)
    head = lines[0].split()
    if len(head) != 2 or head[0] != "dim":
        raise ParseError(f"{path}: first line must be 'dim n'")
    dim = int(head[1])
    normals, offsets = [], []
    for line in lines[1:]:
        if "|" not in line:
            raise ParseError(f"{path}: facet line needs 'a_1 ... a_n | b': {line!r}")
        left, right = line.split("|")
        a = _fractions(left.split())
        b = _fractions(right.split())
        if len(a) != dim or len(b) != 1:
            raise ParseError(f"{path}: facet line has wrong arity: {line!r}")
        normals.append(a)
        offsets.append(b[0])
    return HPolytope(normals, offsets)


def load_involution(path) -> AffineInvolution:
    lines = _data_lines(path)
    n = len(lines) - 1
    if n < 1:
        raise ParseError(f"{path}: need n matrix rows plus a translation row")
    rows = [_fractions(line.split()) for line in lines[:n]]
    trans = _fractions(lines[n].split())
    if any(len(r) != n for r in rows) or len(trans) != n:
        raise ParseError(f"{path}: expected an {n}x{n} matrix and a length-{n} row")
    try:
        return AffineInvolution(rows, trans)
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}")


def load_subtorus(path) -> SubtorusSpec:
    rows = [_fractions(line.split()) for line in _data_lines(path)]
    if any(len(r) != len(rows[0]) for r in rows):
        raise ParseError(f"{path}: ragged projection matrix")
    try:
        return SubtorusSpec(rows)
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}")


def load_fan(path) -> SimplicialFan:
    lines = _data_lines(path)
    head = lines[0].split()
    if len(head) != 2 or head[0] != "rank":
        raise ParseError(f"{path}: first line must be 'rank n'")
    rank = int(head[1])
    rays, cones = [], []
    for line in lines[1:]:
        if line.startswith("c:"):
            cones.append([int(tok) for tok in line[2:].split()])
        else:
            ray = [int(tok) for tok in line.split()]
            if len(ray) != rank:
                raise ParseError(f"{path}: ray of wrong length: {line!r}")
            rays.append(ray)
    return SimplicialFan(rank, rays, cones)


def load_automorphism(path, fan: SimplicialFan) -> FanAutomorphism:
    rows = [[int(tok) for tok in line.split()] for line in _data_lines(path)]
    return FanAutomorphism(fan, rows)


def load_betti_table(path) -> SignedBettiTable:
    entries: dict[int, tuple[int, int]] = {}
    for line in _data_lines(path):
        toks = line.split()
        if len(toks) != 3:
            raise ParseError(f"{path}: betti row needs 'degree h+ h-': {line!r}")
        deg, hp, hm = (int(t) for t in toks)
        if deg in entries:
            raise ParseError(f"{path}: duplicate degree {deg}")
        entries[deg] = (hp, hm)
    top = max(entries)
    table = [entries.get(i, (0, 0)) for i in range(top + 1)]
    try:
        return SignedBettiTable(table)
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}")


_TERM_RE = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?P<coeff>\d+(?:/\d+)?)?\s*\*?\s*(?P<var>t(?:\^(?P<exp>\d+))?)?\s*"
)


def parse_poly(text: str) -> Poly:
    """Parse '1 - 2*t^2 + 3/2*t^4' style polynomial literals."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")") and _balanced_strip(s):
        s = s[1:-1].strip()
    if not s:
        raise ParseError("empty polynomial literal")
    coeffs: dict[int, Fraction] = {}
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse polynomial near {s[pos:]!r}")
        if m.group("coeff") is None and m.group("var") is None:
            raise ParseError(f"cannot parse polynomial near {s[pos:]!r}")
        sign = -1 if m.group("sign") == "-" else 1
        coeff = Fraction(m.group("coeff")) if m.group("coeff") else Fraction(1)
        if m.group("var"):
            exp = int(m.group("exp")) if m.group("exp") else 1
        else:
            exp = 0
        coeffs[exp] = coeffs.get(exp, Fraction(0)) + sign * coeff
        pos = m.end()
    top = max(coeffs)
    return Poly([coeffs.get(d, Fraction(0)) for d in range(top + 1)])


def _balanced_strip(s: str) -> bool:
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0 and i != len(s) - 1:
                return False
    return depth == 0


def parse_ratfun(text: str) -> RationalFunction:
    """Parse a polynomial or a quotient; the denominator of a quotient must
    be parenthesized ('1/(1-t^2)', '(1+t^2)/(1-t^2)') so that '/' inside
    rational coefficients stays unambiguous."""
    s = text.strip()
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0 and i + 1 < len(s) and s[i + 1] == "(":
            return RationalFunction(parse_poly(s[:i]), parse_poly(s[i + 1 :]))
    return RationalFunction(parse_poly(s))


def load_critical_data(path) -> tuple[ZeroLevel, tuple[CriticalComponent, ...]]:
    base = Path(path).parent
    zero = None
    comps = []
    for line in _data_lines(path):
        toks = line.split()
        if toks[0] == "zero":
            fields = dict(tok.split("=", 1) for tok in toks[1:])
            if "table" not in fields:
                raise ParseError(f"{path}: zero line needs table=<path>")
            zero = ZeroLevel(load_betti_table(base / fields["table"]))
        elif toks[0] == "comp":
            cid = toks[1]
            fields = dict(tok.split("=", 1) for tok in toks[2:])
            missing = {"index", "stab_rank", "series", "pair"} - fields.keys()
            if missing:
                raise ParseError(f"{path}: component {cid} missing {sorted(missing)}")
            comps.append(
                CriticalComponent(
                    cid,
                    int(fields["index"]),
                    int(fields["stab_rank"]),
                    parse_ratfun(fields["series"]),
                    fields["pair"],
                )
            )
        else:
            raise ParseError(f"{path}: unknown record {toks[0]!r}")
    if zero is None:
        raise ParseError(f"{path}: missing zero level record")
    return zero, tuple(comps)


def sha256_file(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


@dataclass
class RunReport:
    """Result of one CLI command.

    The TSV serialization is deterministic (timings are excluded from it by
    design so byte-identical inputs give byte-identical reports).
    """

    command: str
    inputs: list[tuple[str, str, str]] = field(default_factory=list)  # label, value, hash
    rows: list[tuple] = field(default_factory=list)  # (section, key, lhs, rhs, status)
    detail: list[str] = field(default_factory=list)
    verdict: str = "HOLDS"
    timings: dict[str, float] = field(default_factory=dict)

    def add_input_file(self, label: str, path):
        self.inputs.append((label, str(path), sha256_file(path)))

    def add_param(self, label: str, value):
        self.inputs.append((label, str(value), "-"))

    def add_row(self, section: str, key, lhs, rhs, ok: bool):
        self.rows.append((section, str(key), str(lhs), str(rhs), "ok" if ok else "FAIL"))

    def note(self, text: str):
        self.detail.append(text)

    @property
    def exit_code(self) -> int:
        return {"HOLDS": 0, "VIOLATED": 1}.get(self.verdict, 2)

    def to_tsv(self) -> str:
        lines = [f"command\t{self.command}"]
        for label, value, digest in self.inputs:
            lines.append(f"input\t{label}\t{value}\t{digest}")
        for row in self.rows:
            lines.append("row\t" + "\t".join(row))
        lines.append(f"verdict\t{self.verdict}")
        return "\n".join(lines) + "\n"

    def human(self) -> str:
        lines = [f"== {self.command} =="]
        for label, value, digest in self.inputs:
            suffix = f"  sha256={digest[:12]}" if digest != "-" else ""
            lines.append(f"  {label}: {value}{suffix}")
        for section, key, lhs, rhs, status in self.rows:
            lines.append(f"  [{section}] {key}: {lhs} | {rhs} [{status}]")
        lines.extend("  " + d for d in self.detail)
        for name, secs in self.timings.items():
            lines.append(f"  time {name}: {secs:.3f}s")
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)
