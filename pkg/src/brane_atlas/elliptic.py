"""Involutions of elliptic curves and their torus-level shadows.

The curve is ``X = C / <1, gamma>`` with ``delta_1 = 1`` and
``delta_2 = gamma``. This module embeds, as literal data:

* holomorphic involutions and their fixed sets,
* the regions of the upper half-plane whose curves carry an
  anti-holomorphic involution, with the involutions and topological types,
* the action of each involution on ``pi_1 = Z delta_1 + Z delta_2``,
* the maps ``f^+`` and ``f^-`` of ``(C^*)^2`` induced on characters.

A few tabulated entries disagree with a direct computation from the
involution ``z -> a * conj(z)``; those are listed in ``FLAGGED`` and the
computed value is used.

A self-map of ``(C^*)^2`` is written ``z -> b * conj^eta(z)^M`` with
``z^M = (z1^m11 z2^m12, z1^m21 z2^m22)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import DomainError, ParseError
from .lattice import IntegerMatrix, cokernel_invariants, solve_mod_lattice

__all__ = [
    "REGIONS",
    "CurveModulus",
    "EllipticInvolution",
    "TorusMap2",
    "FlaggedCell",
    "FLAGGED",
    "curve_modulus",
    "enumerate_involutions",
    "parse_curve",
    "pi1_matrix",
    "pi1_matrix_tabulated",
    "f_map",
    "f_matrix",
    "is_tabulated",
    "f_table_rows",
    "parse_monomial_map",
    "fixed_components_real_torus",
]

REGIONS = ("H", "A", "B", "C", "D", "E")

# Values of gamma per region. Region C reads "Im = sqrt(1 - Re)" in print,
# which is not a curve admitting the listed involution; |gamma| = 1 is used.
REGION_CONSTRAINTS = {
    "H": "Im(gamma) > 0 (any curve)",
    "A": "Im(gamma) > 1, Re(gamma) = 0",
    "B": "Im(gamma) = 1, Re(gamma) = 0",
    "C": "0 < Re(gamma) < 1/2, |gamma| = 1",
    "D": "Im(gamma) = sqrt(3)/2, Re(gamma) = 1/2",
    "E": "Im(gamma) > sqrt(3)/2, Re(gamma) = 1/2",
}

LABELS = ("1", "-1", "i", "-i", "gamma", "-gamma", "gamma^2", "-gamma^2")
_LABEL_ALIASES = {
    "+1": "1", "1": "1", "-1": "-1",
    "i": "i", "+i": "i", "-i": "-i",
    "gamma": "gamma", "+gamma": "gamma", "g": "gamma", "-gamma": "-gamma", "-g": "-gamma",
    "gamma^2": "gamma^2", "+gamma^2": "gamma^2", "gamma2": "gamma^2", "g2": "gamma^2",
    "-gamma^2": "-gamma^2", "-gamma2": "-gamma^2", "-g2": "-gamma^2",
}


@dataclass(frozen=True)
class CurveModulus:
    region: str
    constraint: str

    def __post_init__(self) -> None:
        if self.region not in REGIONS:
            raise ParseError(f"unknown region {self.region!r}; expected one of {', '.join(REGIONS)}")


def curve_modulus(region: str) -> CurveModulus:
    region = region.strip().upper()
    if region in ("GENERIC", "ANY"):
        region = "H"
    if region not in REGIONS:
        raise ParseError(f"unknown region {region!r}; expected one of {', '.join(REGIONS)}")
    return CurveModulus(region, REGION_CONSTRAINTS[region])


@dataclass(frozen=True)
class EllipticInvolution:
    """One row of the involution tables.

    Attributes:
        epsilon: ``"+"`` holomorphic, ``"-"`` anti-holomorphic.
        a_label: The coefficient ``a`` of ``z -> a z`` or ``z -> a conj(z)``.
        translated: Whether the row is ``t_y o alpha``.
        region: Curve modulus.
        translations: The admissible translations column.
        topological_type: ``(n, b)`` for anti-holomorphic rows.
        fixed_set: The fixed-set column for holomorphic rows.
        quotient: The quotient column.
    """

    epsilon: str
    a_label: str
    translated: bool
    region: CurveModulus
    translations: str = "-"
    topological_type: tuple[int, int] | None = None
    fixed_set: str = ""
    quotient: str = ""

    @property
    def name(self) -> str:
        base = f"alpha({self.epsilon},{self.a_label})"
        return f"t_y o {base}" if self.translated else base

    @property
    def key(self) -> str:
        return f"{self.region.region}:{self.a_label}{'/t' if self.translated else ''}"


_HOLOMORPHIC_ROWS = [
    ("1", False, "-", "X", "X"),
    ("1", True, "y in X[2], y != x0", "empty", "X'"),
    ("-1", False, "-", "X[2]", "P^1"),
    ("-1", True, "y in X", "y/2 + X[2]", "P^1"),
]

_PAIR = {"1": "-1", "-1": "1", "i": "-i", "-i": "i", "gamma": "-gamma", "-gamma": "gamma",
         "gamma^2": "-gamma^2", "-gamma^2": "gamma^2"}


def _real_rows():
    rows = {r: [] for r in "ABCDE"}
    for a in ("1", "-1"):
        for r in "AB":
            rows[r].append((a, False, "-", (2, 0)))
    for a in ("i", "-i"):
        rows["B"].append((a, False, "-", (1, 1)))
    for a in ("1", "-1"):
        for r in "AB":
            rows[r].append((a, True, f"y != x0, y in Fix(alpha(-,{_PAIR[a]})) = S^1 u S^1", (0, 1)))
    for a in ("gamma", "-gamma"):
        rows["C"].append((a, True, f"y in Fix(alpha(-,{_PAIR[a]})) = S^1", (1, 1)))
    for a in ("1", "-1", "gamma", "-gamma", "gamma^2", "-gamma^2"):
        rows["D"].append((a, True, f"y in Fix(alpha(-,{_PAIR[a]})) = S^1", (1, 1)))
    for a in ("1", "-1"):
        rows["E"].append((a, True, f"y in Fix(alpha(-,{_PAIR[a]})) = S^1", (1, 1)))
    return rows


_REAL_ROWS = _real_rows()


def enumerate_involutions(region, epsilon: str) -> list[EllipticInvolution]:
    """All table rows for a region and sign, with ``+-`` expanded.

    Holomorphic involutions exist on every curve; anti-holomorphic ones only
    on regions A to E.

    Raises:
        DomainError: anti-holomorphic involutions requested on a generic curve.
    """
    cm = region if isinstance(region, CurveModulus) else curve_modulus(region)
    if epsilon == "+":
        return [
            EllipticInvolution("+", a, t, cm, tr, None, fx, q) for a, t, tr, fx, q in _HOLOMORPHIC_ROWS
        ]
    if epsilon != "-":
        raise ParseError(f"epsilon must be + or -, got {epsilon!r}")
    if cm.region == "H":
        raise DomainError("a generic curve has no anti-holomorphic involution; pick region A-E")
    return [
        EllipticInvolution("-", a, t, cm, tr, tt, "", _QUOTIENT[tt])
        for a, t, tr, tt in _REAL_ROWS[cm.region]
    ]


_QUOTIENT = {(0, 1): "Klein bottle", (1, 1): "Moebius strip", (2, 0): "closed annulus"}
_FIXED_TOPOLOGY = {(0, 1): "empty", (1, 1): "S^1", (2, 0): "S^1 u S^1"}


_CURVE = re.compile(r"^(?P<region>[A-Za-z]+):(?P<label>[-+]?[A-Za-z0-9^]+)(?P<t>/t)?$")


def parse_curve(text: str, epsilon: str | None = None) -> EllipticInvolution:
    """Parse ``REGION:LABEL[/t]``, e.g. ``A:-1``, ``H:-1/t``, ``C:gamma/t``.

    Region ``H`` (or ``generic``) selects holomorphic rows; A to E select
    anti-holomorphic rows unless ``epsilon="+"`` is given.
    """
    m = _CURVE.match(text.strip())
    if m is None:
        raise ParseError(f"bad curve involution {text!r}; expected REGION:LABEL[/t]")
    cm = curve_modulus(m["region"])
    label = _LABEL_ALIASES.get(m["label"].lower())
    if label is None:
        raise ParseError(f"unknown involution coefficient {m['label']!r}")
    eps = epsilon or ("+" if cm.region == "H" else "-")
    translated = bool(m["t"])
    for row in enumerate_involutions(cm, eps):
        if row.a_label == label and row.translated == translated:
            return row
    # C, D, E list only translated families; the family contains y = x0
    for row in enumerate_involutions(cm, eps):
        if row.a_label == label and row.translated and "y in Fix" in row.translations:
            return EllipticInvolution(
                row.epsilon, row.a_label, False, cm, "-", row.topological_type, row.fixed_set, row.quotient
            )
    raise DomainError(f"alpha({eps},{label}) is not an involution of a region-{cm.region} curve")


def _m(rows) -> IntegerMatrix:
    return IntegerMatrix.from_rows(rows)


# Columns are the images of (delta_1, delta_2).
_PI1_HOL = {"1": _m([[1, 0], [0, 1]]), "-1": _m([[-1, 0], [0, -1]])}
_PI1_TABULATED = {
    ("AB", "1"): _m([[1, 0], [0, -1]]),
    ("AB", "-1"): _m([[-1, 0], [0, 1]]),
    ("CD", "1"): _m([[1, 0], [0, -1]]),
    ("CD", "-1"): _m([[-1, 0], [0, 1]]),
    ("CD", "gamma"): _m([[0, 1], [1, 0]]),
    ("CD", "-gamma"): _m([[0, -1], [-1, 0]]),
    ("E", "1"): _m([[1, 1], [0, -1]]),
    ("E", "-1"): _m([[-1, -1], [0, 1]]),
}
# Computed from z -> a conj(z) on C / <1, gamma>; these replace or extend the tabulated rows.
_PI1_DERIVED = {
    ("B", "i"): _m([[0, 1], [1, 0]]),
    ("B", "-i"): _m([[0, -1], [-1, 0]]),
    ("D", "1"): _m([[1, 1], [0, -1]]),
    ("D", "-1"): _m([[-1, -1], [0, 1]]),
    ("D", "gamma^2"): _m([[-1, 0], [1, 1]]),
    ("D", "-gamma^2"): _m([[1, 0], [-1, -1]]),
}


def _group(region: str) -> str:
    return {"A": "AB", "B": "AB", "C": "CD", "D": "CD", "E": "E"}[region]


def pi1_matrix_tabulated(region: str, a_label: str) -> IntegerMatrix | None:
    """The tabulated matrix for a region and coefficient, or None if absent."""
    if region == "H":
        return _PI1_HOL.get(a_label)
    return _PI1_TABULATED.get((_group(region), a_label))


def pi1_matrix(inv: EllipticInvolution) -> IntegerMatrix:
    """Action on ``pi_1`` as a matrix whose columns are the images of ``delta_1, delta_2``.

    Translations act trivially on ``pi_1``, so ``t_y o alpha`` and ``alpha``
    share the matrix.
    """
    if inv.epsilon == "+":
        return _PI1_HOL[inv.a_label]
    key = (inv.region.region, inv.a_label)
    if key in _PI1_DERIVED:
        return _PI1_DERIVED[key]
    lit = pi1_matrix_tabulated(*key)
    if lit is None:
        raise DomainError(f"no pi_1 action recorded for {inv.name} in region {key[0]}")
    return lit


class TorusMap2(NamedTuple):
    """``z -> b * conj^eta(z)^M`` on ``(C^*)^2``.

    ``shift`` holds the phases ``c`` of ``b = exp(2 pi i c)`` as fractions
    mod 1, or None for a free (symbolic) shift.
    """

    M: IntegerMatrix
    conj: bool
    shift: tuple[Fraction, Fraction] | None = (Fraction(0), Fraction(0))

    def square_matrix(self) -> IntegerMatrix:
        return self.M @ self.M

    def phase_matrix(self) -> IntegerMatrix:
        """Linear part acting on phases: ``M``, negated when conjugating."""
        return -self.M if self.conj else self.M

    def is_involution(self) -> bool:
        if not self.square_matrix().is_identity():
            return False
        if self.shift is None:
            return True
        return shift_condition_holds(self.phase_matrix(), self.shift)

    def __str__(self) -> str:
        return format_monomial_map(self.M, self.conj)


def shift_condition_holds(G: IntegerMatrix, c) -> bool:
    """``b * f(b) = 1`` in phases: ``(I + G) c = 0 mod 1``."""
    n = G.rows
    A = IntegerMatrix.identity(n) + G
    return all((x % 1) == 0 for x in A.apply([Fraction(x) for x in c]))


_MONO = re.compile(r"(~?)z([12])(?:\^(-?\d+))?")


def parse_monomial_map(text: str) -> tuple[IntegerMatrix, bool]:
    """Parse ``"(z1, z2^-1*z1)"`` or ``"(~z1^-1, ~z2)"`` into ``(M, conj)``.

    ``~`` marks a conjugated variable; all variables must agree.
    """
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ParseError(f"bad monomial map {text!r}")
    comps = [c.strip() for c in body[1:-1].split(",")]
    if len(comps) != 2:
        raise ParseError(f"bad monomial map {text!r}")
    rows, flags = [], set()
    for comp in comps:
        row = [0, 0]
        factors = [f for f in re.split(r"[*\s]+", comp) if f]
        for f in factors:
            m = _MONO.fullmatch(f)
            if m is None:
                raise ParseError(f"bad monomial {f!r}")
            flags.add(bool(m[1]))
            row[int(m[2]) - 1] += int(m[3]) if m[3] else 1
        rows.append(row)
    if len(flags) != 1:
        raise ParseError(f"mixed conjugation in {text!r}")
    return _m(rows), flags.pop()


def format_monomial_map(M: IntegerMatrix, conj: bool) -> str:
    bar = "~" if conj else ""
    comps = []
    for i in range(2):
        parts = []
        for j in range(2):
            e = M[i, j]
            if e == 0:
                continue
            parts.append(f"{bar}z{j + 1}" + ("" if e == 1 else f"^{e}"))
        comps.append("*".join(parts) if parts else "1")
    return "(" + ", ".join(comps) + ")"


# Tabulated values of f^+ and f^-, keyed by region group and coefficient.
TABULATED_F = {
    ("H", "1"): ("(z1, z2)", "(~z1^-1, ~z2^-1)"),
    ("H", "-1"): ("(z1^-1, z2^-1)", "(~z1, ~z2)"),
    ("AB", "1"): ("(z1, z2^-1)", "(~z1^-1, ~z2)"),
    ("AB", "-1"): ("(z1^-1, z2)", "(~z1, ~z2^-1)"),
    ("CD", "1"): ("(z1, z2^-1)", "(~z1^-1, ~z2)"),
    ("CD", "-1"): ("(z1^-1, z2)", "(~z1, ~z2^-1)"),
    ("CD", "gamma"): ("(z2, z1)", "(~z2^-1, ~z1^-1)"),
    ("CD", "-gamma"): ("(z2^-1, z1^-1)", "(~z2, ~z1)"),
    ("E", "1"): ("(z1, z2^-1*z1)", "(~z1^-1, ~z2*~z1^-1)"),
    ("E", "-1"): ("(z1^-1, z2*z1^-1)", "(~z1^-1, ~z2^-1*~z1)"),
}


class FlaggedCell(NamedTuple):
    region: str
    a_label: str
    sign: str
    tabulated: str
    used: str
    reason: str


FLAGGED = (
    FlaggedCell(
        "E", "-1", "-", "(~z1^-1, ~z2^-1*~z1)", "(~z1, ~z2^-1*~z1)",
        "tabulated map does not square to the identity; the computed value is the "
        "conjugate-inverse of f^+ like every other row",
    ),
    FlaggedCell(
        "D", "1", "+", "(z1, z2^-1)", "(z1, z2^-1*z1)",
        "on the curve gamma = exp(i pi/3), conj(gamma) = 1 - gamma, so alpha(-,1) "
        "acts on pi_1 as in region E",
    ),
    FlaggedCell("D", "1", "-", "(~z1^-1, ~z2)", "(~z1^-1, ~z2*~z1^-1)", "as above"),
    FlaggedCell("D", "-1", "+", "(z1^-1, z2)", "(z1^-1, z2*z1^-1)", "as above"),
    FlaggedCell("D", "-1", "-", "(~z1, ~z2^-1)", "(~z1, ~z2^-1*~z1)", "as above"),
)


def _f_entry(region: str, a_label: str, sign: str) -> tuple[IntegerMatrix, bool, str]:
    for cell in FLAGGED:
        if (cell.region, cell.a_label, cell.sign) == (region, a_label, sign):
            M, conj = parse_monomial_map(cell.used)
            return M, conj, "computed"
    grp = "H" if region == "H" else _group(region)
    entry = TABULATED_F.get((grp, a_label))
    if entry is None or region == "C" and a_label in ("1", "-1"):
        raise DomainError(f"no f^{sign} value is recorded for alpha(.,{a_label}) in region {region}")
    M, conj = parse_monomial_map(entry[0 if sign == "+" else 1])
    return M, conj, "tabulated"


def f_matrix(inv: EllipticInvolution, sign: str, allow_derived: bool = False) -> tuple[IntegerMatrix, bool]:
    """Matrix and conjugation flag of ``f^sign`` for a curve involution.

    With ``allow_derived`` an untabulated row is filled in from its
    ``pi_1`` action: ``f^+`` is the transpose and ``f^-`` its conjugate
    inverse, the pattern every tabulated row follows.
    """
    if sign not in ("+", "-"):
        raise ParseError(f"sign must be + or -, got {sign!r}")
    region = "H" if inv.epsilon == "+" else inv.region.region
    try:
        M, conj, _ = _f_entry(region, inv.a_label, sign)
    except DomainError:
        if not allow_derived:
            raise
        P = pi1_matrix(inv).T
        return (P, False) if sign == "+" else (-P, True)
    return M, conj


def is_tabulated(inv: EllipticInvolution) -> bool:
    region = "H" if inv.epsilon == "+" else inv.region.region
    try:
        _f_entry(region, inv.a_label, "+")
    except DomainError:
        return False
    return True


def f_map(inv: EllipticInvolution, sign: str, shift=None) -> TorusMap2:
    """The map ``f^{sign}`` with shift ``b = exp(2 pi i c)``.

    Args:
        inv: Curve involution.
        sign: Higgs-field sign.
        shift: Pair of phases, ``"generic"`` for a free shift, or None for trivial.

    Raises:
        DomainError: the row is not tabulated, or the shift violates
            ``(b1^-1, b2^-1) = f(b1, b2)``.
    """
    M, conj = f_matrix(inv, sign)
    if shift is None:
        c = (Fraction(0), Fraction(0))
    elif shift == "generic":
        return TorusMap2(M, conj, None)
    else:
        c = tuple(Fraction(x) % 1 for x in shift)
        if len(c) != 2:
            raise ParseError("shift must have two components")
    t = TorusMap2(M, conj, c)
    if not shift_condition_holds(t.phase_matrix(), c):
        raise DomainError(
            f"shift {tuple(str(x) for x in c)} violates (b1^-1, b2^-1) = f(b1, b2) for {inv.name}, sign {sign}"
        )
    return t


def f_table_rows() -> list[tuple[str, str, str, TorusMap2, str]]:
    """Every tabulated ``f`` value as ``(region, a_label, sign, map, provenance)``.

    Regions are expanded individually, flagged cells carry their computed
    value, and rows with no involution behind them (alpha(-,+-1) in region C)
    are omitted.
    """
    out = []
    for region in ("H", "A", "B", "C", "D", "E"):
        labels = ("1", "-1") if region in "HABE" else (("gamma", "-gamma") if region == "C" else ("1", "-1", "gamma", "-gamma"))
        for a in labels:
            for sign in ("+", "-"):
                M, conj, prov = _f_entry(region, a, sign)
                out.append((region, a, sign, TorusMap2(M, conj), prov))
    return out


def fixed_components_real_torus(P: IntegerMatrix, y=None) -> int:
    """Components of the fixed set of ``x -> P x + y`` on ``R^2 / Z^2`` (0 if empty)."""
    n = P.rows
    y = [Fraction(0)] * n if y is None else [Fraction(v) for v in y]
    A = P - IntegerMatrix.identity(n)
    if not solve_mod_lattice(A, [-v for v in y]).solvable:
        return 0
    count = 1
    for t in cokernel_invariants(A).torsion_orders:
        count *= t
    return count


# representative translations realising the empty-fixed-set rows
TRANSLATION_REPRESENTATIVE = {
    "1": (Fraction(1, 2), Fraction(0)),
    "-1": (Fraction(0), Fraction(1, 2)),
}


def topological_type_check(inv: EllipticInvolution) -> tuple[int, int]:
    """Number of real components computed from ``pi_1``, paired with the tabulated ``b``."""
    P = pi1_matrix(inv)
    y = None
    if inv.translated and inv.region.region in "AB":
        y = TRANSLATION_REPRESENTATIVE[inv.a_label]
    n = fixed_components_real_torus(P, y)
    return n, inv.topological_type[1]
