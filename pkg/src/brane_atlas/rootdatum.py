"""Root data of reductive groups and the alcove-vertex Weyl element.

Coordinates: the cocharacter lattice is ``Z^s``; simple coroots are integer
vectors in it and simple roots integer covectors on it. The Cartan matrix
convention is ``C[i][j] = <alpha_i, alpha_j^vee>`` (rows indexed by roots),
with Bourbaki node numbering.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import TYPE_CHECKING, NamedTuple

from .errors import DomainError, ParseError
from .lattice import IntegerMatrix, rational_inverse, smith_normal_form, solve_mod_lattice

if TYPE_CHECKING:
    from .weyl import WeylGroup

__all__ = [
    "cartan_matrix",
    "RootDatum",
    "CentralElement2",
    "OmegaZ",
    "build_datum",
    "center_two_torsion",
    "omega_z",
]


def cartan_matrix(kind: str, n: int) -> list[list[int]]:
    """Cartan matrix of a simple type with ``C[i][j] = <alpha_i, alpha_j^vee>``."""
    minimum = {"A": 1, "B": 2, "C": 2, "D": 3, "G": 2, "F": 4, "E": 6}
    if kind not in minimum or n < minimum[kind]:
        raise ParseError(f"unsupported simple type {kind}{n}")
    if kind == "G" and n != 2 or kind == "F" and n != 4 or kind == "E" and n > 8:
        raise ParseError(f"unsupported simple type {kind}{n}")
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, cij=-1, cji=-1):
        c[i][j] = cij
        c[j][i] = cji

    if kind == "E":
        for i, j in [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)]:
            if i < n and j < n:
                link(i, j)
        return c
    if kind == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
        return c
    for i in range(n - 1):
        link(i, i + 1)
    if kind == "B":
        link(n - 2, n - 1, -2, -1)
    elif kind == "C":
        link(n - 2, n - 1, -1, -2)
    elif kind == "G":
        link(0, 1, -1, -3)
    elif kind == "F":
        link(1, 2, -2, -1)
    return c


class Factor(NamedTuple):
    """One simple factor: Cartan type, its simple-root indices and its isogeny form."""

    kind: str
    rank: int
    roots: tuple[int, ...]
    form: str


@dataclass(frozen=True)
class RootDatum:
    """Root datum on the cocharacter lattice ``Z^s``.

    Attributes:
        label: Type string the datum was built from.
        s: Rank of the cocharacter lattice.
        simple_coroots: Integer vectors, one per simple root.
        simple_roots: Integer covectors, paired with vectors by dot product.
        central_basis: A basis of the central sublattice (vectors killed by every root).
        factors: The simple factors with their simple-root indices.
    """

    label: str
    s: int
    simple_coroots: tuple[tuple[int, ...], ...]
    simple_roots: tuple[tuple[int, ...], ...]
    central_basis: tuple[tuple[int, ...], ...]
    factors: tuple[Factor, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.s <= 0:
            raise DomainError("rank 0 datum")
        for root in self.simple_roots:
            for lam in self.central_basis:
                if pairing(root, lam) != 0:
                    raise DomainError("central basis vector not killed by a root")
        for i in range(self.rank):
            if self.cartan[i][i] != 2:
                raise DomainError("simple root and coroot do not pair to 2")

    @property
    def rank(self) -> int:
        """Semisimple rank (number of simple roots)."""
        return len(self.simple_roots)

    @property
    def central_rank(self) -> int:
        return len(self.central_basis)

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(pairing(a, c) for c in self.simple_coroots) for a in self.simple_roots
        )

    def reflection(self, i: int) -> IntegerMatrix:
        """Matrix of ``s_i(lam) = lam - <alpha_i, lam> alpha_i^vee``."""
        a, c = self.simple_roots[i], self.simple_coroots[i]
        return IntegerMatrix.from_rows(
            [[int(r == k) - c[r] * a[k] for k in range(self.s)] for r in range(self.s)]
        )

    @cached_property
    def coroots(self) -> tuple[tuple[int, ...], ...]:
        """All coroots, closed under the simple reflections, sorted."""
        refl = [self.reflection(i) for i in range(self.rank)]
        found = set(self.simple_coroots)
        frontier = list(found)
        while frontier:
            nxt = []
            for v in frontier:
                for r in refl:
                    u = r.apply(v)
                    if u not in found:
                        found.add(u)
                        nxt.append(u)
            frontier = nxt
        return tuple(sorted(found))

    @cached_property
    def roots(self) -> tuple[tuple[int, ...], ...]:
        """All roots as covectors, closed under the dual simple reflections, sorted."""
        found = set(self.simple_roots)
        frontier = list(found)
        while frontier:
            nxt = []
            for a in frontier:
                for ai, ci in zip(self.simple_roots, self.simple_coroots):
                    k = pairing(a, ci)
                    b = tuple(x - k * y for x, y in zip(a, ai))
                    if b not in found:
                        found.add(b)
                        nxt.append(b)
            frontier = nxt
        return tuple(sorted(found))

    @cached_property
    def positive_roots_simple_coords(self) -> tuple[tuple[int, ...], ...]:
        """Positive roots written in the basis of simple roots."""
        r = self.rank
        cart = self.cartan
        start = [tuple(int(i == j) for j in range(r)) for i in range(r)]
        found = set(start)
        frontier = list(start)
        while frontier:
            nxt = []
            for b in frontier:
                for j in range(r):
                    k = sum(b[i] * cart[i][j] for i in range(r))
                    u = tuple(b[i] - (k if i == j else 0) for i in range(r))
                    if all(x >= 0 for x in u) and u not in found:
                        found.add(u)
                        nxt.append(u)
            frontier = nxt
        return tuple(sorted(found))

    def highest_root(self, factor: Factor) -> tuple[int, ...]:
        """Marks ``m_j`` of the highest root of one factor, indexed like ``factor.roots``."""
        best = max(
            (b for b in self.positive_roots_simple_coords if all(b[i] == 0 for i in range(self.rank) if i not in factor.roots)),
            key=sum,
        )
        return tuple(best[j] for j in factor.roots)

    def coroot_matrix(self) -> IntegerMatrix:
        """Simple coroots as columns (``s x rank``)."""
        return IntegerMatrix.from_rows(
            [[c[i] for c in self.simple_coroots] for i in range(self.s)]
        )

    def central_matrix(self) -> IntegerMatrix | None:
        if not self.central_basis:
            return None
        return IntegerMatrix.from_rows(
            [[c[i] for c in self.central_basis] for i in range(self.s)]
        )


def pairing(covector, vector) -> int:
    return sum(a * b for a, b in zip(covector, vector))


def _block(kind: str, n: int, form: str):
    c = cartan_matrix(kind, n)
    if form == "sc":
        coroots = [tuple(int(i == j) for i in range(n)) for j in range(n)]
        roots = [tuple(row) for row in c]
    else:
        coroots = [tuple(c[i][j] for i in range(n)) for j in range(n)]
        roots = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return coroots, roots, n


def _gl_block(n: int):
    coroots = [tuple(int(k == i) - int(k == i + 1) for k in range(n)) for i in range(n - 1)]
    return coroots, list(coroots), n


_TOKEN = re.compile(r"^(?:(?P<kind>[ABCDEFG])(?P<n>\d+)(?:\.(?P<form>sc|ad))?|GL(?P<gl>\d+)|SL(?P<sl>\d+)|PGL(?P<pgl>\d+)|[ZT](?P<z>\d+))$")


def build_datum(spec: str) -> RootDatum:
    """Build a root datum from a type string.

    Grammar: factors separated by ``x``, optionally followed by ``+Z<k>``
    for a central torus summand. A factor is ``<type><rank>`` with optional
    ``.sc`` (simply connected, default) or ``.ad`` (adjoint), ``GL<n>``,
    ``SL<n>``, ``PGL<n>`` or a torus ``Z<k>`` (also ``T<k>``).

    Raises:
        ParseError: unknown or malformed type string.
        DomainError: the result has rank 0.
    """
    text = spec.strip().replace(" ", "")
    if not text:
        raise ParseError("empty group type")
    parts = []
    for chunk in text.split("+"):
        parts.extend(chunk.split("x"))
    blocks = []
    factor_meta = []
    for tok in parts:
        m = _TOKEN.match(tok)
        if m is None:
            raise ParseError(f"unsupported group factor {tok!r}")
        if m["kind"]:
            blk = _block(m["kind"], int(m["n"]), m["form"] or "sc")
            factor_meta.append((m["kind"], int(m["n"]), m["form"] or "sc"))
        elif m["gl"]:
            n = int(m["gl"])
            if n < 1:
                raise DomainError("GL0 has rank 0")
            blk = _gl_block(n)
            factor_meta.append(("A", n - 1, "gl") if n > 1 else None)
        elif m["sl"] or m["pgl"]:
            n = int(m["sl"] or m["pgl"])
            if n < 2:
                raise ParseError(f"unsupported group factor {tok!r}")
            blk = _block("A", n - 1, "sc" if m["sl"] else "ad")
            factor_meta.append(("A", n - 1, "sc" if m["sl"] else "ad"))
        else:
            k = int(m["z"])
            if k < 1:
                raise DomainError("torus of rank 0")
            blk = ([], [], k)
            factor_meta.append(None)
        blocks.append(blk)

    s = sum(b[2] for b in blocks)
    coroots, roots, factors = [], [], []
    offset = 0
    for (cor, rts, dim), meta in zip(blocks, factor_meta):
        first = len(roots)
        for v in cor:
            coroots.append((0,) * offset + tuple(v) + (0,) * (s - offset - dim))
        for a in rts:
            roots.append((0,) * offset + tuple(a) + (0,) * (s - offset - dim))
        if meta is not None and meta[1] > 0:
            factors.append(Factor(meta[0], meta[1], tuple(range(first, len(roots))), meta[2]))
        offset += dim
    if s == 0:
        raise DomainError("rank 0 datum")
    return RootDatum(text, s, tuple(coroots), tuple(roots), _central_basis(roots, s), tuple(factors))


def _central_basis(roots, s) -> tuple[tuple[int, ...], ...]:
    if not roots:
        return tuple(tuple(int(i == j) for i in range(s)) for j in range(s))
    A = IntegerMatrix.from_rows(roots)
    _, D, V = smith_normal_form(A)
    r = sum(1 for i in range(min(D.shape)) if D[i, i])
    basis = []
    for j in range(r, s):
        col = list(V.column(j))
        if next(x for x in col if x) < 0:
            col = [-x for x in col]
        basis.append(tuple(col))
    return tuple(sorted(basis, reverse=True))


@dataclass(frozen=True)
class CentralElement2:
    """A central element of order dividing 2, as ``v`` in ``{0, 1/2}^s``."""

    v: tuple[Fraction, ...]
    group_label: str = ""

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for x in self.v)

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.v) + ")"


def center_two_torsion(d: RootDatum) -> list[CentralElement2]:
    """All ``v`` in ``{0, 1/2}^s`` with ``<alpha, 2v>`` even for every root."""
    out = []
    for bits in product((0, 1), repeat=d.s):
        if all(pairing(a, bits) % 2 == 0 for a in d.simple_roots):
            out.append(CentralElement2(tuple(Fraction(b, 2) for b in bits), d.label))
    return out


class OmegaZ(NamedTuple):
    index: int
    matrix: IntegerMatrix
    vertex: tuple[Fraction, ...]


def _vertices(d: RootDatum):
    """Per factor: list of (node, coordinates of fundamental-coweight / mark)."""
    if d.rank == 0:
        return [], ()
    cinv = rational_inverse(IntegerMatrix.from_rows(d.cartan))
    K = d.coroot_matrix()
    per_factor = []
    for f in d.factors:
        marks = d.highest_root(f)
        verts = []
        for j, m in zip(f.roots, marks):
            y = [cinv[i][j] / m for i in range(d.rank)]
            verts.append((j, K.apply(y)))
        per_factor.append(verts)
    return per_factor


def omega_z(d: RootDatum, z: CentralElement2, W: WeylGroup | None = None) -> OmegaZ:
    """The Weyl element carrying the fundamental alcove ``A`` to ``A - a_z``.

    ``a_z`` is an alcove vertex (plus a central vector) exponentiating to
    ``z``. When several vertices qualify, the one with the fewest nonzero
    factor vertices is used, then the lexicographically smallest node choice.

    Raises:
        DomainError: ``z`` is not central of order 2 or no vertex represents it.
    """
    from .weyl import generate

    if len(z.v) != d.s or any(2 * x % 1 != 0 for x in z.v):
        raise DomainError("z is not an element of order dividing 2 in this datum")
    if any(pairing(a, [2 * x for x in z.v]) % 2 for a in d.simple_roots):
        raise DomainError(f"z = {z} is not central")
    if W is None:
        W = generate(d)
    factors = _vertices(d)
    zero = tuple(Fraction(0) for _ in range(d.s))
    choices = [[None] + [j for j, _ in verts] for verts in factors]
    lookup = {j: x for verts in factors for j, x in verts}
    Z = d.central_matrix()

    def admissible(t):
        diff = [a - b for a, b in zip(z.v, t)]
        if Z is None:
            return all(x.denominator == 1 for x in diff)
        return solve_mod_lattice(Z, diff).solvable

    def rank_key(pick):
        return (sum(1 for p in pick if p is not None), tuple(-1 if p is None else p for p in pick))

    picks = sorted(product(*choices), key=rank_key) if factors else [()]
    for pick in picks:
        t = list(zero)
        for p in pick:
            if p is not None:
                t = [a + b for a, b in zip(t, lookup[p])]
        if admissible(t):
            break
    else:
        raise DomainError(f"z = {z} is not represented by an alcove vertex")

    bary = list(zero)
    for verts in factors:
        w = Fraction(1, len(verts) + 1)
        for _, x in verts:
            bary = [a + w * b for a, b in zip(bary, x)]
    target = tuple(a - b for a, b in zip(bary, t))
    for idx, M in enumerate(W.matrices):
        if M.apply(bary) == target:
            return OmegaZ(idx, M, tuple(t))
    raise DomainError(f"no Weyl element maps the alcove to its translate by {tuple(t)}")
