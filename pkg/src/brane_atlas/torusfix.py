"""Fixed loci of affine integer-matrix maps of tori.

Points of ``(C^*)^n`` are written ``z = exp(u + 2 pi i theta)`` with
``u`` real (moduli) and ``theta`` in ``R^n / Z^n`` (phases). A map
``z -> b * conj^eta(z)^M`` with ``b = exp(2 pi i c)`` acts as

* ``theta -> G theta + c`` with ``G = M`` (``eta = 0``) or ``-M`` (``eta = 1``),
* ``u -> M u``.

Fixed sets are then read off Smith normal forms of ``I - G`` and ``I - M``.
Maps need only have finite order; involutions are the main case.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod

from . import kernels
from .errors import DomainError
from .lattice import (
    IntegerMatrix,
    cokernel_invariants,
    lcm,
    obstruction_rows,
    rational_solve,
    smith_normal_form,
    solve_mod_lattice,
)

__all__ = [
    "AMBIENTS",
    "CENSUS_CAP",
    "FiberAction",
    "TorusInvolution",
    "FixedSetSummary",
    "fixed_subgroup",
    "torsion_point_census",
    "predicted_census",
    "closed_form_dimension",
]

AMBIENTS = ("split", "unitary", "real", "mixed")
CENSUS_CAP = 10**8
MAX_ORDER = 1000


def _phases(c, n) -> tuple[Fraction, ...] | None:
    if c is None:
        return None
    c = tuple(Fraction(x) % 1 for x in c)
    if len(c) != n:
        raise DomainError(f"shift has {len(c)} components, expected {n}")
    return c


@dataclass(frozen=True)
class FiberAction:
    """Action on the vector fiber ``C^s`` of the mixed ambient.

    ``x -> coefficient * L x + phi`` when ``conj`` is false and
    ``x -> coefficient * L conj(x) + phi`` otherwise. ``phi`` is a list of
    ``(re, im)`` pairs.
    """

    L: IntegerMatrix
    coefficient: int
    conj: bool
    phi: tuple[tuple[Fraction, Fraction], ...] | None = None

    def __post_init__(self) -> None:
        if self.coefficient not in (1, -1):
            raise DomainError("fiber coefficient must be +1 or -1")


@dataclass(frozen=True)
class TorusInvolution:
    """An affine finite-order map of a torus-like ambient.

    Attributes:
        M: Integer matrix. On ``mixed`` it is the action on the real torus block.
        conj: ``eta``: whether coordinates are conjugated.
        shift: Phases ``c`` of the translation, or None for a free shift.
        ambient: ``split`` ``(C^*)^n``, ``unitary`` ``U(1)^n``, ``real``
            ``R^n / Z^n`` or ``mixed`` real torus times a vector fiber.
        fiber: Fiber action, required for ``mixed``.
    """

    M: IntegerMatrix
    conj: bool = False
    shift: tuple[Fraction, ...] | None = None
    ambient: str = "split"
    fiber: FiberAction | None = None
    label: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.ambient not in AMBIENTS:
            raise DomainError(f"unknown ambient {self.ambient!r}")
        if not self.M.is_square():
            raise DomainError("torus map must be square")
        if self.ambient == "real" and self.conj:
            raise DomainError("a real torus has no conjugation")
        if self.ambient == "mixed" and self.fiber is None:
            raise DomainError("mixed ambient needs a fiber action")
        object.__setattr__(self, "shift", _phases(self.shift, self.n) if self.shift is not None else None)
        if self.M.order(MAX_ORDER) is None:
            raise DomainError("torus map has infinite order")

    @classmethod
    def make(cls, M, conj=False, shift=(), ambient="split", fiber=None, label=""):
        M = M if isinstance(M, IntegerMatrix) else IntegerMatrix.from_rows(M)
        if shift == ():
            shift = (0,) * M.rows
        return cls(M, conj, shift, ambient, fiber, label)

    @property
    def n(self) -> int:
        return self.M.rows

    @property
    def phase_matrix(self) -> IntegerMatrix:
        if self.ambient == "mixed" or self.ambient == "real":
            return self.M
        return -self.M if self.conj else self.M

    @property
    def unit(self) -> str:
        if self.ambient == "split":
            return "real" if self.conj else "complex"
        if self.ambient == "mixed":
            return "real" if self.fiber.conj else "complex"
        return "real"

    @property
    def ambient_dim(self) -> int:
        """Dimension of the ambient in ``unit``."""
        if self.ambient == "split":
            return 2 * self.n if self.conj else self.n
        if self.ambient == "mixed":
            s = self.fiber.L.rows
            return self.n + 2 * s if self.fiber.conj else self.n // 2 + s
        return self.n

    def order(self) -> int:
        """Order of the affine map (phases, moduli and fiber together)."""
        G = self.phase_matrix
        ident = IntegerMatrix.identity(self.n)
        c = self.shift or (Fraction(0),) * self.n
        acc_G, acc_c = G, list(c)
        acc_M = self.M
        fib = None
        if self.fiber is not None:
            fib = self.fiber.L.scale(self.fiber.coefficient)
            acc_F = fib
        for k in range(1, MAX_ORDER + 1):
            ok = acc_G == ident and all(x % 1 == 0 for x in acc_c)
            if ok and self.ambient == "split":
                ok = acc_M == ident
            if ok and fib is not None:
                # conjugation twice is the identity, so odd powers of a conj map never are
                ok = acc_F == IntegerMatrix.identity(fib.rows) and not (self.fiber.conj and k % 2)
            if ok and self.ambient == "split" and self.conj and k % 2:
                ok = False
            if ok:
                return k
            acc_c = [x + y for x, y in zip(G.apply(acc_c), c)]
            acc_G = G @ acc_G
            acc_M = self.M @ acc_M
            if fib is not None:
                acc_F = fib @ acc_F
        raise DomainError("torus map has order above the search bound")

    @property
    def is_involution(self) -> bool:
        return self.order() <= 2


@dataclass(frozen=True)
class FixedSetSummary:
    """Fixed set of a ``TorusInvolution``.

    Attributes:
        nonempty: None when the shift is free and solvability depends on it.
        dim: Dimension in ``unit``.
        unit: ``complex`` or ``real``.
        components: Connected components (generic count for a free shift; 0 if empty).
        torus_dim: Dimension of the compact torus part (phases only).
        torsion: Non-unit Smith invariants of the phase equation.
        constraint: Integrality conditions on a free shift, if any.
        formula_dim: Optional value of the closed-form dimension for comparison.
    """

    nonempty: bool | None
    dim: int
    unit: str
    components: int
    torus_dim: int
    torsion: tuple[int, ...]
    constraint: str | None = None
    formula_dim: Fraction | None = None


def _phase_equation(t: TorusInvolution) -> IntegerMatrix:
    return IntegerMatrix.identity(t.n) - t.phase_matrix


def _fiber_fixed(f: FiberAction) -> tuple[int, bool]:
    """Real dimension of the fixed fiber subspace and whether the affine equation is solvable."""
    s = f.L.rows
    A = f.L.scale(f.coefficient)
    ident = IntegerMatrix.identity(s)
    re_eq = ident - A
    im_eq = ident + A if f.conj else ident - A
    dim = (s - re_eq.rank()) + (s - im_eq.rank())
    if f.phi is None:
        return dim, True
    re = [p[0] for p in f.phi]
    im = [p[1] for p in f.phi]
    ok = rational_solve(re_eq.tolist(), re) is not None and rational_solve(im_eq.tolist(), im) is not None
    return dim, ok


def fixed_subgroup(t: TorusInvolution, formula_dim: Fraction | None = None) -> FixedSetSummary:
    """Dimension, component count and nonemptiness of the fixed set.

    For a free shift the generic answer is returned together with the
    integrality conditions the shift must meet.
    """
    n = t.n
    A = _phase_equation(t)
    inv = cokernel_invariants(A)
    torus_dim = inv.free_rank
    comps = prod(inv.torsion_orders)

    if t.shift is None:
        rows = obstruction_rows(A)
        if rows:
            conds = "; ".join(
                " + ".join(f"{u}*c{j + 1}" for j, u in enumerate(r) if u) + " in Z" for r in rows
            )
            nonempty, constraint = None, conds
        else:
            nonempty, constraint = True, None
    else:
        nonempty = solve_mod_lattice(A, t.shift).solvable
        constraint = None

    fiber_ok = True
    if t.ambient == "split":
        modulus_free = n - (IntegerMatrix.identity(n) - t.M).rank()
        dim = torus_dim + modulus_free if t.conj else torus_dim
    elif t.ambient == "mixed":
        fdim, fiber_ok = _fiber_fixed(t.fiber)
        if t.fiber.conj:
            dim = torus_dim + fdim
        else:
            dim = torus_dim // 2 + fdim // 2
    else:
        dim = torus_dim
    if nonempty is not None:
        nonempty = nonempty and fiber_ok
    return FixedSetSummary(
        nonempty=nonempty,
        dim=dim,
        unit=t.unit,
        components=comps if nonempty is not False else 0,
        torus_dim=torus_dim,
        torsion=inv.torsion_orders,
        constraint=constraint,
        formula_dim=formula_dim,
    )


def _census_target(t: TorusInvolution, N: int):
    if t.shift is None:
        raise DomainError("census needs an explicit shift")
    if N < 1:
        raise DomainError("census level must be positive")
    Q = lcm([N] + [x.denominator for x in t.shift])
    return Q, [int(x * Q) for x in t.shift]


def torsion_point_census(t: TorusInvolution, N: int) -> int:
    """Count fixed points among the ``N``-torsion points by enumeration.

    On the ``mixed`` ambient only the torus block is enumerated.

    Raises:
        DomainError: ``N^n`` exceeds ``CENSUS_CAP`` or the shift is free.
    """
    Q, rhs = _census_target(t, N)
    cap = int(os.environ.get("BRANE_ATLAS_CENSUS_CAP", CENSUS_CAP))
    if N**t.n > cap:
        raise DomainError(f"census of {N}^{t.n} points exceeds the cap {cap}")
    A = _phase_equation(t)
    return int(kernels.census_count(A.tolist(), rhs, N, Q))


def predicted_census(t: TorusInvolution, N: int) -> int:
    """The census value implied by the Smith form of the phase equation."""
    _census_target(t, N)
    U, D, _ = smith_normal_form(_phase_equation(t))
    uc = U.apply(t.shift)
    total = 1
    for i in range(t.n):
        d = D[i, i]
        x = N * uc[i]
        if x.denominator != 1:
            return 0
        x = int(x)
        if d == 0:
            if x % N:
                return 0
            total *= N
        else:
            g = gcd(d, N)
            if x % g:
                return 0
            total *= g
    return total


def closed_form_dimension(ord_gamma: int, ambient_dim: int) -> Fraction:
    """``ambient_dim / (2 * ord_gamma)``; a non-integral value is returned as a fraction."""
    if ord_gamma < 1:
        raise DomainError("order must be positive")
    return Fraction(ambient_dim, 2 * ord_gamma)
