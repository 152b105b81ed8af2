"""Lattice involutions of the cocharacter lattice induced by real forms.

A real form enters only through its action on the cocharacter lattice,
which is read off a diagram automorphism. The holomorphic and
anti-holomorphic partners share the matrix; the ``epsilon`` flag only
changes how downstream torus maps act on coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import DomainError, ParseError
from .lattice import IntegerMatrix, rational_inverse
from .rootdatum import RootDatum
from .weyl import WeylGroup

__all__ = [
    "LatticeInvolution",
    "from_diagram_automorphism",
    "induced_weyl_automorphism",
    "resolve_sigma",
    "cartan_partner",
]

SIGNS = ("+", "-")


@dataclass(frozen=True)
class LatticeInvolution:
    """An involutive automorphism ``S`` of the cocharacter lattice.

    Attributes:
        S: The matrix.
        epsilon: ``"+"`` (holomorphic) or ``"-"`` (anti-holomorphic).
        theta: Permutation of simple-root indices it induces.
        central_sign: ``+1`` or ``-1``, its action on the central sublattice.
        label: Name it was built from.
        painted: Painted Vogan-diagram nodes, kept as metadata only.
    """

    S: IntegerMatrix
    epsilon: str
    theta: tuple[int, ...]
    central_sign: int = 1
    label: str = ""
    painted: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.epsilon not in SIGNS:
            raise DomainError(f"epsilon must be + or -, got {self.epsilon!r}")
        if not (self.S @ self.S).is_identity():
            raise DomainError("lattice map does not square to the identity")

    @property
    def holomorphic(self) -> bool:
        return self.epsilon == "+"


def _check_theta(d: RootDatum, theta) -> tuple[int, ...]:
    theta = tuple(theta)
    r = d.rank
    if sorted(theta) != list(range(r)):
        raise DomainError(f"theta must permute the {r} simple roots")
    if any(theta[theta[i]] != i for i in range(r)):
        raise DomainError("theta does not square to the identity")
    C = d.cartan
    if any(C[theta[i]][theta[j]] != C[i][j] for i in range(r) for j in range(r)):
        raise DomainError("theta is not a diagram automorphism")
    return theta


def from_diagram_automorphism(
    d: RootDatum,
    theta,
    epsilon: str,
    central_sign: int = 1,
    label: str = "",
    painted=(),
) -> LatticeInvolution:
    """Lattice involution permuting simple coroots by ``theta``.

    The central sublattice is fixed pointwise (or negated when
    ``central_sign == -1``).

    Raises:
        DomainError: ``theta`` is not a diagram automorphism, or the induced
            map is not an integral involution normalizing the Weyl group.
    """
    theta = _check_theta(d, theta)
    if central_sign not in (1, -1):
        raise DomainError("central sign must be +1 or -1")
    basis = list(d.simple_coroots) + list(d.central_basis)
    image = [d.simple_coroots[theta[i]] for i in range(d.rank)]
    image += [tuple(central_sign * x for x in v) for v in d.central_basis]
    B = IntegerMatrix.from_rows([[v[i] for v in basis] for i in range(d.s)])
    Binv = rational_inverse(B)
    T = [[Fraction(v[i]) for v in image] for i in range(d.s)]
    S = [[sum(T[i][k] * Binv[k][j] for k in range(d.s)) for j in range(d.s)] for i in range(d.s)]
    if any(x.denominator != 1 for row in S for x in row):
        raise DomainError(
            f"diagram automorphism {theta} does not preserve the cocharacter lattice of {d.label}"
        )
    M = IntegerMatrix.from_rows([[int(x) for x in row] for row in S])
    if not (M @ M).is_identity():
        raise DomainError("induced lattice map is not an involution")
    # roots must go to roots: check via the dual action on covectors
    Minv = M.inverse()
    roots = set(d.roots)
    for a in d.roots:
        image_root = tuple(sum(a[k] * Minv[k, j] for k in range(d.s)) for j in range(d.s))
        if image_root not in roots:
            raise DomainError("induced lattice map does not preserve the root system")
    return LatticeInvolution(M, epsilon, theta, central_sign, label, tuple(painted))


def induced_weyl_automorphism(inv: LatticeInvolution, W: WeylGroup) -> list[int]:
    """The permutation ``w -> S w S^-1`` of Weyl element indices."""
    sig = W.automorphism(inv.S)
    if any(sig[sig[w]] != w for w in range(W.order)):
        raise DomainError("induced Weyl automorphism is not an involution")
    return sig


def cartan_partner(inv: LatticeInvolution) -> LatticeInvolution:
    """The partner of opposite ``epsilon``; its lattice matrix is the same."""
    return replace(inv, epsilon="-" if inv.epsilon == "+" else "+")


def _factor_flip(kind: str, n: int) -> list[tuple[int, int]] | None:
    if kind == "A" and n >= 2:
        return [(i, n - 1 - i) for i in range(n // 2)]
    if kind == "D" and n >= 4:
        return [(n - 2, n - 1)]
    if kind == "E" and n == 6:
        return [(0, 5), (2, 4)]
    return None


def _minus_w0(kind: str, n: int) -> list[tuple[int, int]]:
    if kind == "A" and n >= 2 or kind == "E" and n == 6:
        return _factor_flip(kind, n) or []
    if kind == "D" and n % 2 == 1:
        return [(n - 2, n - 1)]
    return []


def resolve_sigma(d: RootDatum, spec: str, epsilon: str, central_sign: int = 1) -> LatticeInvolution:
    """Build a lattice involution from a name.

    Names: ``compact`` / ``id`` (trivial diagram automorphism), ``split``
    (the diagram action of ``-w_0``), ``flip`` / ``quasi-split`` (the
    nontrivial diagram automorphism of each factor that has one), ``swap``
    (exchange the first two isomorphic factors), or ``perm:i,j,...`` (an
    explicit 1-based permutation of the simple roots). A suffix
    ``;painted=i,j`` records painted Vogan nodes without affecting the matrix.
    """
    text = spec.strip()
    painted: tuple[int, ...] = ()
    if ";" in text:
        text, _, extra = text.partition(";")
        key, _, val = extra.partition("=")
        if key.strip() != "painted":
            raise ParseError(f"unknown sigma option {extra!r}")
        try:
            painted = tuple(int(x) for x in val.split(",") if x.strip())
        except ValueError:
            raise ParseError(f"bad painted node list {val!r}") from None
    name = text.lower()
    theta = list(range(d.rank))

    def apply(pairs, offset_roots):
        for i, j in pairs:
            a, b = offset_roots[i], offset_roots[j]
            theta[a], theta[b] = b, a

    if name in ("compact", "id", "identity", "trivial"):
        pass
    elif name == "split":
        for f in d.factors:
            apply(_minus_w0(f.kind, f.rank), f.roots)
    elif name in ("flip", "quasi-split", "quasisplit", "outer"):
        any_flip = False
        for f in d.factors:
            pairs = _factor_flip(f.kind, f.rank)
            if pairs:
                apply(pairs, f.roots)
                any_flip = True
        if not any_flip:
            raise DomainError(f"{d.label} has no nontrivial diagram automorphism")
    elif name == "swap":
        pair = None
        for i, f in enumerate(d.factors):
            for g in d.factors[i + 1 :]:
                if (f.kind, f.rank, f.form) == (g.kind, g.rank, g.form):
                    pair = (f, g)
                    break
            if pair:
                break
        if pair is None:
            raise DomainError(f"{d.label} has no pair of isomorphic factors to swap")
        f, g = pair
        for a, b in zip(f.roots, g.roots):
            theta[a], theta[b] = b, a
    elif name.startswith("perm:"):
        try:
            theta = [int(x) - 1 for x in name[5:].split(",")]
        except ValueError:
            raise ParseError(f"bad permutation {spec!r}") from None
    else:
        raise ParseError(f"unknown real form {spec!r}")
    return from_diagram_automorphism(d, theta, epsilon, central_sign, spec.strip(), painted)
