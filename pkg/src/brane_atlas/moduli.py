"""Fixed loci of involutions on the moduli of Higgs bundles and representations.

For a root datum with lattice involution ``S`` and a curve involution with
its torus map ``f``, the involution on the abelian moduli factors through
the twisted classes ``W /_sigma W``. For each class representative ``w``
the relevant torus map has linear part ``kron(L, F)`` with ``L = w S``:
block ``i`` holds the two coordinates attached to the ``i``-th basis vector
of the cocharacter lattice, ``L`` mixes blocks and ``F`` acts inside them.

Two sides are supported:

* ``representation``: ``((C^*)^2)^s`` with ``F = f^{sign}``.
* ``higgs``: ``X^s x C^s`` with ``X = R^2 / Z^2`` in lattice coordinates.
  The torus block uses the action of ``alpha_(+,a)`` on ``pi_1`` (or of
  ``alpha_(-,-a)`` when anti-holomorphic); the fiber carries ``+-L``
  (holomorphic) or ``-+L conj`` (anti-holomorphic).

Twists are given as the phases ``c`` of ``chi``. On the Higgs side the
translation point is ``y = J^-1 c`` blockwise, with ``J = [[0, 1], [-1, 0]]``;
``J`` conjugates the torus-block matrix to the character-side one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .elliptic import EllipticInvolution, f_matrix, is_tabulated, pi1_matrix
from .errors import DomainError
from .involutions import LatticeInvolution, induced_weyl_automorphism
from .lattice import IntegerMatrix, rational_solve, smith_normal_form, solve_mod_lattice
from .rootdatum import CentralElement2, RootDatum, center_two_torsion, omega_z
from .torusfix import FiberAction, TorusInvolution, fixed_subgroup, closed_form_dimension
from .weyl import WeylGroup, generate, normalizer_fixed_torus, twisted_classes

__all__ = [
    "SIDES",
    "BRANE_LABELS",
    "Twist",
    "InvolutionQuery",
    "FixedLocusComponent",
    "PseudoRealSlice",
    "ModuliReport",
    "brane_label",
    "build_twisted_involution",
    "fixed_locus_decomposition",
    "pseudo_real_moduli",
    "sigma_fixed_two_torsion",
]

SIDES = ("higgs", "representation")
J = IntegerMatrix.from_rows([[0, 1], [-1, 0]])
J_INV = IntegerMatrix.from_rows([[0, -1], [1, 0]])

BRANE_LABELS = {
    ("+", "+", "+"): "(B,B,B)",
    ("+", "+", "-"): "(B,A,A)",
    ("-", "-", "-"): "(A,B,A)",
    ("-", "-", "+"): "(A,A,B)",
}


def brane_label(curve_eps: str, group_eps: str, sign: str) -> str:
    """Hyper-Kaehler type of the fixed locus.

    Raises:
        DomainError: the curve and group signs differ.
    """
    key = (curve_eps, group_eps, sign)
    if key not in BRANE_LABELS:
        raise DomainError(f"curve and group involutions must have the same sign, got {curve_eps}, {group_eps}")
    return BRANE_LABELS[key]


@dataclass(frozen=True)
class Twist:
    """Translation data of a twisted involution.

    Attributes:
        phases: Per lattice coordinate ``i`` the pair ``(c_i1, c_i2)`` of
            phases (``b_ij = exp(2 pi i c_ij)`` on the representation side,
            the point ``y_i`` on the Higgs side), or None for a free twist.
        phi: Per coordinate ``(re, im)`` of the Higgs-field shift, or None.
    """

    phases: tuple[tuple[Fraction, Fraction], ...] | None
    phi: tuple[tuple[Fraction, Fraction], ...] | None = None

    @classmethod
    def trivial(cls, s: int) -> Twist:
        zero = (Fraction(0), Fraction(0))
        return cls((zero,) * s, None)

    @classmethod
    def generic(cls) -> Twist:
        return cls(None, None)

    @property
    def is_trivial(self) -> bool:
        return (
            self.phases is not None
            and all(x % 1 == 0 for p in self.phases for x in p)
            and (self.phi is None or all(x == 0 for p in self.phi for x in p))
        )

    def flat(self) -> tuple[Fraction, ...] | None:
        if self.phases is None:
            return None
        return tuple(x for p in self.phases for x in p)

    def __str__(self) -> str:
        if self.phases is None:
            return "generic"
        if self.is_trivial:
            return "trivial"
        blocks = []
        for k, p in enumerate(self.phases):
            part = f"{p[0]},{p[1]}"
            if self.phi is not None:
                part += f",{self.phi[k][0]},{self.phi[k][1]}"
            blocks.append(part)
        return ";".join(blocks)


@dataclass
class InvolutionQuery:
    """Data of ``I(alpha, sigma, sign, F)`` or ``J(alpha, sigma, sign, chi)``."""

    datum: RootDatum
    sigma: LatticeInvolution
    curve: EllipticInvolution
    sign: str
    twist: Twist | None = None
    echo: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.sign not in ("+", "-"):
            raise DomainError(f"sign must be + or -, got {self.sign!r}")
        if self.sigma.epsilon != self.curve.epsilon:
            raise DomainError(
                f"group involution has epsilon {self.sigma.epsilon} but curve involution has {self.curve.epsilon}"
            )
        if self.sigma.S.rows != self.datum.s:
            raise DomainError("lattice involution does not match the datum rank")
        if self.twist is None:
            self.twist = Twist.trivial(self.datum.s)
        _validate_twist(self)

    @property
    def epsilon(self) -> str:
        return self.curve.epsilon

    @cached_property
    def weyl(self) -> WeylGroup:
        return generate(self.datum)

    @cached_property
    def sig(self) -> list[int]:
        return induced_weyl_automorphism(self.sigma, self.weyl)

    @cached_property
    def f(self) -> tuple[IntegerMatrix, bool]:
        return f_matrix(self.curve, self.sign, allow_derived=True)

    @cached_property
    def x_matrix(self) -> IntegerMatrix:
        """Action on ``X = R^2 / Z^2`` inducing the torus block on the Higgs side."""
        P = pi1_matrix(self.curve)
        return P if self.epsilon == "+" else -P

    @property
    def fiber_coefficient(self) -> int:
        c = 1 if self.sign == "+" else -1
        return c if self.epsilon == "+" else -c


def _validate_twist(q: InvolutionQuery) -> None:
    tw = q.twist
    s = q.datum.s
    Z = q.datum.central_matrix()
    if tw.phases is not None:
        if len(tw.phases) != s:
            raise DomainError(f"twist has {len(tw.phases)} blocks, expected {s}")
        for k in range(2):
            col = [p[k] for p in tw.phases]
            central = (
                solve_mod_lattice(Z, col).solvable if Z is not None else all(x % 1 == 0 for x in col)
            )
            if not central:
                raise DomainError(f"twist column {k + 1} is not central; only central coordinates may be twisted")
        F, conj = q.f
        Fp = -F if conj else F
        G = q.sigma.S.kron(Fp)
        c = tw.flat()
        if any(x % 1 for x in (IntegerMatrix.identity(2 * s) + G).apply(c)):
            raise DomainError("twist violates the involution condition (b1^-1, b2^-1) = f(b1, b2)")
    if tw.phi is not None:
        if len(tw.phi) != s:
            raise DomainError(f"Higgs shift has {len(tw.phi)} entries, expected {s}")
        for part in range(2):
            vec = [p[part] for p in tw.phi]
            if Z is None:
                if any(vec):
                    raise DomainError("Higgs shift must be central")
            elif rational_solve(Z.tolist(), vec) is None:
                raise DomainError("Higgs shift must be central")
        c = q.fiber_coefficient
        A = q.sigma.S.scale(c)
        ident = IntegerMatrix.identity(s)
        re = (ident + A).apply([p[0] for p in tw.phi])
        im = ((ident - A) if q.epsilon == "-" else (ident + A)).apply([p[1] for p in tw.phi])
        if any(re) or any(im):
            raise DomainError("Higgs shift violates the involution condition F^-1 = (F^-1, -phi)")


def build_twisted_involution(q: InvolutionQuery, w: int, side: str = "representation") -> TorusInvolution:
    """The torus map whose fixed set is the piece of the fixed locus indexed by ``w``."""
    if side not in SIDES:
        raise DomainError(f"side must be one of {SIDES}")
    W = q.weyl
    Wm = W.matrices[w]
    L = Wm @ q.sigma.S
    c = q.twist.flat()
    shift = None if c is None else Wm.kron(IntegerMatrix.identity(2)).apply(c)
    if side == "representation":
        F, conj = q.f
        return TorusInvolution(L.kron(F), conj, shift, "split", label=f"w={W.word(w)}")
    if shift is not None:
        shift = IntegerMatrix.identity(q.datum.s).kron(J_INV).apply(shift)
    fiber = FiberAction(L, q.fiber_coefficient, q.epsilon == "-", q.twist.phi)
    return TorusInvolution(L.kron(q.x_matrix), False, shift, "mixed", fiber, label=f"w={W.word(w)}")


@dataclass(frozen=True)
class FixedLocusComponent:
    """The piece of the fixed locus indexed by one twisted class."""

    class_id: int
    omega: int
    word: str
    class_size: int
    gamma: int
    gamma_word: str
    gamma_class: int
    ord_gamma: int
    map_order: int
    dim: int
    unit: str
    formula_dim: Fraction
    formula_dim_matches: bool
    torus_dim: int
    pi0: int
    nonempty: bool | None
    constraint: str | None
    normalizer_order: int
    maximal: bool
    brane: str
    in_singular_locus: bool
    pi0_orbits: int | None = None


@dataclass(frozen=True)
class PseudoRealSlice:
    """Components lying over a central element ``z``."""

    z: str
    omega_z: int
    omega_z_word: str
    gamma_class: int
    class_ids: tuple[int, ...]
    diagnostics: str
    bijectivity: str = "asserted by the classification, not verified here"

    @property
    def empty(self) -> bool:
        return not self.class_ids


@dataclass
class ModuliReport:
    """Decomposition of a fixed locus over twisted classes."""

    query: dict[str, str]
    side: str
    weyl_order: int
    class_count: int
    components: list[FixedLocusComponent]
    h1_index: dict[int, tuple[int, ...]]
    pseudo_real_slices: dict[str, PseudoRealSlice] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)


def _pi0_orbits(q: InvolutionQuery, t: TorusInvolution, stab) -> int | None:
    """Orbits of the stabilizer on the components of the fixed set, or None if too large."""
    if t.shift is None:
        return None
    A = IntegerMatrix.identity(t.n) - t.phase_matrix
    sol = solve_mod_lattice(A, t.shift)
    if not sol.solvable:
        return 0
    U, D, V = smith_normal_form(A)
    diag = [D[i, i] for i in range(t.n)]
    count = 1
    for d in diag:
        count *= d if d else 1
    if count > 4096:
        return None
    kernel = [list(k) for k in sol.kernel_basis]
    K = IntegerMatrix.from_rows([[k[i] for k in kernel] for i in range(t.n)]) if kernel else None

    def same(x, y):
        diff = [a - b for a, b in zip(x, y)]
        if K is None:
            return all(v % 1 == 0 for v in diff)
        return solve_mod_lattice(K, diff).solvable

    reps = [list(sol.particular)]
    for i, d in enumerate(diag):
        if d > 1:
            col = V.column(i)
            reps = [
                [r[j] + Fraction(k, d) * col[j] for j in range(t.n)] for r in reps for k in range(d)
            ]
    ident2 = IntegerMatrix.identity(2)
    perms = []
    for v in stab:
        act = q.weyl.matrices[v].kron(ident2)
        img = []
        for r in reps:
            x = act.apply(r)
            img.append(next(j for j, y in enumerate(reps) if same(x, y)))
        perms.append(img)
    seen = [False] * len(reps)
    orbits = 0
    for start in range(len(reps)):
        if seen[start]:
            continue
        orbits += 1
        stack = [start]
        seen[start] = True
        while stack:
            x = stack.pop()
            for p in perms:
                y = p[x]
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
    return orbits


def fixed_locus_decomposition(q: InvolutionQuery, side: str = "higgs", orbits: bool = True) -> ModuliReport:
    """One component record per twisted class with a (possibly) nonempty fixed set."""
    if side not in SIDES:
        raise DomainError(f"side must be one of {SIDES}")
    W, sig = q.weyl, q.sig
    classes = twisted_classes(W, sig)
    label = brane_label(q.curve.epsilon, q.sigma.epsilon, q.sign)
    comps = []
    for c in classes:
        w = c.representative
        t = build_twisted_involution(q, w, side)
        ordg = W.element_order(c.gamma)
        pd = closed_form_dimension(ordg, t.ambient_dim)
        summ = fixed_subgroup(t, pd)
        if summ.nonempty is False:
            continue
        stab = normalizer_fixed_torus(W, sig, w)
        pi0_orb = _pi0_orbits(q, t, stab) if orbits and q.datum.rank <= 2 else None
        comps.append(
            FixedLocusComponent(
                class_id=c.id,
                omega=w,
                word=W.word(w),
                class_size=c.size,
                gamma=c.gamma,
                gamma_word=W.word(c.gamma),
                gamma_class=c.gamma_class,
                ord_gamma=ordg,
                map_order=t.order(),
                dim=summ.dim,
                unit=summ.unit,
                formula_dim=pd,
                formula_dim_matches=pd == summ.dim,
                torus_dim=summ.torus_dim,
                pi0=summ.components,
                nonempty=summ.nonempty,
                constraint=summ.constraint,
                normalizer_order=len(stab),
                maximal=ordg == 1,
                brane=label,
                in_singular_locus=ordg != 1,
                pi0_orbits=pi0_orb,
            )
        )
    h1: dict[int, list[int]] = {}
    for comp in comps:
        h1.setdefault(comp.gamma_class, []).append(comp.class_id)
    report = ModuliReport(
        query=dict(q.echo) or default_echo(q),
        side=side,
        weyl_order=W.order,
        class_count=len(classes),
        components=comps,
        h1_index={k: tuple(v) for k, v in sorted(h1.items())},
    )
    if not is_tabulated(q.curve):
        report.notes.append(f"f^{q.sign} for {q.curve.name} is not tabulated; derived from the pi_1 action")
    mismatched = [comp.class_id for comp in comps if not comp.formula_dim_matches]
    if mismatched:
        report.notes.append(
            "closed-form dimension differs from the Smith-form dimension for classes "
            + ",".join(str(k) for k in mismatched)
        )
    if q.epsilon == "-":
        for z in sigma_fixed_two_torsion(q):
            report.pseudo_real_slices[str(z)] = pseudo_real_moduli(q, z, report)
    return report


def default_echo(q: InvolutionQuery) -> dict[str, str]:
    return {
        "group": q.datum.label,
        "sigma": q.sigma.label or "perm",
        "epsilon": q.epsilon,
        "curve": q.curve.key,
        "sign": q.sign,
        "twist": str(q.twist),
    }


def sigma_fixed_two_torsion(q: InvolutionQuery) -> list[CentralElement2]:
    """Central 2-torsion elements fixed by the lattice involution."""
    S = q.sigma.S
    out = []
    for z in center_two_torsion(q.datum):
        if all((a - b) % 1 == 0 for a, b in zip(S.apply(z.v), z.v)):
            out.append(z)
    return out


def pseudo_real_moduli(q: InvolutionQuery, z: CentralElement2, report: ModuliReport | None = None) -> PseudoRealSlice:
    """Components whose ``w sigma(w)`` is conjugate to ``omega_z``.

    An empty slice is returned, with the failed condition in
    ``diagnostics``, when no twisted class satisfies it.

    Raises:
        DomainError: the query is holomorphic or ``z`` is not fixed by sigma.
    """
    if q.epsilon != "-":
        raise DomainError("pseudo-real slices need an anti-holomorphic query")
    S = q.sigma.S
    if any((a - b) % 1 for a, b in zip(S.apply(z.v), z.v)):
        raise DomainError(f"z = {z} is not fixed by sigma")
    W = q.weyl
    oz = omega_z(q.datum, z, W)
    target = W.conjugacy_class_of(oz.index)
    if report is None:
        report = fixed_locus_decomposition(q, "higgs")
    ids = tuple(c.class_id for c in report.components if c.gamma_class == target)
    if ids:
        diag = f"{len(ids)} twisted class(es) with w*sigma(w) conjugate to omega_z = {W.word(oz.index)}"
    else:
        hits = [w for w in range(W.order) if W.conjugacy_class_of(W.multiply(w, q.sig[w])) == target]
        diag = (
            f"no w with w*sigma(w) conjugate to omega_z = {W.word(oz.index)}"
            if not hits
            else f"cocycles exist ({len(hits)}) but their fixed sets are empty"
        )
    return PseudoRealSlice(str(z), oz.index, W.word(oz.index), target, ids, diag)
