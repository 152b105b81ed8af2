"""Weyl group enumeration and twisted-conjugacy combinatorics.

Elements are indexed in a fixed order (breadth-first layer, then
lexicographic matrix order) so reports are reproducible. The group law is
carried by the permutation action on coroots; a full multiplication table
is built for groups up to ``TABLE_LIMIT`` elements.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels, _pykernels
from .errors import DomainError
from .lattice import IntegerMatrix
from .rootdatum import RootDatum

__all__ = [
    "DEFAULT_ORDER_CAP",
    "TABLE_LIMIT",
    "WeylGroup",
    "TwistedClass",
    "Upsilon",
    "generate",
    "twisted_classes",
    "upsilon",
    "shifted_h1",
    "normalizer_fixed_torus",
]

DEFAULT_ORDER_CAP = 10**7
TABLE_LIMIT = 6000


def order_cap() -> int:
    raw = os.environ.get("BRANE_ATLAS_ORDER_CAP")
    if raw is None:
        return DEFAULT_ORDER_CAP
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"BRANE_ATLAS_ORDER_CAP must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class TwistedClass:
    """An orbit of the twisted adjoint action ``w -> v w sigma(v)^-1``.

    Attributes:
        id: Position in the sorted list of classes.
        representative: Smallest element index in the orbit.
        members: All element indices in the orbit, ascending.
        gamma: Index of ``rep * sigma(rep)``.
        gamma_class: Ordinary conjugacy class id of ``gamma``.
        cocycles: Members ``w`` with ``w * sigma(w)`` equal to a fixed
            element, filled in only by ``shifted_h1``.
    """

    id: int
    representative: int
    members: tuple[int, ...]
    gamma: int
    gamma_class: int
    cocycles: tuple[int, ...] | None = None

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class Upsilon:
    """The set of ordinary classes of ``w sigma(w)`` and the map ``delta`` onto it."""

    classes: tuple[int, ...]
    delta: dict[int, int]


class WeylGroup:
    """Finite Weyl group acting on the cocharacter lattice.

    Attributes:
        datum: The root datum.
        matrices: Element matrices in canonical order; index 0 is the identity.
        perms: Matching permutations of ``datum.coroots``.
        words: Words in the simple reflections (``w = s_{i1} s_{i2} ...``).
        generators: Indices of the simple reflections.
    """

    def __init__(self, datum: RootDatum, cap: int | None = None):
        self.datum = datum
        cap = order_cap() if cap is None else cap
        coroots = datum.coroots
        pos = {c: k for k, c in enumerate(coroots)}
        refl = [datum.reflection(i) for i in range(datum.rank)]
        gen_perms = [tuple(pos[r.apply(c)] for c in coroots) for r in refl]
        self._key_cols = tuple(pos[c] for c in datum.simple_coroots)

        ident_perm = tuple(range(len(coroots)))
        ident = IntegerMatrix.identity(datum.s)
        seen = {self._key(ident_perm)}
        layer = [(ident.flat(), ident, ident_perm, ())]
        matrices, perms, words = [], [], []
        while layer:
            layer.sort(key=lambda item: item[0])
            nxt = []
            for _, M, p, word in layer:
                matrices.append(M)
                perms.append(p)
                words.append(word)
                if len(matrices) > cap:
                    raise DomainError(
                        f"Weyl group of {datum.label} exceeds the order cap {cap}; "
                        "raise BRANE_ATLAS_ORDER_CAP or work with the permutation action"
                    )
                for i, g in enumerate(gen_perms):
                    q = tuple(g[x] for x in p)
                    k = self._key(q)
                    if k not in seen:
                        seen.add(k)
                        R = refl[i] @ M
                        nxt.append((R.flat(), R, q, (i,) + word))
            layer = nxt
        self.matrices: list[IntegerMatrix] = matrices
        self.perms: list[tuple[int, ...]] = perms
        self.words: list[tuple[int, ...]] = words
        self._index = {self._key(p): k for k, p in enumerate(perms)}
        self._by_matrix = {M.flat(): k for k, M in enumerate(matrices)}
        self.generators = tuple(
            self._index[self._key(g)] for g in gen_perms
        )

    def _key(self, perm) -> tuple[int, ...]:
        return tuple(perm[c] for c in self._key_cols)

    @property
    def order(self) -> int:
        return len(self.matrices)

    def __len__(self) -> int:
        return self.order

    def index_of_matrix(self, M: IntegerMatrix) -> int | None:
        return self._by_matrix.get(M.flat())

    def word(self, w: int) -> str:
        if not self.words[w]:
            return "e"
        return "*".join(f"s{i + 1}" for i in self.words[w])

    def multiply(self, a: int, b: int) -> int:
        if self.order <= TABLE_LIMIT:
            return self.table[a][b]
        pa, pb = self.perms[a], self.perms[b]
        return self._index[tuple(pa[pb[c]] for c in self._key_cols)]

    @cached_property
    def table(self) -> list[list[int]]:
        """Multiplication table ``table[a][b] = index(a * b)``."""
        if self.order > TABLE_LIMIT:
            raise DomainError(f"multiplication table limited to {TABLE_LIMIT} elements")
        n_roots = max(len(self.datum.coroots), 1)
        if not self._key_cols:
            return [[0]]
        encoded = []
        for k, p in enumerate(self.perms):
            key = 0
            for c in self._key_cols:
                key = key * n_roots + p[c]
            encoded.append((key, k))
        encoded.sort()
        keys = [k for k, _ in encoded]
        order = [k for _, k in encoded]
        impl = kernels if keys[-1] < 2**63 else _pykernels
        t = impl.mul_table(self.perms, self._key_cols, keys, order, n_roots)
        return t.tolist() if hasattr(t, "tolist") else t

    @cached_property
    def _kernel_table(self):
        # the compiled kernels take a contiguous int array; converting once saves a copy per call
        if kernels.BACKEND == "compiled":
            return np.ascontiguousarray(self.table, dtype=np.intc)
        return self.table

    @cached_property
    def inverse(self) -> list[int]:
        if self.order <= TABLE_LIMIT:
            return [row.index(0) for row in self.table]
        out = []
        for p in self.perms:
            inv = [0] * len(p)
            for x, y in enumerate(p):
                inv[y] = x
            out.append(self._index[self._key(inv)])
        return out

    def element_order(self, w: int) -> int:
        k, x = 1, w
        while x != 0:
            x = self.multiply(x, w)
            k += 1
        return k

    def automorphism(self, S: IntegerMatrix) -> list[int]:
        """The permutation ``w -> S w S^-1`` of element indices.

        Raises:
            DomainError: if ``S`` does not normalize the group.
        """
        if S.shape != (self.datum.s, self.datum.s) or not S.is_unimodular():
            raise DomainError("lattice map is not an automorphism of the cocharacter lattice")
        Sinv = S.inverse()
        out = []
        for M in self.matrices:
            k = self.index_of_matrix(S @ M @ Sinv)
            if k is None:
                raise DomainError("lattice involution does not normalize the Weyl group")
            out.append(k)
        return out

    @cached_property
    def identity_automorphism(self) -> list[int]:
        return list(range(self.order))

    def twist(self, v: int, w: int, sig) -> int:
        """``ad_sigma(v, w) = v * w * sigma(v)^-1``."""
        return self.multiply(self.multiply(v, w), self.inverse[sig[v]])

    def twisted_labels(self, sig) -> list[int]:
        if self.order <= TABLE_LIMIT:
            return list(kernels.twisted_class_labels(self._kernel_table, self.inverse, sig))
        labels = [-1] * self.order
        for w in range(self.order):
            if labels[w] < 0:
                for v in range(self.order):
                    x = self.twist(v, w, sig)
                    if labels[x] < 0:
                        labels[x] = w
        return labels

    @cached_property
    def conjugacy_labels(self) -> list[int]:
        return self.twisted_labels(self.identity_automorphism)

    @cached_property
    def conjugacy_class_ids(self) -> dict[int, int]:
        """Map from class representative to ordinary class id."""
        reps = sorted(set(self.conjugacy_labels))
        return {r: k for k, r in enumerate(reps)}

    def conjugacy_class_of(self, w: int) -> int:
        return self.conjugacy_class_ids[self.conjugacy_labels[w]]


def generate(d: RootDatum, cap: int | None = None) -> WeylGroup:
    """Enumerate the Weyl group by closure over the simple reflections.

    Raises:
        DomainError: if the order exceeds the cap (``BRANE_ATLAS_ORDER_CAP``,
            default ``10**7``).
    """
    return WeylGroup(d, cap)


def _check_sig(W: WeylGroup, sig) -> list[int]:
    sig = list(sig)
    if sorted(sig) != list(range(W.order)):
        raise DomainError("sigma is not a permutation of the Weyl group")
    return sig


def twisted_classes(W: WeylGroup, sig) -> list[TwistedClass]:
    """Partition ``W`` into orbits of ``w -> v w sigma(v)^-1``.

    ``sig`` is the automorphism as a permutation of element indices (see
    ``WeylGroup.automorphism``). Classes are ordered by representative.
    """
    sig = _check_sig(W, sig)
    labels = W.twisted_labels(sig)
    groups: dict[int, list[int]] = {}
    for w, lab in enumerate(labels):
        groups.setdefault(lab, []).append(w)
    out = []
    for k, rep in enumerate(sorted(groups)):
        g = W.multiply(rep, sig[rep])
        out.append(TwistedClass(k, rep, tuple(groups[rep]), g, W.conjugacy_class_of(g)))
    return out


def upsilon(W: WeylGroup, sig, classes: list[TwistedClass] | None = None) -> Upsilon:
    """Ordinary classes hit by ``w sigma(w)`` and the induced map from twisted classes."""
    if classes is None:
        classes = twisted_classes(W, sig)
    delta = {c.id: c.gamma_class for c in classes}
    return Upsilon(tuple(sorted(set(delta.values()))), delta)


def shifted_h1(W: WeylGroup, sig, gamma: int, classes: list[TwistedClass] | None = None) -> list[TwistedClass]:
    """Twisted classes containing a cocycle ``w`` with ``w sigma(w) = gamma``.

    Each returned class carries the cocycles in it; two cocycles lie in the
    same class exactly when they differ by a coboundary. ``gamma = 0``
    (the identity) gives ``H^1(sigma, W)``.
    """
    sig = _check_sig(W, sig)
    if classes is None:
        classes = twisted_classes(W, sig)
    out = []
    for c in classes:
        cyc = tuple(w for w in c.members if W.multiply(w, sig[w]) == gamma)
        if cyc:
            out.append(TwistedClass(c.id, c.representative, c.members, c.gamma, c.gamma_class, cyc))
    return out


def normalizer_fixed_torus(W: WeylGroup, sig, w: int) -> tuple[int, ...]:
    """The stabilizer of ``w`` under the twisted adjoint action."""
    sig = _check_sig(W, sig)
    if W.order <= TABLE_LIMIT:
        return tuple(kernels.stabilizer(W._kernel_table, W.inverse, sig, w))
    return tuple(v for v in range(W.order) if W.twist(v, w, sig) == w)
