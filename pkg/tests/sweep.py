"""The rank <= 2 fixed-locus sweep shared by acceptance criteria 3, 4 and 5."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from brane_atlas.elliptic import TorusMap2, parse_curve, shift_condition_holds, f_table_rows
from brane_atlas.errors import DomainError
from brane_atlas.involutions import resolve_sigma
from brane_atlas.lattice import IntegerMatrix
from brane_atlas.moduli import InvolutionQuery, Twist, build_twisted_involution
from brane_atlas.rootdatum import build_datum
from brane_atlas.torusfix import TorusInvolution

GROUPS = ["A1", "A1.ad", "A2", "B2", "G2", "A1xA1", "GL1", "GL2", "A1+Z1"]
SIGMAS = ["compact", "split", "flip", "swap"]
LEVELS = (2, 3, 4, 6)


@dataclass
class Case:
    label: str
    t: TorusInvolution
    ord_gamma: int
    shifted: bool


def f_table_curves():
    """(region, a, sign, curve key) for every used tabulated f row."""
    out = []
    for region, a, sign, _, _ in f_table_rows():
        key = f"{region}:{a}" + ("/t" if region in "CDE" else "")
        out.append((region, a, sign, key))
    return out


def _phase_shifts(d, q_f, S, limit=2):
    """Nonzero central admissible twists with entries in {0, 1/2}, at most ``limit``."""
    if not d.central_rank:
        return []
    out = []
    for bits in itertools.product((0, Fraction(1, 2)), repeat=2 * d.s):
        if not any(bits):
            continue
        tw = Twist(tuple((bits[2 * k], bits[2 * k + 1]) for k in range(d.s)), None)
        out.append(tw)
    return out


def bare_cases():
    """Each tabulated f map on (C^*)^2 with the trivial and every admissible quarter-shift."""
    cases = []
    for region, a, sign, t2, prov in f_table_rows():
        G = t2.phase_matrix()
        for c in itertools.product([Fraction(k, 4) for k in range(4)], repeat=2):
            if not shift_condition_holds(G, c):
                continue
            t = TorusInvolution.make(t2.M, t2.conj, c, label=f"{region}:{a} f{sign} c={c}")
            cases.append(Case(t.label, t, 1, any(c)))
    return cases


def weyl_cases(max_shifts=2):
    cases = []
    for g in GROUPS:
        d = build_datum(g)
        for region, a, sign, key in f_table_curves():
            inv = parse_curve(key)
            seen = set()
            for sg in SIGMAS:
                try:
                    s = resolve_sigma(d, sg, inv.epsilon)
                except DomainError:
                    continue
                if s.S.flat() in seen:
                    continue
                seen.add(s.S.flat())
                q = InvolutionQuery(d, s, inv, sign)
                twists = [Twist.trivial(d.s)]
                for tw in _phase_shifts(d, q.f, s.S):
                    try:
                        InvolutionQuery(d, s, inv, sign, tw)
                    except DomainError:
                        continue
                    twists.append(tw)
                    if len(twists) > max_shifts:
                        break
                for tw in twists:
                    qq = InvolutionQuery(d, s, inv, sign, tw)
                    W = qq.weyl
                    for w in range(W.order):
                        t = build_twisted_involution(qq, w, "representation")
                        gamma = W.multiply(w, qq.sig[w])
                        cases.append(
                            Case(f"{g} {s.label} {key} {sign} tw={tw} w={W.word(w)}", t, W.element_order(gamma), not tw.is_trivial)
                        )
    return cases
