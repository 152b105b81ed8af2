"""Query construction shared by the moduli, report and acceptance tests."""

from __future__ import annotations

from brane_atlas.elliptic import enumerate_involutions, parse_curve
from brane_atlas.errors import DomainError
from brane_atlas.involutions import resolve_sigma
from brane_atlas.moduli import InvolutionQuery, Twist
from brane_atlas.rootdatum import build_datum

RANK2_GROUPS = ["A1", "A1.ad", "GL1", "A2", "A2.ad", "B2", "B2.ad", "G2", "A1xA1", "GL2", "PGL2", "A1+Z1", "Z2"]
SIGMAS = ["compact", "split", "flip", "swap"]


def query(group, sigma, curve, sign, twist=None, center=1):
    d = build_datum(group)
    inv = parse_curve(curve)
    s = resolve_sigma(d, sigma, inv.epsilon, center)
    return InvolutionQuery(d, s, inv, sign, twist)


def curve_keys(epsilon=None):
    out = []
    for region in "HABCDE":
        eps = "+" if region == "H" else "-"
        if epsilon and eps != epsilon:
            continue
        for r in enumerate_involutions(region, eps):
            out.append(r.key)
    return out


def sweep_queries(groups=RANK2_GROUPS, curves=None, signs="+-"):
    """Every valid (group, sigma, curve, sign) combination, sigma deduplicated by matrix."""
    curves = curve_keys() if curves is None else curves
    for g in groups:
        d = build_datum(g)
        for curve in curves:
            inv = parse_curve(curve)
            seen = set()
            for sg in SIGMAS:
                for center in (1, -1) if d.central_rank else (1,):
                    try:
                        s = resolve_sigma(d, sg, inv.epsilon, center)
                    except DomainError:
                        continue
                    if s.S.flat() in seen:
                        continue
                    seen.add(s.S.flat())
                    for sign in signs:
                        yield InvolutionQuery(d, s, inv, sign, Twist.trivial(d.s))
