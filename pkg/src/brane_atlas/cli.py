"""Command-line front end.

Exit status: 0 on success, 1 when a mathematical precondition fails,
2 on malformed input.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .elliptic import (
    FLAGGED,
    LABELS,
    TABULATED_F,
    enumerate_involutions,
    f_matrix,
    fixed_components_real_torus,
    format_monomial_map,
    is_tabulated,
    parse_curve,
    parse_monomial_map,
    pi1_matrix,
    pi1_matrix_tabulated,
    f_table_rows,
    topological_type_check,
)
from .errors import DomainError, ParseError
from .involutions import induced_weyl_automorphism, resolve_sigma
from .lattice import IntegerMatrix
from .moduli import (
    SIDES,
    InvolutionQuery,
    Twist,
    fixed_locus_decomposition,
    pseudo_real_moduli,
    sigma_fixed_two_torsion,
)
from .report import emit_report
from .rootdatum import build_datum
from .weyl import generate, shifted_h1, twisted_classes, upsilon

__all__ = ["main", "run", "parse_query_file", "parse_twist", "QUERY_KEYS"]

QUERY_KEYS = ("group", "sigma", "epsilon", "curve", "sign", "twist", "side", "z", "format", "center", "commands")

GROUP_HELP = (
    "group type: factors joined by 'x', e.g. A2, B2.ad, A1xA1, GL3, SL2, PGL2, "
    "with an optional central torus '+Z1'"
)
SIGMA_HELP = "real form: compact|id, split, flip|quasi-split, swap, perm:i,j,...  (suffix ;painted=i,j allowed)"
CURVE_HELP = "curve involution REGION:LABEL[/t], region H (generic, holomorphic) or A-E; labels " + ", ".join(LABELS)
TWIST_HELP = "twist: trivial, generic, or per lattice coordinate 'c1,c2[,re,im]' joined by ';'"


def parse_query_file(text: str) -> dict[str, str]:
    """Read ``key = value`` lines; ``#`` starts a comment."""
    out: dict[str, str] = {}
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ParseError(f"line {n}: expected 'key = value'")
        if key not in QUERY_KEYS:
            raise ParseError(f"line {n}: unknown key {key!r}")
        if key in out:
            raise ParseError(f"line {n}: duplicate key {key!r}")
        out[key] = value
    return out


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational number {text!r}") from None


def parse_twist(text: str, s: int) -> Twist:
    text = text.strip()
    if text in ("", "trivial", "0"):
        return Twist.trivial(s)
    if text == "generic":
        return Twist.generic()
    blocks = [b for b in text.split(";")]
    if len(blocks) != s:
        raise ParseError(f"twist has {len(blocks)} blocks but the lattice has rank {s}")
    phases, phi = [], []
    for b in blocks:
        vals = [_frac(x) for x in b.split(",")]
        if len(vals) not in (2, 4):
            raise ParseError(f"twist block {b!r} needs 2 or 4 entries")
        phases.append((vals[0], vals[1]))
        phi.append((vals[2], vals[3]) if len(vals) == 4 else (Fraction(0), Fraction(0)))
    has_phi = any(len(b.split(",")) == 4 for b in blocks)
    return Twist(tuple(phases), tuple(phi) if has_phi else None)


def _sign(text: str, what: str) -> str:
    t = text.strip()
    if t in ("+", "+1", "plus"):
        return "+"
    if t in ("-", "-1", "minus"):
        return "-"
    raise ParseError(f"{what} must be + or -, got {text!r}")


def _merge(args, keys) -> dict[str, str]:
    values: dict[str, str] = {}
    if getattr(args, "query", None):
        try:
            with open(args.query, encoding="ascii") as fh:
                values.update(parse_query_file(fh.read()))
        except OSError as exc:
            raise ParseError(f"cannot read query file: {exc}") from None
        except UnicodeDecodeError:
            raise ParseError("query file must be ASCII") from None
    for k in keys:
        v = getattr(args, k, None)
        if v is not None:
            values[k] = v
    return values


def _need(values, key):
    if key not in values:
        raise ParseError(f"missing required value {key!r}")
    return values[key]


def _build_query(values) -> InvolutionQuery:
    d = build_datum(_need(values, "group"))
    curve = parse_curve(_need(values, "curve"), values.get("epsilon") and _sign(values["epsilon"], "epsilon"))
    eps = curve.epsilon
    if "epsilon" in values and _sign(values["epsilon"], "epsilon") != eps:
        raise DomainError("epsilon of the real form and of the curve involution differ")
    center = int(_sign(values.get("center", "+"), "center") + "1")
    sigma = resolve_sigma(d, values.get("sigma", "compact"), eps, center)
    sign = _sign(_need(values, "sign"), "sign")
    twist = parse_twist(values.get("twist", "trivial"), d.s)
    echo = {
        "group": d.label,
        "sigma": sigma.label,
        "epsilon": eps,
        "curve": curve.key,
        "sign": sign,
        "twist": str(twist),
    }
    return InvolutionQuery(d, sigma, curve, sign, twist, echo)


def _mat(M: IntegerMatrix) -> str:
    return str(M)


def cmd_weyl(args, out) -> int:
    d = build_datum(args.group)
    W = generate(d)
    classes = twisted_classes(W, W.identity_automorphism)
    out.write(f"group {d.label}\n")
    out.write(f"rank {d.s}, semisimple rank {d.rank}, roots {len(d.roots)}\n")
    out.write(f"order {W.order}\n")
    out.write(f"class count {len(classes)}\n")
    for c in classes:
        out.write(f"  class {c.id}: rep {W.word(c.representative)}, size {c.size}, order {W.element_order(c.representative)}\n")
    return 0


def _group_sigma(args):
    values = _merge(args, ("group", "sigma", "epsilon", "center"))
    d = build_datum(_need(values, "group"))
    eps = _sign(values.get("epsilon", "+"), "epsilon")
    center = int(_sign(values.get("center", "+"), "center") + "1")
    sigma = resolve_sigma(d, values.get("sigma", "compact"), eps, center)
    W = generate(d)
    sig = induced_weyl_automorphism(sigma, W)
    return d, sigma, W, sig


def cmd_classes(args, out) -> int:
    d, sigma, W, sig = _group_sigma(args)
    classes = twisted_classes(W, sig)
    out.write(f"group {d.label}, sigma {sigma.label}, S = {_mat(sigma.S)}\n")
    out.write(f"|W| = {W.order}, twisted classes = {len(classes)}\n")
    for c in classes:
        out.write(
            f"  class {c.id}: rep {W.word(c.representative)}, size {c.size}, "
            f"gamma = {W.word(c.gamma)} (conjugacy class {c.gamma_class}, order {W.element_order(c.gamma)})\n"
        )
    return 0


def cmd_cohomology(args, out) -> int:
    d, sigma, W, sig = _group_sigma(args)
    classes = twisted_classes(W, sig)
    ups = upsilon(W, sig, classes)
    reps = {cid: rep for rep, cid in W.conjugacy_class_ids.items()}
    out.write(f"group {d.label}, sigma {sigma.label}\n")
    out.write(f"Upsilon: {len(ups.classes)} conjugacy class(es)\n")
    for g in ups.classes:
        gamma = reps[g]
        h1 = shifted_h1(W, sig, gamma, classes)
        label = "H^1" if gamma == 0 else f"H^1_gamma, gamma = {W.word(gamma)}"
        out.write(f"  {label}: {len(h1)} class(es)\n")
        for c in h1:
            cyc = ", ".join(W.word(w) for w in c.cocycles)
            out.write(f"    class {c.id}: cocycles {cyc}\n")
    return 0


def cmd_elliptic(args, out) -> int:
    eps = _sign(args.epsilon, "epsilon")
    rows = enumerate_involutions(args.region, eps)
    region = rows[0].region
    out.write(f"region {region.region}: {region.constraint}\n")
    for r in rows:
        P = pi1_matrix(r)
        parts = [f"{r.name}", f"translations: {r.translations}"]
        if eps == "-":
            parts.append(f"topological type {r.topological_type}")
        else:
            parts.append(f"fixed set {r.fixed_set}")
        parts.append(f"quotient {r.quotient}")
        parts.append(f"pi_1 {_mat(P)}")
        if is_tabulated(r):
            fp, fm = f_matrix(r, "+"), f_matrix(r, "-")
            parts.append(f"f+ {format_monomial_map(*fp)}")
            parts.append(f"f- {format_monomial_map(*fm)}")
        else:
            parts.append("f: not tabulated")
        out.write("  " + "; ".join(parts) + "\n")
    return 0


def _emit(q, values, args, out, sides):
    fmt = values.get("format", "table")
    for side in sides:
        out.write(emit_report(fixed_locus_decomposition(q, side), fmt))


def _sides(values) -> list[str]:
    side = values.get("side", "higgs")
    if side == "both":
        return list(SIDES)
    if side not in SIDES:
        raise ParseError(f"side must be higgs, representation or both, got {side!r}")
    return [side]


_KEYS = ("group", "sigma", "epsilon", "curve", "sign", "twist", "side", "z", "format", "center")


def cmd_fixed_locus(args, out) -> int:
    values = _merge(args, _KEYS)
    q = _build_query(values)
    commands = [c.strip() for c in values.get("commands", "fixed-locus").split(",") if c.strip()]
    for c in commands:
        if c == "fixed-locus":
            _emit(q, values, args, out, _sides(values))
        elif c == "pseudo-real":
            _pseudo_real(q, values, out)
        else:
            raise ParseError(f"unknown command {c!r} in query file")
    return 0


def _parse_z(q, text):
    zs = sigma_fixed_two_torsion(q)
    t = text.strip().lower()
    if t in ("0", "zero", "trivial", "identity"):
        return [z for z in zs if z.is_zero]
    if t == "all":
        return zs
    if t == "nontrivial":
        nz = [z for z in zs if not z.is_zero]
        if len(nz) != 1:
            raise DomainError(
                f"'nontrivial' is ambiguous or empty here: sigma-fixed central 2-torsion is {', '.join(str(z) for z in zs)}"
            )
        return nz
    coords = tuple(_frac(x) for x in t.strip("()").split(","))
    for z in zs:
        if z.v == coords:
            return [z]
    raise DomainError(f"z = {text} is not a sigma-fixed central element of order dividing 2")


def _pseudo_real(q, values, out):
    if q.epsilon != "-":
        raise DomainError("pseudo-real slices need an anti-holomorphic curve involution (region A-E)")
    zs = _parse_z(q, values.get("z", "all"))
    report = fixed_locus_decomposition(q, "higgs")
    out.write(f"# pseudo-real slices for {q.datum.label}, sigma {q.sigma.label}, {q.curve.name}, sign {q.sign}\n")
    for z in zs:
        sl = pseudo_real_moduli(q, z, report)
        out.write(f"z = {sl.z}\n")
        out.write(f"  omega_z = {sl.omega_z_word} (conjugacy class {sl.gamma_class})\n")
        if sl.empty:
            out.write("  slice: empty\n")
        for cid in sl.class_ids:
            c = next(c for c in report.components if c.class_id == cid)
            out.write(f"  class {cid}: rep {c.word}, {c.dim} dim ({c.unit}), pi0 {c.pi0}, |N_W| {c.normalizer_order}\n".replace(f"{c.dim} dim", f"dim {c.dim}"))
        out.write(f"  diagnostics: {sl.diagnostics}\n")
        out.write(f"  forgetful map bijectivity: {sl.bijectivity}\n")


def cmd_pseudo_real(args, out) -> int:
    values = _merge(args, _KEYS)
    q = _build_query(values)
    _pseudo_real(q, values, out)
    return 0


def check_tables() -> list[tuple[bool, str]]:
    """All internal consistency checks of the embedded tables."""
    results: list[tuple[bool, str]] = []
    ident = IntegerMatrix.identity(2)
    for region in "HABCDE":
        eps = "+" if region == "H" else "-"
        for r in enumerate_involutions(region, eps):
            P = pi1_matrix(r)
            results.append(((P @ P).is_identity(), f"pi_1 square = I: region {region} {r.name}"))
    for key, lit in sorted(TABULATED_F.items()):
        region_group = key[0]
        lit_p = pi1_matrix_tabulated("H" if region_group == "H" else region_group[0], key[1])
        if lit_p is not None:
            results.append(((lit_p @ lit_p).is_identity(), f"tabulated pi_1 square = I: {region_group} alpha(.,{key[1]})"))
    for region, a, sign, t, prov in f_table_rows():
        results.append((t.is_involution(), f"f{sign} squares to identity: region {region} a={a} ({prov})"))
    by_key = {}
    for region, a, sign, t, prov in f_table_rows():
        by_key.setdefault((region, a), {})[sign] = t
    for (region, a), pair in by_key.items():
        fp, fm = pair["+"], pair["-"]
        dual = fm.M == -fp.M and fm.conj != fp.conj
        results.append((dual, f"f- = conj o inverse o f+: region {region} a={a}"))
        inv = parse_curve(f"{region}:{a}" + ("" if region in "HAB" else "/t"))
        P = pi1_matrix(inv)
        results.append((fp.M == P.T and not fp.conj, f"f+ = transpose of pi_1 action: region {region} a={a}"))
    for cell in FLAGGED:
        M, conj = parse_monomial_map(cell.tabulated)
        tabulated_inv = (M @ M).is_identity()
        used, uconj = parse_monomial_map(cell.used)
        results.append(
            (
                (used @ used).is_identity(),
                f"flagged cell region {cell.region} alpha(-,{cell.a_label}) f{cell.sign}: tabulated {cell.tabulated} "
                f"(involution: {'yes' if tabulated_inv else 'no'}), using {cell.used}; {cell.reason}",
            )
        )
    for region in "ABCDE":
        for r in enumerate_involutions(region, "-"):
            n, b = topological_type_check(r)
            results.append((n == r.topological_type[0], f"topological type {r.topological_type}: region {region} {r.name} (computed n = {n})"))
    hol_fixed = {("1", False): None, ("1", True): 0, ("-1", False): 4, ("-1", True): 4}
    for r in enumerate_involutions("H", "+"):
        P = pi1_matrix(r)
        y = (Fraction(1, 2), Fraction(0)) if r.translated else None
        if r.a_label == "1" and not r.translated:
            ok = (P - ident) == IntegerMatrix.zeros(2, 2)
            detail = "fixed set X"
        else:
            n = fixed_components_real_torus(P, y)
            ok = n == hol_fixed[(r.a_label, r.translated)]
            detail = f"{n} fixed point(s)"
        results.append((ok, f"holomorphic fixed set: {r.name} ({detail}, expected {r.fixed_set})"))
    return results


def cmd_check_tables(args, out) -> int:
    results = check_tables()
    failed = 0
    for ok, msg in results:
        out.write(f"{'ok  ' if ok else 'FAIL'} {msg}\n")
        failed += not ok
    out.write(f"{len(results) - failed}/{len(results)} checks passed\n")
    return 0 if failed == 0 else 1


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="brane-atlas",
        description="Fixed loci of involutions on Higgs and representation moduli over elliptic curves.",
        epilog="Environment: BRANE_ATLAS_ORDER_CAP caps Weyl group enumeration (default 10^7).",
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("weyl", help="Weyl group order and conjugacy classes")
    s.add_argument("--group", required=True, help=GROUP_HELP)
    s.set_defaults(func=cmd_weyl)

    for name, func, hlp in (
        ("classes", cmd_classes, "twisted conjugacy classes W/_sigma W"),
        ("cohomology", cmd_cohomology, "Upsilon and shifted H^1 per gamma"),
    ):
        s = sub.add_parser(name, help=hlp)
        s.add_argument("--group", help=GROUP_HELP)
        s.add_argument("--sigma", help=SIGMA_HELP)
        s.add_argument("--epsilon", help="+ or - (metadata; the lattice action is the same)")
        s.add_argument("--center", help="action on the central sublattice: + (default) or -")
        s.add_argument("--query", help="query file with key = value lines")
        s.set_defaults(func=func)

    s = sub.add_parser("elliptic", help="involution tables for a curve region")
    s.add_argument("--region", required=True, help="H (generic) or A-E")
    s.add_argument("--epsilon", required=True, help="+ holomorphic, - anti-holomorphic")
    s.set_defaults(func=cmd_elliptic)

    for name, func, hlp in (
        ("fixed-locus", cmd_fixed_locus, "decompose the fixed locus over twisted classes"),
        ("pseudo-real", cmd_pseudo_real, "pseudo-real moduli slices over central 2-torsion"),
    ):
        s = sub.add_parser(name, help=hlp)
        s.add_argument("--group", help=GROUP_HELP)
        s.add_argument("--sigma", help=SIGMA_HELP)
        s.add_argument("--epsilon", help="optional; must match the curve involution")
        s.add_argument("--curve", help=CURVE_HELP)
        s.add_argument("--sign", help="Higgs field sign, + or -")
        s.add_argument("--twist", help=TWIST_HELP)
        s.add_argument("--center", help="action on the central sublattice: + (default) or -")
        s.add_argument("--query", help="query file with key = value lines")
        if name == "fixed-locus":
            s.add_argument("--side", help="higgs (default), representation or both")
            s.add_argument("--format", choices=("table", "structured"), help="output format")
        else:
            s.add_argument("--z", help="0, nontrivial, all (default) or coordinates like 1/2,0")
        s.set_defaults(func=func)

    s = sub.add_parser("check-tables", help="run all table consistency checks")
    s.set_defaults(func=cmd_check_tables)
    return p


def run(argv=None, out=None, err=None) -> int:
    """Run the command line; returns the exit status."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return 2
    except DomainError as exc:
        err.write(f"domain error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())
