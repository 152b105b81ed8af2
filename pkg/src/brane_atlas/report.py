"""Text renderings of a ``ModuliReport``.

Two formats:

* ``table``: aligned columns for reading.
* ``structured``: one ``key = value`` line per field, stable names, e.g.
  ``component[0].dim = 1``. ``parse_structured`` inverts it exactly.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction

from .errors import ParseError
from .moduli import FixedLocusComponent, ModuliReport, PseudoRealSlice

__all__ = ["emit_report", "parse_structured", "format_dim"]


def format_dim(dim, unit: str) -> str:
    return f"dim {dim} ({unit})"


def _enc(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, tuple):
        return ",".join(str(v) for v in value) if value else "()"
    return str(value)


def _dec(text: str, annotation: str):
    ann = annotation.replace(" ", "")
    optional = ann.endswith("|None")
    base = ann[: -len("|None")] if optional else ann
    if optional and text == "none":
        return None
    try:
        if base == "int":
            return int(text)
        if base == "bool":
            if text not in ("true", "false"):
                raise ValueError(text)
            return text == "true"
        if base == "Fraction":
            return Fraction(text)
        if base == "str":
            return text
        if base == "tuple[int,...]":
            return () if text == "()" else tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ParseError(f"cannot read {text!r} as {annotation}") from None
    raise ParseError(f"unsupported field type {annotation}")


def _table(report: ModuliReport) -> str:
    lines = ["# fixed locus decomposition"]
    for k in sorted(report.query):
        lines.append(f"# {k}: {report.query[k]}")
    lines.append(f"# side: {report.side}")
    lines.append(f"# |W| = {report.weyl_order}, twisted classes = {report.class_count}")
    header = ("class", "rep", "size", "gamma", "ord", "dimension", "formula", "pi0", "|N_W|", "maximal", "brane", "singular")
    rows = []
    for c in report.components:
        rows.append(
            (
                str(c.class_id),
                c.word,
                str(c.class_size),
                c.gamma_word,
                str(c.ord_gamma),
                format_dim(c.dim, c.unit),
                str(c.formula_dim) + ("" if c.formula_dim_matches else " !"),
                str(c.pi0) + ("" if c.nonempty is not None else " (generic)"),
                str(c.normalizer_order),
                "yes" if c.maximal else "no",
                c.brane,
                "yes" if c.in_singular_locus else "no",
            )
        )
    if not rows:
        lines.append("  ".join(header))
        lines.append("no fixed components")
    else:
        widths = [max(len(r[i]) for r in rows + [header]) for i in range(len(header))]
        lines.append("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
        for r in rows:
            lines.append("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip())
    for c in report.components:
        if c.constraint:
            lines.append(f"class {c.class_id}: nonempty iff {c.constraint}")
        if c.pi0_orbits is not None:
            lines.append(f"class {c.class_id}: N_W acts on pi0 with {c.pi0_orbits} orbit(s)")
    for g, ids in report.h1_index.items():
        lines.append(f"gamma class {g}: classes {', '.join(str(i) for i in ids)}")
    for z, sl in report.pseudo_real_slices.items():
        ids = ", ".join(str(i) for i in sl.class_ids) if sl.class_ids else "empty"
        lines.append(f"pseudo-real z = {z}: omega_z = {sl.omega_z_word}; classes {ids} ({sl.diagnostics})")
    for n in report.notes:
        lines.append(f"note: {n}")
    return "\n".join(lines) + "\n"


def _structured(report: ModuliReport) -> str:
    lines = [f"report.side = {report.side}", f"report.weyl_order = {report.weyl_order}", f"report.class_count = {report.class_count}"]
    for k in sorted(report.query):
        lines.append(f"query.{k} = {report.query[k]}")
    for i, c in enumerate(report.components):
        for f in dataclasses.fields(c):
            lines.append(f"component[{i}].{f.name} = {_enc(getattr(c, f.name))}")
    for g, ids in report.h1_index.items():
        lines.append(f"h1[{g}] = {_enc(ids)}")
    for z, sl in report.pseudo_real_slices.items():
        for f in dataclasses.fields(sl):
            lines.append(f"slice[{z}].{f.name} = {_enc(getattr(sl, f.name))}")
    for i, n in enumerate(report.notes):
        lines.append(f"note[{i}] = {n}")
    return "\n".join(lines) + "\n"


def emit_report(report: ModuliReport, fmt: str = "table") -> str:
    """Render a report as ``table`` or ``structured`` text."""
    if fmt == "table":
        return _table(report)
    if fmt == "structured":
        return _structured(report)
    raise ParseError(f"unknown format {fmt!r}")


def _split_index(key: str, prefix: str) -> tuple[str, str]:
    rest = key[len(prefix) + 1 :]
    idx, _, tail = rest.partition("]")
    return idx, tail.lstrip(".")


def parse_structured(text: str) -> ModuliReport:
    """Rebuild a report from its structured rendering."""
    head: dict[str, str] = {}
    query: dict[str, str] = {}
    comps: dict[int, dict[str, str]] = {}
    h1: dict[int, tuple[int, ...]] = {}
    slices: dict[str, dict[str, str]] = {}
    notes: dict[int, str] = {}
    for raw in text.splitlines():
        if not raw.strip():
            continue
        key, sep, value = raw.partition(" = ")
        if not sep:
            key, value = raw.rstrip().rstrip("=").rstrip(), ""
            if not raw.rstrip().endswith("="):
                raise ParseError(f"bad structured line {raw!r}")
        if key.startswith("report."):
            head[key[7:]] = value
        elif key.startswith("query."):
            query[key[6:]] = value
        elif key.startswith("component["):
            idx, name = _split_index(key, "component")
            comps.setdefault(int(idx), {})[name] = value
        elif key.startswith("h1["):
            idx, _ = _split_index(key, "h1")
            h1[int(idx)] = _dec(value, "tuple[int, ...]")
        elif key.startswith("slice["):
            z, _, name = key[6:].rpartition("].")
            slices.setdefault(z, {})[name] = value
        elif key.startswith("note["):
            idx, _ = _split_index(key, "note")
            notes[int(idx)] = value
        else:
            raise ParseError(f"unknown structured key {key!r}")

    def build(cls, values):
        kwargs = {}
        for f in dataclasses.fields(cls):
            if f.name not in values:
                raise ParseError(f"missing field {f.name} for {cls.__name__}")
            kwargs[f.name] = _dec(values[f.name], f.type)
        return cls(**kwargs)

    try:
        return ModuliReport(
            query=query,
            side=head["side"],
            weyl_order=int(head["weyl_order"]),
            class_count=int(head["class_count"]),
            components=[build(FixedLocusComponent, comps[i]) for i in sorted(comps)],
            h1_index=dict(sorted(h1.items())),
            pseudo_real_slices={z: build(PseudoRealSlice, v) for z, v in slices.items()},
            notes=[notes[i] for i in sorted(notes)],
        )
    except KeyError as exc:
        raise ParseError(f"missing report field {exc}") from None
