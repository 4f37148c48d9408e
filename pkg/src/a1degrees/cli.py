"""Batch command-line interface.

Subcommands mirror the library: form operations on Gram matrices or
diagonal entry lists, Hilbert symbols, and local/global degrees of
polynomial systems.  Exit codes: 0 success, 1 domain error (degenerate
form, non-isolated zeros, ...), 2 parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from . import degrees, forms, witt
from .fields import CC, QQ, RR, FieldDesc, factorize, gf_construct
from .poly import Ideal, ParseError, PolyRing

_FIELD_RE = re.compile(r"^(QQ|RR|CC)$|^GF\((\d+)\)$")
_SCALAR_RE = re.compile(r"^-?\d+(/\d+)?$")


def parse_field(text: str) -> FieldDesc:
    m = _FIELD_RE.match(text.strip())
    if not m:
        raise ParseError(f"bad field spec {text!r}; expected QQ, RR, CC or GF(q)", 0)
    if m.group(1):
        return {"QQ": QQ, "RR": RR, "CC": CC}[m.group(1)]
    q = int(m.group(2))
    fac = factorize(q)
    if len(fac) != 1:
        raise ParseError(f"GF({q}): order must be a prime power", 3)
    (p, k), = fac.items()
    return gf_construct(p, k)


def parse_scalar(text: str, position: int = 0) -> Fraction:
    text = text.strip()
    if not _SCALAR_RE.match(text):
        raise ParseError(f"bad entry {text!r}; integers and fractions a/b only",
                         position)
    return Fraction(text)


def parse_matrix(text: str) -> list[list[Fraction]]:
    s = text.strip()
    pos = 0

    def expect(ch):
        nonlocal pos
        if pos >= len(s) or s[pos] != ch:
            raise ParseError(f"expected {ch!r}", pos)
        pos += 1

    def skip_ws():
        nonlocal pos
        while pos < len(s) and s[pos].isspace():
            pos += 1

    def parse_row():
        nonlocal pos
        expect("[")
        row = []
        while True:
            skip_ws()
            start = pos
            while pos < len(s) and s[pos] not in ",]":
                pos += 1
            row.append(parse_scalar(s[start:pos], start))
            skip_ws()
            if pos < len(s) and s[pos] == ",":
                pos += 1
                continue
            expect("]")
            return row

    expect("[")
    rows = []
    while True:
        skip_ws()
        rows.append(parse_row())
        skip_ws()
        if pos < len(s) and s[pos] == ",":
            pos += 1
            continue
        expect("]")
        break
    skip_ws()
    if pos != len(s):
        raise ParseError("unexpected trailing input", pos)
    return rows


def parse_entries(text: str) -> list[Fraction]:
    return [parse_scalar(part, i) for i, part in enumerate(text.split(","))]


def read_source(value: str) -> str:
    if value == "-":
        return sys.stdin.read()
    if os.path.exists(value):
        with open(value, encoding="utf-8") as fh:
            return fh.read()
    return value


def split_polys(text: str) -> list[str]:
    parts = [p.strip() for chunk in text.splitlines() for p in chunk.split(";")]
    return [p for p in parts if p]


def payload_class(args) -> forms.GWClass:
    field = parse_field(args.field)
    given = [p for p in (args.matrix, args.diag) if p is not None]
    if len(given) != 1:
        raise ParseError("provide exactly one of --matrix or --diag", 0)
    if args.matrix is not None:
        return forms.make_gw_class(parse_matrix(args.matrix), field)
    return forms.make_diagonal_form(field, parse_entries(args.diag))


def class_from_text(text: str, field: FieldDesc) -> forms.GWClass:
    text = text.strip()
    if text.startswith("["):
        return forms.make_gw_class(parse_matrix(text), field)
    return forms.make_diagonal_form(field, parse_entries(text))


# ---------------------------------------------------------------------------
# JSON encoding.


def field_to_json(field: FieldDesc) -> dict:
    out = {"name": str(field)}
    if field.kind == "GF":
        out["modulus"] = list(field.modulus)
    return out


def field_from_json(obj: dict) -> FieldDesc:
    field = parse_field(obj["name"])
    if field.kind == "GF" and "modulus" in obj:
        field = gf_construct(field.char, field.degree, tuple(obj["modulus"]))
    return field


def gwclass_to_json(beta: forms.GWClass, extra: dict | None = None) -> dict:
    out = {
        "field": field_to_json(beta.field),
        "gram": [[str(c) for c in row] for row in beta.gram],
        "rank": beta.rank,
    }
    kind = beta.field.kind
    if kind in ("QQ", "RR"):
        out["signature"] = forms.get_signature(beta)
    if beta.rank:
        out["discriminant"] = str(forms.get_discriminant(beta))
    if kind == "QQ":
        out["hasse_witt"] = {str(p): forms.hasse_witt_invariant(beta, p)
                             for p in forms.hasse_witt_primes(beta)}
    if extra:
        out.update(extra)
    return out


def gwclass_from_json(obj: dict) -> forms.GWClass:
    field = field_from_json(obj["field"])
    rows = [[_entry_from_str(s, field) for s in row] for row in obj["gram"]]
    return forms.make_gw_class(rows, field)


def _entry_from_str(s: str, field: FieldDesc):
    if field.kind != "GF":
        return Fraction(s)
    # Entries render as residue polynomials in t.
    ring = PolyRing(QQ, ("t",))
    poly = ring.from_string(s.replace("t", "t") if s else "0")
    coeffs = [0] * field.degree
    for e, c in poly.terms.items():
        coeffs[e[0]] = c.numerator % field.char
    return field.coerce(tuple(coeffs))


def emit(args, pretty_lines, json_obj):
    if args.json:
        print(json.dumps(json_obj, indent=2))
    else:
        for line in pretty_lines:
            print(line)


# ---------------------------------------------------------------------------
# Subcommand handlers.


def cmd_form_diagonalize(args):
    beta = payload_class(args)
    diag, _ = forms.diagonalize(beta)
    emit(args, [str(diag)], gwclass_to_json(diag))


def cmd_form_invariants(args):
    beta = payload_class(args)
    inv = forms.get_invariants(beta)
    lines = [f"rank: {inv.rank}"]
    if inv.signature is not None:
        lines.append(f"signature: {inv.signature}")
    lines.append(f"discriminant: {inv.discriminant}")
    if inv.hasse_witt is not None:
        hw = ", ".join(f"{p}: {v}" for p, v in sorted(inv.hasse_witt.items()))
        lines.append(f"hasse_witt: {{{hw}}}")
    emit(args, lines, gwclass_to_json(beta))


def cmd_form_decompose(args):
    beta = payload_class(args)
    report = witt.sum_decomposition(beta)
    extra = {
        "witt_index": report.witt_index,
        "decomposition": report.display,
        "isotropic": witt.is_isotropic(beta),
        "anisotropic_part": [[str(c) for c in row]
                             for row in report.anisotropic_part.gram],
    }
    emit(args, [report.display], gwclass_to_json(beta, extra))


def cmd_form_anisotropic_part(args):
    beta = payload_class(args)
    part = witt.anisotropic_part(beta)
    emit(args, [str(part)], gwclass_to_json(part))


def cmd_form_isomorphic(args):
    field = parse_field(args.field)
    b1 = class_from_text(args.first, field)
    b2 = class_from_text(args.second, field)
    result = forms.is_isomorphic_form(b1, b2)
    emit(args, ["true" if result else "false"], {"isomorphic": result})


def cmd_form_make(args):
    field = parse_field(args.field)
    if args.kind == "diagonal":
        if args.entries is None:
            raise ParseError("make diagonal requires --entries", 0)
        beta = forms.make_diagonal_form(field, parse_entries(args.entries))
    elif args.kind == "hyperbolic":
        if args.rank is None:
            raise ParseError("make hyperbolic requires --rank", 0)
        beta = forms.make_hyperbolic_form(field, args.rank)
    else:
        if args.entries is None:
            raise ParseError("make pfister requires --entries", 0)
        beta = forms.make_pfister_form(field, parse_entries(args.entries))
    emit(args, [str(beta)], gwclass_to_json(beta))


def cmd_symbol_hilbert(args):
    a = parse_scalar(args.a)
    b = parse_scalar(args.b)
    value = forms.hilbert_symbol(a, b, args.p)
    emit(args, [str(value)], {"a": str(a), "b": str(b), "p": args.p,
                              "symbol": value})


def _system_from_args(args):
    field = parse_field(args.field)
    if field.kind in ("RR", "CC"):
        raise ValueError(
            "degrees over RR/CC must be computed over QQ and base-changed; "
            "use --field QQ with --base-change " + field.kind)
    names = tuple(v.strip() for v in args.vars.split(",") if v.strip())
    ring = PolyRing(field, names)
    polys = split_polys(read_source(args.polys))
    return ring, degrees.EndoSystem.of(ring, *polys)


def _point_ideal(ring, args):
    gens = split_polys(read_source(args.ideal))
    return Ideal.of(ring, *gens)


def _emit_degree(args, beta):
    if getattr(args, "base_change", None):
        beta = forms.base_change(beta, parse_field(args.base_change))
    emit(args, [str(beta), f"rank: {beta.rank}"], gwclass_to_json(beta))


def cmd_degree_global(args):
    _, system = _system_from_args(args)
    _emit_degree(args, degrees.global_a1_degree(system))


def cmd_degree_local(args):
    ring, system = _system_from_args(args)
    point = _point_ideal(ring, args)
    _emit_degree(args, degrees.local_a1_degree(system, point))


def cmd_basis_local(args):
    ring, system = _system_from_args(args)
    point = _point_ideal(ring, args)
    basis = degrees.local_algebra_basis(system, point)
    mons = [str(m) for m in basis.basis]
    emit(args, mons, {"basis": mons, "size": len(mons)})


# ---------------------------------------------------------------------------


def _add_payload(parser):
    parser.add_argument("--field", required=True,
                        help="QQ, RR, CC or GF(q) with q an odd prime power")
    parser.add_argument("--matrix", help='Gram matrix, e.g. "[[1,3],[3,7]]"')
    parser.add_argument("--diag", help='diagonal entries, e.g. "3,-3,2,5"')
    parser.add_argument("--json", action="store_true")


def _add_system(parser, with_ideal):
    parser.add_argument("--field", required=True)
    parser.add_argument("--vars", required=True,
                        help="comma-separated variable names (fixes the "
                             "grevlex order)")
    parser.add_argument("--polys", required=True,
                        help="file, '-' for stdin, or inline polynomials "
                             "separated by ';'")
    if with_ideal:
        parser.add_argument("--ideal", required=True,
                            help="generators of the point's maximal ideal")
    parser.add_argument("--base-change", choices=["RR", "CC"], dest="base_change")
    parser.add_argument("--json", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="a1deg",
        description="Exact A1-Brouwer degrees and symmetric bilinear forms.")
    sub = top.add_subparsers(dest="command", required=True)

    form = sub.add_parser("form", help="operations on Gram matrices")
    fsub = form.add_subparsers(dest="subcommand", required=True)
    for name, handler in [("diagonalize", cmd_form_diagonalize),
                          ("invariants", cmd_form_invariants),
                          ("decompose", cmd_form_decompose),
                          ("anisotropic-part", cmd_form_anisotropic_part)]:
        p = fsub.add_parser(name)
        _add_payload(p)
        p.set_defaults(handler=handler)
    p = fsub.add_parser("isomorphic")
    p.add_argument("--field", required=True)
    p.add_argument("first", help="Gram matrix or diagonal entry list")
    p.add_argument("second")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_form_isomorphic)
    p = fsub.add_parser("make")
    p.add_argument("kind", choices=["diagonal", "hyperbolic", "pfister"])
    p.add_argument("--field", required=True)
    p.add_argument("--entries")
    p.add_argument("--rank", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_form_make)

    symbol = sub.add_parser("symbol", help="Hilbert symbols")
    ssub = symbol.add_subparsers(dest="subcommand", required=True)
    p = ssub.add_parser("hilbert")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("p", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_symbol_hilbert)

    degree = sub.add_parser("degree", help="A1-Brouwer degrees")
    dsub = degree.add_subparsers(dest="subcommand", required=True)
    p = dsub.add_parser("global")
    _add_system(p, with_ideal=False)
    p.set_defaults(handler=cmd_degree_global)
    p = dsub.add_parser("local")
    _add_system(p, with_ideal=True)
    p.set_defaults(handler=cmd_degree_local)

    basis = sub.add_parser("basis", help="local algebra bases")
    bsub = basis.add_subparsers(dest="subcommand", required=True)
    p = bsub.add_parser("local")
    _add_system(p, with_ideal=True)
    p.set_defaults(handler=cmd_basis_local)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.handler(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
