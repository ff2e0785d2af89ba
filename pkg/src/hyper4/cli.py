"""Command line interface.

Every verb emits one JSON envelope on stdout (schema hyper4-census/1)
with the normalized command, a determinism note, a list of records, and
a list of errors.  All numbers are integers or exact rational strings;
the exit status is 0 exactly when no hard validation failure occurred.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict

from . import __version__
from .cusp import ETA_TABLE, classify_flat, cusp_flat_group, eta, vertex_classes
from .filling import (
    classify_filled_cover,
    classify_homeo,
    cyclic_cover,
    default_meridians,
    double_cover_record,
    fill,
    parse_meridian_lines,
)
from .grouppres import abelianization, todd_coxeter
from .lorentz import IDENTITY, orientation_sign
from .pairing import (
    CodeError,
    build_side_pairings,
    euler_characteristic,
    face_cycles,
    fundamental_group,
    parse_census_lines,
    validate_pairings,
)

SCHEMA = "hyper4-census/1"
DETERMINISM_NOTE = (
    "exact integer and rational arithmetic; no floating point and no "
    "randomness; records are independent of thread count"
)
TORSION_NOTE = "torsion freeness of the side-pairing group is assumed per census"


def _envelope(command, records, errors) -> dict:
    return {
        "schema": SCHEMA,
        "tool": {"name": "hyper4", "version": __version__},
        "command": command,
        "determinism": DETERMINISM_NOTE,
        "records": records,
        "errors": errors,
    }


def _normalized_command(tokens) -> list[str]:
    out = []
    skip = False
    for tok in tokens:
        if skip:
            skip = False
            continue
        if tok == "--jobs":
            skip = True
            continue
        if tok.startswith("--jobs="):
            continue
        out.append(tok)
    return out


def _decode_record(code: str) -> dict:
    pairing_set = build_side_pairings(code)
    arrows = []
    preserving = []
    reversing = []
    for p in pairing_set.pairings:
        arrows.append(
            {
                "letter": p.letter,
                "source": p.source.label,
                "source_center": list(p.source.center),
                "target": p.target.label,
                "target_center": list(p.target.center),
                "k": list(p.kpart),
                "matrix": [list(row) for row in p.matrix.rows],
            }
        )
        if orientation_sign(p.matrix) == 1:
            preserving.append(p.letter)
        else:
            reversing.append(p.letter)
    return {
        "code": code,
        "arrows": arrows,
        "orientation": {"preserving": preserving, "reversing": reversing},
    }


def _decode_text(record: dict) -> str:
    lines = [f"code {record['code']}"]
    for a in record["arrows"]:
        src = ",".join(f"{c:+d}" if c else "0" for c in a["source_center"])
        dst = ",".join(f"{c:+d}" if c else "0" for c in a["target_center"])
        k = ",".join(f"{c:+d}" for c in a["k"])
        lines.append(
            f"{a['letter']}: {a['source']}({src}) -> {a['target']}({dst})  k=({k})"
        )
    return "\n".join(lines)


def _cusp_summaries(pairing_set, classes) -> list[dict]:
    out = []
    for vclass in classes:
        tag = classify_flat(vclass)
        group = cusp_flat_group(vclass)
        out.append(
            {
                "index": vclass.index,
                "size": vclass.size,
                "representative": list(vclass.representative.coords),
                "flat_type": tag,
                "holonomy": {
                    "order": group.holonomy_order,
                    "type": group.holonomy_type,
                    "orientation_preserving": group.orientable,
                },
                "stabilizer_words": [str(w) for w, _ in vclass.stabilizer],
                "eta": str(ETA_TABLE[tag]) if tag in ETA_TABLE else None,
            }
        )
    return out


def _verify_record(code: str, double_cover: bool = False) -> dict:
    pairing_set = build_side_pairings(code)
    report = validate_pairings(pairing_set)
    ridge = face_cycles(pairing_set, 2)
    edge = face_cycles(pairing_set, 1)
    chi = euler_characteristic(pairing_set)
    pres = fundamental_group(pairing_set)
    classes = vertex_classes(pairing_set)
    cusps = _cusp_summaries(pairing_set, classes)
    types = "".join(c["flat_type"] for c in cusps)
    preserving = [
        p.letter for p in pairing_set.pairings if orientation_sign(p.matrix) == 1
    ]
    reversing = [
        p.letter for p in pairing_set.pairings if orientation_sign(p.matrix) == -1
    ]
    etas = [c["eta"] for c in cusps]
    record = {
        "code": code,
        "valid": report.ok,
        "checks": {
            "pairings": [
                {
                    "letter": c.letter,
                    "congruence_two": c.in_congruence_two,
                    "maps_side_plane": c.maps_normal,
                    "maps_vertex_set": c.maps_vertex_set,
                }
                for c in report.checks
            ],
            "involution": report.involution_ok,
        },
        "orientable": not reversing,
        "orientation": {"preserving": preserving, "reversing": reversing},
        "side_classes": len(pairing_set.pairings),
        "ridge_classes": len(ridge),
        "edge_classes": len(edge),
        "ridge_cycles": {
            "count": len(ridge),
            "lengths": sorted({c.length for c in ridge}),
            "all_identity": all(c.cycle_matrix == IDENTITY for c in ridge),
        },
        "chi": chi,
        "h1": str(abelianization(pres)),
        "cusps": cusps,
        "cusp_types": types,
        "signature": None if None in etas else _int_signature(etas),
        "notes": [TORSION_NOTE],
    }
    if double_cover:
        record["double_cover"] = asdict(double_cover_record(code))
    return record


def _int_signature(etas) -> int:
    from fractions import Fraction

    total = sum((Fraction(e) for e in etas), Fraction(0))
    assert total.denominator == 1
    return int(total)


def _cmd_decode(args) -> tuple[list, list, str | None]:
    record = _decode_record(args.code)
    text = _decode_text(record) if args.format == "text" else None
    return [record], [], text


def _cmd_verify(args) -> tuple[list, list, None]:
    record = _verify_record(args.code, double_cover=args.double_cover)
    errors = []
    if not record["valid"]:
        errors.append({"code": args.code, "message": "side pairing validation failed"})
    return [record], errors, None


def _cmd_cusps(args) -> tuple[list, list, None]:
    pairing_set = build_side_pairings(args.code)
    classes = vertex_classes(pairing_set)
    cusps = _cusp_summaries(pairing_set, classes)
    etas = [c["eta"] for c in cusps]
    record = {
        "code": args.code,
        "cusp_count": len(cusps),
        "cusps": cusps,
        "cusp_types": "".join(c["flat_type"] for c in cusps),
        "signature": None if None in etas else _int_signature(etas),
        "notes": [TORSION_NOTE],
    }
    return [record], [], None


def _cmd_cover(args) -> tuple[list, list, None]:
    record = asdict(cyclic_cover(args.code, args.cyclic, limit=args.max_cosets))
    errors = []
    if args.classify_filling:
        result = classify_filled_cover(
            args.code,
            args.cyclic,
            limit=args.max_cosets,
            tietze_effort=args.tietze_effort,
        )
        filling = {k: v for k, v in result.items() if k != "cover"}
        for key in ("verdict",):
            if key in filling:
                filling[key] = asdict(filling[key])
        if "verdicts" in filling:
            filling["verdicts"] = {
                k: (asdict(v) if not isinstance(v, str) else v)
                for k, v in filling["verdicts"].items()
            }
        record["filling"] = filling
    return [record], errors, None


def _cmd_fill(args) -> tuple[list, list, None]:
    pairing_set = build_side_pairings(args.code)
    classes = vertex_classes(pairing_set)
    if args.meridians == "default":
        meridians = default_meridians(args.code)
    else:
        with open(args.meridians, encoding="utf-8") as handle:
            meridians = parse_meridian_lines(handle)
    filled = fill(pairing_set, meridians, classes)
    table = todd_coxeter(filled, (), limit=args.max_cosets)
    record = {
        "code": args.code,
        "meridians": [
            {"cusp": m.cusp_index, "word": str(m.word), "exponent": m.exponent}
            for m in meridians
        ],
        "chi": euler_characteristic(pairing_set),
        "order": table.index if table.complete else "unknown",
        "h1": str(abelianization(filled)),
    }
    return [record], [], None


def _cmd_classify(args) -> tuple[list, list, None]:
    chi, sigma, spin_status = args.chi, args.sigma, None
    if args.record is not None:
        with open(args.record, encoding="utf-8") as handle:
            data = json.load(handle)
        if "records" in data:
            data = data["records"][0]
        chi = data["chi"] if chi is None else chi
        sigma = data["sigma"] if sigma is None else sigma
        spin_status = data.get("spin_status")
    if args.spin:
        spin_status = "spin"
    elif args.nonspin:
        spin_status = "nonspin"
    elif args.spin_unknown:
        spin_status = "unknown"
    if chi is None or sigma is None or spin_status is None:
        raise ValueError("classify needs chi, sigma, and a spin status")
    record: dict = {
        "chi": chi,
        "sigma": sigma,
        "spin_status": spin_status,
        "assumes": "simply connected",
    }
    errors = []
    if spin_status in ("spin", "nonspin"):
        try:
            result = classify_homeo(chi, sigma, spin_status == "spin", True)
            record["verdict"] = asdict(result)
        except ValueError as exc:
            errors.append({"message": str(exc)})
    else:
        verdicts = {}
        for flag, key in ((True, "if_spin"), (False, "if_not_spin")):
            try:
                verdicts[key] = asdict(classify_homeo(chi, sigma, flag, True))
            except ValueError as exc:
                verdicts[key] = str(exc)
        record["verdicts"] = verdicts
    return [record], errors, None


def _census_line(lineno: int, code: str, annotation: str | None):
    try:
        record = _verify_record(code)
        record["line"] = lineno
        if annotation:
            record["annotation"] = annotation
        error = None
        if not record["valid"]:
            error = {
                "line": lineno,
                "code": code,
                "message": "side pairing validation failed",
            }
        return record, error
    except (CodeError, ValueError, AssertionError) as exc:
        return None, {"line": lineno, "code": code, "message": str(exc)}


def _cmd_census(args) -> tuple[list, list, None]:
    with open(args.path, encoding="utf-8") as handle:
        entries = parse_census_lines(handle)
    records = []
    errors = []
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(
                pool.map(lambda e: _census_line(*e), entries)
            )
    else:
        results = [_census_line(*e) for e in entries]
    for record, error in results:
        if record is not None:
            records.append(record)
        if error is not None:
            errors.append(error)
    return records, errors, None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyper4",
        description="exact side-pairing codes on the hyperbolic 24-cell",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("decode", help="expand a code into its twelve pairings")
    p.add_argument("code")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("verify", help="run all structural checks on a code")
    p.add_argument("code")
    p.add_argument("--double-cover", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("cusps", help="cusp classes, flat types, and eta")
    p.add_argument("code")
    p.set_defaults(func=_cmd_cusps)

    p = sub.add_parser("cover", help="invariants of a cyclic cover")
    p.add_argument("code")
    p.add_argument("--cyclic", type=int, required=True, metavar="N")
    p.add_argument("--classify-filling", action="store_true")
    p.add_argument("--max-cosets", type=int, default=10**6)
    p.add_argument("--tietze-effort", type=int, default=1000)
    p.set_defaults(func=_cmd_cover)

    p = sub.add_parser("fill", help="kill meridian words in the fundamental group")
    p.add_argument("code")
    p.add_argument("--meridians", required=True, metavar="default|FILE")
    p.add_argument("--max-cosets", type=int, default=10**6)
    p.set_defaults(func=_cmd_fill)

    p = sub.add_parser("classify", help="homeomorphism type from invariants")
    p.add_argument("--chi", type=int)
    p.add_argument("--sigma", type=int)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--spin", action="store_true")
    group.add_argument("--nonspin", action="store_true")
    group.add_argument("--spin-unknown", action="store_true")
    p.add_argument("--record", metavar="FILE")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("census", help="verify every code in a file")
    p.add_argument("path")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_census)

    return parser


def main(argv=None) -> int:
    tokens = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(tokens)
    command = _normalized_command(tokens)
    try:
        records, errors, text = args.func(args)
    except (CodeError, ValueError, OSError) as exc:
        records, errors, text = [], [{"message": str(exc)}], None
    envelope = _envelope(command, records, errors)
    if text is not None:
        print(text)
    else:
        print(json.dumps(envelope, indent=2))
    return 1 if errors else 0


if __name__ == "__main__":
    sys.exit(main())
