"""
Command line front end.

    incidence der-basis    --poset P --ring R
    incidence jordan-basis --poset P --ring R
    incidence check        --poset P --ring R --operator OP.json
    incidence decompose    --poset P --ring R --operator OP.json
    incidence transitive   --poset P --ring R --map F.json
    incidence cohomology   --poset P --ring R
    incidence mobius       --poset P --ring R
    incidence verify

Exit status: 0 success, 1 a property failed (not a derivation, not
transitive, not invertible, a verify criterion failed), 2 bad input.
"""

from __future__ import annotations

import argparse
import sys

from incidence import records, spaces
from incidence.algebra import mobius
from incidence.errors import IncidenceError, NotADerivation, NotInvertible, NotTransitive
from incidence.operators import (
    check_derivation_form,
    check_jordan_form,
    is_derivation,
    is_jordan_derivation,
)
from incidence.poset import parse_preorder
from incidence.scalar import ring_from_string
from incidence.transitive import cocycle_violations, find_witness

PROPERTY_ERRORS = (NotADerivation, NotInvertible, NotTransitive)

VERBS = ("der-basis", "jordan-basis", "check", "decompose", "transitive", "cohomology",
         "mobius", "verify")


class UsageError(Exception):
    pass


def render_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            val = obj[key]
            if isinstance(val, (dict, list)) and val:
                lines.append(f"{pad}{key}:")
                lines.append(render_text(val, indent + 1))
            else:
                lines.append(f"{pad}{key:<24} {_atom(val)}")
    elif isinstance(obj, list):
        for k, val in enumerate(obj):
            if isinstance(val, (dict, list)):
                lines.append(f"{pad}- [{k}]")
                lines.append(render_text(val, indent + 1))
            else:
                lines.append(f"{pad}- {_atom(val)}")
    else:
        lines.append(pad + _atom(obj))
    return "\n".join(lines)


def _atom(val) -> str:
    if val is None:
        return "none"
    if isinstance(val, bool):
        return "true" if val else "false"
    if isinstance(val, (dict, list)):
        return "{}" if isinstance(val, dict) else "[]"
    return str(val)


def _emit(obj, fmt: str, out):
    if fmt == "json":
        out.write(records.dumps(obj))
    else:
        out.write(render_text(obj) + "\n")


def _load_poset(path):
    if not path:
        raise UsageError("--poset is required")
    with open(path) as fh:
        return parse_preorder(fh.read())


def _need(path, flag):
    if not path:
        raise UsageError(f"{flag} is required for this verb")
    return records.load_json(path)


def _check_report(P, R, D) -> tuple[dict, int]:
    der = is_derivation(D)
    form = check_derivation_form(D)
    jform = check_jordan_form(D)
    report = {
        "is_derivation": der,
        "is_jordan": is_jordan_derivation(D),
        "conforms_derivation_form": form.conforms,
        "conforms_jordan_form": jform.conforms,
        "jordan_form_advisory": jform.advisory,
        "violations": [{"kind": v.kind, "at": list(v.indices), "message": v.message}
                       for v in form.violations],
        "back_coefficients": [{"ij": list(s), "xy": list(t), "c": R.format(c)}
                              for s, t, c in jform.back_coefficients],
        "inner_witness": None,
    }
    if der:
        g = spaces.is_inner(D)
        report["inner_witness"] = None if g is None else records.element_record(g)
    return report, 0 if der else 1


def dispatch(args) -> tuple[object, int]:
    if args.verb == "verify":
        from incidence.acceptance import run_all

        lines = []
        results = run_all(report=lines.append)
        ok = all(r.passed for r in results)
        if args.format == "json":
            obj = [{"criterion": r.number, "name": r.name, "passed": r.passed,
                    "detail": r.detail, "failures": r.failures} for r in results]
            return obj, 0 if ok else 1
        return "\n".join(lines), 0 if ok else 1

    P = _load_poset(args.poset)
    if not args.ring:
        raise UsageError("--ring is required")
    R = ring_from_string(args.ring)

    if args.verb in ("der-basis", "jordan-basis"):
        if args.verb == "der-basis":
            rec = records.space_record(spaces.derivation_space(P, R), "derivation")
        else:
            rec = records.space_record(spaces.jordan_space(P, R), "jordan")
            rec["comparison"] = spaces.comparison_report(P, R)
        return rec, 0

    if args.verb == "check":
        D = records.operator_from_record(_need(args.operator, "--operator"), P, R)
        return _check_report(P, R, D)

    if args.verb == "decompose":
        D = records.operator_from_record(_need(args.operator, "--operator"), P, R)
        dec = spaces.decompose(D)
        return {"g": records.element_record(dec.g), "f": records.map_record(dec.f)}, 0

    if args.verb == "transitive":
        f = records.map_from_record(_need(args.map, "--map"), P, R)
        bad = cocycle_violations(f)
        report = {"is_transitive": not bad, "violations": [list(t) for t in bad],
                  "trivial_witness": None, "obstruction": None}
        if not bad:
            sigma, pair = find_witness(f)
            if sigma is not None:
                report["trivial_witness"] = records.sigma_record(sigma)
            else:
                report["obstruction"] = list(pair)
        return report, 0 if not bad else 1

    if args.verb == "cohomology":
        trans = spaces.transitive_space(P, R).rank
        triv = spaces.trivial_space(P, R).rank
        report = {
            records.HASH_KEY: P.content_hash(),
            "ring": str(R),
            "basis_size": P.basis_size,
            "center": spaces.center(P, R).rank,
            "inner": spaces.inner_space(P, R).dim,
            "transitive": trans,
            "trivial": triv,
            "cohomology_rank": trans - triv,
            "derivation": spaces.derivation_space(P, R).dim,
        }
        return report, 0

    if args.verb == "mobius":
        return records.element_record(mobius(P, R)), 0

    raise UsageError(f"unknown verb {args.verb!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="incidence", description="Derivations of incidence algebras.")
    ap.add_argument("verb", choices=VERBS)
    ap.add_argument("--poset", help="preorder DSL file")
    ap.add_argument("--ring", help="Z, Q, F<p> or Z<n>")
    ap.add_argument("--operator", help="operator record (JSON)")
    ap.add_argument("--map", help="pair-map record (JSON)")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        obj, code = dispatch(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except PROPERTY_ERRORS as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, args.format, out)
        return 1
    except (IncidenceError, OSError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, args.format, out)
        return 2
    if isinstance(obj, str):
        out.write(obj + "\n")
    else:
        _emit(obj, args.format, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
