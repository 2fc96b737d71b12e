"""
JSON interchange records for elements, operators, pair maps and spaces.

Every record carries the content hash of the canonical rendering of its
preorder and the ring descriptor string; readers refuse records computed
on a different preorder or ring. Scalars travel as canonical text.
"""

from __future__ import annotations

import json

from incidence.algebra import IncidenceElement
from incidence.errors import ParseError, PreorderMismatch, RingMismatch
from incidence.operators import LinearOperator
from incidence.poset import Preorder
from incidence.scalar import Ring
from incidence.transitive import PairFunction, SigmaWitness

HASH_KEY = "poset-hash"


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _header(P: Preorder, R: Ring) -> dict:
    return {HASH_KEY: P.content_hash(), "ring": str(R)}


def _check_header(rec: dict, P: Preorder, R: Ring):
    if not isinstance(rec, dict):
        raise ParseError("record must be a JSON object")
    if rec.get(HASH_KEY) != P.content_hash():
        raise PreorderMismatch("record was computed on a different preorder")
    if rec.get("ring") != str(R):
        raise RingMismatch(f"record ring {rec.get('ring')!r} differs from {R}")


def _scalar(R: Ring, text):
    if not isinstance(text, str):
        raise ParseError(f"scalar must be text, got {text!r}")
    v = R.parse(text)
    if v == 0:
        raise ParseError("zero coefficients are not allowed in records")
    return v


def _pair(P: Preorder, pair):
    if not (isinstance(pair, list) and len(pair) == 2):
        raise ParseError(f"expected [x, y], got {pair!r}")
    return P._idx(str(pair[0])), P._idx(str(pair[1]))


def _unique(keys):
    if len(set(keys)) != len(keys):
        raise ParseError("duplicate entries in record")


# -- elements -----------------------------------------------------------------


def element_record(f: IncidenceElement) -> dict:
    rec = _header(f.preorder, f.ring)
    rec["entries"] = [{"x": x, "y": y, "c": f.ring.format(v)} for x, y, v in f.entries()]
    return rec


def element_from_record(rec: dict, P: Preorder, R: Ring) -> IncidenceElement:
    _check_header(rec, P, R)
    try:
        items = [(_pair(P, [e["x"], e["y"]]), _scalar(R, e["c"])) for e in rec["entries"]]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed element record: {exc}") from None
    _unique([k for k, _ in items])
    return IncidenceElement(P, R, dict(items))


# -- operators ----------------------------------------------------------------


def operator_record(D: LinearOperator) -> dict:
    rec = _header(D.preorder, D.ring)
    rec["entries"] = [
        {"ij": list(s), "xy": list(t), "c": D.ring.format(v)} for s, t, v in D.entries()
    ]
    return rec


def operator_from_record(rec: dict, P: Preorder, R: Ring) -> LinearOperator:
    _check_header(rec, P, R)
    try:
        items = [
            ((_pair(P, e["ij"]), _pair(P, e["xy"])), _scalar(R, e["c"])) for e in rec["entries"]
        ]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed operator record: {exc}") from None
    _unique([k for k, _ in items])
    return LinearOperator(P, R, dict(items))


# -- pair maps ----------------------------------------------------------------


def map_record(f: PairFunction) -> dict:
    rec = _header(f.preorder, f.ring)
    rec["values"] = [{"x": x, "y": y, "c": f.ring.format(v)} for x, y, v in f.entries()]
    return rec


def map_from_record(rec: dict, P: Preorder, R: Ring) -> PairFunction:
    _check_header(rec, P, R)
    try:
        items = [(_pair(P, [e["x"], e["y"]]), _scalar(R, e["c"])) for e in rec["values"]]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed map record: {exc}") from None
    _unique([k for k, _ in items])
    return PairFunction(P, R, dict(items))


def sigma_record(sigma: SigmaWitness) -> dict:
    return {x: sigma.ring.format(v) for x, v in sigma.as_dict().items()}


# -- spaces -------------------------------------------------------------------


def space_record(space, kind: str) -> dict:
    rec = _header(space.preorder, space.ring)
    rec["kind"] = kind
    rec["rank"] = space.dim
    rec["generators"] = [operator_record(D) for D in space.generators]
    return rec


def load_json(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None
