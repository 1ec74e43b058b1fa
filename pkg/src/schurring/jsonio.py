"""JSON serialization for groups, S-rings, permutations, algebraic maps,
and separability reports.

Documents are plain JSON: groups as {"factors": [...]}, elements as residue
arrays, S-rings as {"version": 1, "group": ..., "classes": [[[r, ...], ...],
...]} with classes in canonical order.  Unknown top-level keys are ignored on
read, so producers may attach extras (the witness commands attach "phi").
"""

from __future__ import annotations

import json

import numpy as np

from .groups import GroupSpec
from .sring import SRing, validate_sring

SRING_VERSION = 1


class SchemaError(ValueError):
    """Malformed document; the message carries the offending location."""


def group_to_dict(G):
    return {"factors": list(G.factors)}


def group_from_dict(doc):
    if not isinstance(doc, dict) or "factors" not in doc:
        raise SchemaError("group: expected an object with a 'factors' key")
    factors = doc["factors"]
    if not isinstance(factors, list) or \
            not all(isinstance(f, int) for f in factors):
        raise SchemaError("group.factors: expected a list of integers")
    try:
        return GroupSpec(factors)
    except ValueError as e:
        raise SchemaError(f"group.factors: {e}") from None


def sring_to_dict(A, **extras):
    doc = {
        "version": SRING_VERSION,
        "group": group_to_dict(A.group),
        "classes": [[list(A.group.residues_of(x)) for x in cls]
                    for cls in A.classes],
    }
    doc.update(extras)
    return doc


def sring_from_dict(doc):
    if not isinstance(doc, dict):
        raise SchemaError("sring: expected an object")
    version = doc.get("version", SRING_VERSION)
    if version != SRING_VERSION:
        raise SchemaError(f"sring.version: expected {SRING_VERSION}, "
                          f"got {version!r}")
    if "group" not in doc or "classes" not in doc:
        raise SchemaError("sring: missing 'group' or 'classes'")
    G = group_from_dict(doc["group"])
    classes = doc["classes"]
    if not isinstance(classes, list):
        raise SchemaError("sring.classes: expected a list")
    parsed = []
    for i, cls in enumerate(classes):
        if not isinstance(cls, list) or not cls:
            raise SchemaError(f"sring.classes[{i}]: expected a nonempty list")
        out = []
        for j, elem in enumerate(cls):
            if not isinstance(elem, list):
                raise SchemaError(
                    f"sring.classes[{i}][{j}]: expected a residue array")
            try:
                out.append(G.index_of(elem))
            except ValueError as e:
                raise SchemaError(f"sring.classes[{i}][{j}]: {e}") from None
        parsed.append(out)
    return validate_sring(G, parsed)


def elements_from_list(G, doc, where="elements"):
    if not isinstance(doc, list):
        raise SchemaError(f"{where}: expected a list of residue arrays")
    out = []
    for j, elem in enumerate(doc):
        if not isinstance(elem, list):
            raise SchemaError(f"{where}[{j}]: expected a residue array")
        try:
            out.append(G.index_of(elem))
        except ValueError as e:
            raise SchemaError(f"{where}[{j}]: {e}") from None
    return out


def perm_to_list(p):
    return [int(x) for x in p]


def perm_from_list(doc, degree, where="perm"):
    if not isinstance(doc, list) or sorted(doc) != list(range(degree)):
        raise SchemaError(f"{where}: expected a permutation of 0..{degree-1}")
    return np.array(doc, dtype=np.int64)


def alg_map_to_list(m):
    return list(m.class_map)


def class_map_from_list(doc, rank, where="class map"):
    if not isinstance(doc, list) or sorted(doc) != list(range(rank)):
        raise SchemaError(f"{where}: expected a bijection of 0..{rank-1}")
    return tuple(doc)


def report_to_dict(report):
    witness = None
    if report.witness is not None:
        target, m = report.witness
        witness = {"target": sring_to_dict(target),
                   "alg_map": alg_map_to_list(m)}
    return {
        "ring": sring_to_dict(report.ring),
        "verdict": report.verdict,
        "witness": witness,
        "targets_mode": report.targets_mode,
        "counts": report.counts,
    }


def read_sring(stream):
    return sring_from_dict(_load(stream))


def write_sring(stream, A, **extras):
    json.dump(sring_to_dict(A, **extras), stream, separators=(",", ":"))
    stream.write("\n")


def _load(stream):
    try:
        return json.load(stream)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e}") from None
