"""Command-line interface.

Commands read JSON documents from stdin (or --in FILE) and write JSON to
stdout, so they compose in pipelines, e.g.:

    schurring witness p2 | schurring analyze separable --self

Exit codes: 0 success, 1 negative verdict (non-schurian / non-normal /
non-separable), 2 input or usage error, 3 bound exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import analysis, construct, enumeration, iso, jsonio
from .errors import BoundExceeded, SRingError
from .groups import (GroupSpec, generated_subgroup, hom_from_generator_images,
                     quotient_section, subgroup_from_indices)
from .jsonio import SchemaError
from .sring import radical, structure_constants, induced_sring, group_ring

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_BOUND = 3


def _open_in(args):
    if getattr(args, "infile", None) and args.infile != "-":
        return open(args.infile)
    return sys.stdin


def _emit(doc):
    json.dump(doc, sys.stdout, separators=(",", ":"))
    sys.stdout.write("\n")


def _load_doc(args):
    with _open_in(args) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as e:
            raise SchemaError(f"invalid JSON: {e}") from None


def _subgroup_from_doc(G, doc, where):
    gens = jsonio.elements_from_list(G, doc, where)
    return generated_subgroup(G, [G.residues_of(i) for i in gens])


# -- command handlers ---------------------------------------------------------

def cmd_group_info(args):
    G = jsonio.group_from_dict(_load_doc(args))
    from .groups import all_subgroups
    _emit({"factors": list(G.factors), "order": G.order,
           "exponent": G.exponent,
           "subgroups": len(all_subgroups(G, bound=args.bound))})
    return EXIT_OK


def cmd_sring_validate(args):
    A = jsonio.read_sring(_open_in(args))
    _emit({"valid": True, "rank": A.rank,
           "sizes": sorted(A.class_sizes())})
    return EXIT_OK


def cmd_sring_constants(args):
    A = jsonio.read_sring(_open_in(args))
    t = structure_constants(A)
    _emit({"rank": A.rank, "tensor": t.tolist()})
    return EXIT_OK


def cmd_sring_induce(args):
    doc = _load_doc(args)
    A = jsonio.sring_from_dict(doc.get("ring", doc))
    G = A.group
    U = _subgroup_from_doc(G, doc["upper"], "upper")
    L = _subgroup_from_doc(G, doc["lower"], "lower")
    S = quotient_section(G, U, L)
    jsonio.write_sring(sys.stdout, induced_sring(A, S))
    return EXIT_OK


def cmd_sring_radical(args):
    doc = _load_doc(args)
    G = jsonio.group_from_dict(doc["group"])
    idx = jsonio.elements_from_list(G, doc["set"], "set")
    H = radical(G, idx)
    _emit({"order": H.order,
           "members": [list(G.residues_of(x)) for x in H.members]})
    return EXIT_OK


def cmd_build(args):
    doc = _load_doc(args)
    kind = args.kind
    if kind == "cyc":
        G = jsonio.group_from_dict(doc["group"])
        perms = []
        for i, images in enumerate(doc["automorphisms"]):
            f = hom_from_generator_images(
                G, [tuple(v) for v in images])
            if f is None:
                raise SchemaError(
                    f"automorphisms[{i}]: not an automorphism of the group")
            perms.append(f.as_array())
        jsonio.write_sring(sys.stdout, construct.cyclotomic(G, perms))
    elif kind == "orbit":
        G = jsonio.group_from_dict(doc["group"])
        perms = [jsonio.perm_from_list(p, G.order, f"perms[{i}]")
                 for i, p in enumerate(doc["perms"])]
        jsonio.write_sring(sys.stdout, construct.orbit_sring(G, perms))
    elif kind == "tensor":
        A1 = jsonio.sring_from_dict(doc["left"])
        A2 = jsonio.sring_from_dict(doc["right"])
        jsonio.write_sring(sys.stdout, construct.tensor(A1, A2))
    elif kind == "wreath":
        G = jsonio.group_from_dict(doc["group"])
        L = _subgroup_from_doc(G, doc["subgroup"], "subgroup")
        A_L = jsonio.sring_from_dict(doc["inner"])
        A_Q = jsonio.sring_from_dict(doc["quotient"])
        jsonio.write_sring(sys.stdout, construct.wreath(A_L, A_Q, G, L))
    elif kind == "swreath":
        G = jsonio.group_from_dict(doc["group"])
        U = _subgroup_from_doc(G, doc["upper_subgroup"], "upper_subgroup")
        L = _subgroup_from_doc(G, doc["lower_subgroup"], "lower_subgroup")
        S = quotient_section(G, U, L)
        A_U = jsonio.sring_from_dict(doc["upper"])
        A_Q = jsonio.sring_from_dict(doc["quotient"])
        jsonio.write_sring(sys.stdout, construct.s_wreath(A_U, A_Q, S))
    elif kind == "fusion":
        A = jsonio.sring_from_dict(doc["ring"])
        maps = [iso.AlgMap(A, A, jsonio.class_map_from_list(
                    m, A.rank, f"maps[{i}]"))
                for i, m in enumerate(doc["maps"])]
        jsonio.write_sring(sys.stdout, construct.fusion(A, maps))
    elif kind == "lift":
        B = jsonio.sring_from_dict(doc["ring"])
        G = jsonio.group_from_dict(doc["group"])
        H = _subgroup_from_doc(G, doc["subgroup"], "subgroup")
        phi = iso.AlgMap(B, B, jsonio.class_map_from_list(
            doc["map"], B.rank, "map"))
        A, psi = construct.nonsep_lift(B, phi, G, H)
        _emit(jsonio.sring_to_dict(A, psi=jsonio.alg_map_to_list(psi)))
    return EXIT_OK


def cmd_iso(args):
    if args.kind == "between":
        doc = _load_doc(args)
        A = jsonio.sring_from_dict(doc["source"])
        B = jsonio.sring_from_dict(doc["target"])
        witness, count = iso.color_isomorphisms(A, B, bound=args.bound)
        _emit({"witness": None if witness is None
               else jsonio.perm_to_list(witness), "count": count})
        return EXIT_OK if count else EXIT_NEGATIVE
    A = jsonio.read_sring(_open_in(args))
    if args.kind == "aut":
        g = iso.automorphisms(A, bound=args.bound)
        _emit({"order": g.order,
               "generators": [jsonio.perm_to_list(p) for p in g.generators]})
    elif args.kind == "autalg":
        maps = iso.algebraic_automorphisms(A)
        _emit({"count": len(maps),
               "maps": [jsonio.alg_map_to_list(m) for m in maps]})
    elif args.kind == "induced":
        class_map = jsonio.class_map_from_list(
            json.loads(args.map), A.rank, "--map")
        m = iso.AlgMap(A, A, class_map)
        w = iso.is_induced(m, bound=args.bound)
        _emit({"induced": w is not None,
               "witness": None if w is None else jsonio.perm_to_list(w)})
        return EXIT_OK if w is not None else EXIT_NEGATIVE
    return EXIT_OK


def cmd_analyze(args):
    A = jsonio.read_sring(_open_in(args))
    if args.kind == "schurian":
        flag, orbits = analysis.is_schurian(A, bound=args.bound)
        _emit({"schurian": flag,
               "orbits": [[list(A.group.residues_of(x)) for x in orb]
                          for orb in orbits]})
        return EXIT_OK if flag else EXIT_NEGATIVE
    if args.kind == "normal":
        flag = analysis.is_normal(A, bound=args.bound)
        _emit({"normal": flag})
        return EXIT_OK if flag else EXIT_NEGATIVE
    if args.kind == "separable":
        if args.self_target:
            targets = [A]
            mode = "explicit"
        elif args.exhaustive:
            targets = analysis.exhaustive_targets(A)
            mode = "exhaustive"
        elif args.targets:
            with open(args.targets) as fh:
                docs = [json.loads(line) for line in fh if line.strip()]
            targets = [jsonio.sring_from_dict(d) for d in docs]
            mode = "explicit"
        else:
            raise SchemaError(
                "analyze separable needs --self, --exhaustive, or --targets")
        report = analysis.separability_verdict(
            A, targets, targets_mode=mode, bound=args.bound)
        _emit(jsonio.report_to_dict(report))
        return EXIT_OK if report.separable else EXIT_NEGATIVE
    return EXIT_OK


def cmd_enum(args):
    if args.kind == "srings":
        G = _enum_group(args)
        for A in enumeration.enumerate_srings(G, bound=args.enum_bound):
            _emit(jsonio.sring_to_dict(A))
        return EXIT_OK
    if args.kind == "table1":
        G = _enum_group(args, default=[3, 3, 3])
        rings = enumeration.enumerate_srings(G, bound=args.enum_bound)
        reps = enumeration.up_to_cayley(rings, G)
        rows = enumeration.table1_report(reps, bound=args.bound)
        w = csv.writer(sys.stdout)
        w.writerow(["name", "rank", "sizes", "schurian", "aut_order",
                    "iso_over_aut", "aut_alg_order"])
        for r in rows:
            sizes = " ".join(str(s) for s in r["sizes"])
            w.writerow([r["name"], r["rank"], sizes,
                        int(r["schurian"]), r["aut_order"],
                        r["iso_over_aut"], r["aut_alg_order"]])
        return EXIT_OK
    return EXIT_OK


def _enum_group(args, default=None):
    if args.factors:
        return GroupSpec(json.loads(args.factors))
    if default is not None and sys.stdin.isatty():
        return GroupSpec(default)
    try:
        return jsonio.group_from_dict(_load_doc(args))
    except SchemaError:
        if default is not None:
            return GroupSpec(default)
        raise


def cmd_witness(args):
    if args.which == "p2":
        A, phi = construct.witness_p2()
    else:
        A, phi = construct.witness_p3()
    _emit(jsonio.sring_to_dict(A, phi=jsonio.alg_map_to_list(phi)))
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser():
    top = argparse.ArgumentParser(
        prog="schurring",
        description="S-rings over finite abelian groups: construction, "
                    "isomorphisms, schurity, separability, enumeration.")
    top.add_argument("--bound", type=int, default=100,
                     help="degree bound for search engines (default 100)")
    top.add_argument("--enum-bound", type=int, default=32,
                     help="order bound for enumeration (default 32)")
    top.add_argument("--workers", type=int, default=1,
                     help="accepted for compatibility; engines are "
                          "sequential and output is identical for any value")
    top.add_argument("--in", dest="infile", default="-",
                     help="input file (default: stdin)")
    sub = top.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group").add_subparsers(dest="kind", required=True)
    g.add_parser("info").set_defaults(func=cmd_group_info)

    s = sub.add_parser("sring").add_subparsers(dest="kind", required=True)
    s.add_parser("validate").set_defaults(func=cmd_sring_validate)
    s.add_parser("constants").set_defaults(func=cmd_sring_constants)
    s.add_parser("induce").set_defaults(func=cmd_sring_induce)
    s.add_parser("radical").set_defaults(func=cmd_sring_radical)

    b = sub.add_parser("build")
    b.add_argument("kind", choices=["cyc", "orbit", "tensor", "wreath",
                                    "swreath", "fusion", "lift"])
    b.set_defaults(func=cmd_build)

    i = sub.add_parser("iso")
    i.add_argument("kind", choices=["aut", "autalg", "induced", "between"])
    i.add_argument("--map", help="class map as a JSON array (iso induced)")
    i.set_defaults(func=cmd_iso)

    a = sub.add_parser("analyze")
    a.add_argument("kind", choices=["schurian", "normal", "separable"])
    a.add_argument("--self", dest="self_target", action="store_true",
                   help="separability against the input ring itself")
    a.add_argument("--exhaustive", action="store_true",
                   help="targets = all S-rings over all abelian groups of "
                        "the same order")
    a.add_argument("--targets", help="JSON-lines file of target rings")
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("enum")
    e.add_argument("kind", choices=["srings", "table1"])
    e.add_argument("--factors", help="group as a JSON array, e.g. [3,3,3]")
    e.set_defaults(func=cmd_enum)

    w = sub.add_parser("witness")
    w.add_argument("which", choices=["p2", "p3"])
    w.set_defaults(func=cmd_witness)
    return top


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BoundExceeded as e:
        print(json.dumps({"error": "bound exceeded", "detail": str(e)}),
              file=sys.stderr)
        return EXIT_BOUND
    except (SchemaError, SRingError, KeyError, ValueError) as e:
        kind = type(e).__name__
        detail = str(e) if not isinstance(e, KeyError) else \
            f"missing key {e}"
        print(json.dumps({"error": kind, "detail": detail}), file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
