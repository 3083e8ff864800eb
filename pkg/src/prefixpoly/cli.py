"""Command-line front end.

Every numeric result is printed as an exact rational "p/q" (integers drop
the denominator); only the Monte Carlo subcommand reports floats, clearly
labeled.  Exit codes: 0 success, 1 verification failure, 2 usage or domain
error, 3 resource guard tripped.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import lattice, parking, posets, probability, treefan, verification, volume
from .config import load_config
from .errors import ResourceLimitError
from .exactmath import poly_eval

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _fractions(text: str) -> list:
    return [Fraction(part) for part in text.split(",") if part != ""]


def _ints(text: str) -> list:
    return [int(part) for part in text.split(",") if part != ""]


def _print_value(value) -> None:
    print(value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prefixpoly",
        description="Exact volumes, lattice counts, subdivisions, and band "
        "probabilities of the prefix-sum polytope.",
    )
    parser.add_argument("--config", help="path to a key=value config file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("volume", help="volume polynomial V_n, optionally evaluated")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eval", dest="eval_point", help="comma-separated rationals x1,..,xn")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("lattice", help="lattice point count of the polytope")
    p.add_argument("--x", required=True, help="comma-separated integers")
    p.add_argument("--z", help="lower bounds for the two-sided polytope")

    p = sub.add_parser("ehrhart", help="Ehrhart polynomial for x = (a, b, ..., b)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--r", type=int, help="evaluate at this dilation instead")

    p = sub.add_parser("parking", help="count of x-parking sequences")
    p.add_argument("--x", required=True)

    p = sub.add_parser("poset-section", help="lattice points of an order-cone section")
    p.add_argument("--poset", required=True, help="JSON file {size, covers: [[i,j],..]}")
    p.add_argument("--chain", required=True, help="comma-separated chain, ending at the top")
    p.add_argument("--x", help="comma-separated integer increments along the chain")
    p.add_argument("--volume", action="store_true", help="print the section volume polynomial")

    p = sub.add_parser("tree", help="plane binary tree utilities")
    tree_sub = p.add_subparsers(dest="tree_command", required=True)
    q = tree_sub.add_parser("enumerate")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--json", action="store_true")
    q = tree_sub.add_parser("k-of")
    q.add_argument("--tree", required=True, help="balanced-parenthesis shape")
    q = tree_sub.add_parser("of-k")
    q.add_argument("--k", required=True, help="comma-separated ballot composition")
    q = tree_sub.add_parser("locate")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--point", required=True, help="comma-separated rationals y2,..,yn")
    q = tree_sub.add_parser("triangulate")
    q.add_argument("--tree", help="balanced-parenthesis shape")
    q.add_argument("--k", help="comma-separated ballot composition")

    p = sub.add_parser("subdivide", help="tree-indexed chamber geometry of the polytope")
    p.add_argument("--x", required=True, help="comma-separated rationals")
    p.add_argument("--json", dest="json_path", nargs="?", const="-", default=None)
    p.add_argument("--svg", dest="svg_path", help="write an SVG drawing (n = 2)")
    p.add_argument("--obj", dest="obj_path", help="write an OBJ mesh (n = 3)")

    p = sub.add_parser("prob", help="order-statistic band probabilities")
    prob_sub = p.add_subparsers(dest="prob_command", required=True)
    q = prob_sub.add_parser("band")
    q.add_argument("--r", help="lower band, comma-separated rationals")
    q.add_argument("--s", help="upper band, comma-separated rationals")
    q = prob_sub.add_parser("daniels")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--p", required=True)
    q = prob_sub.add_parser("pyke")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--b", required=True)
    q.add_argument("--x", required=True)
    q = prob_sub.add_parser("mc")
    q.add_argument("--r")
    q.add_argument("--s")
    q.add_argument("--trials", type=int)
    q.add_argument("--seed", type=int, default=1)

    p = sub.add_parser("verify", help="run the acceptance suites")
    p.add_argument("--suite", default="all", choices=verification.SUITES)
    p.add_argument("--seed", type=int)

    return parser


# ----------------------------------------------------------------------
# Geometry emission


def _chamber_payload(spec) -> list:
    payload = []
    for entry in treefan.subdivision_chambers(spec):
        payload.append(
            {
                "tree": entry["tree"].to_parens(),
                "k": list(entry["k"]),
                "inequalities": [
                    {"lo": q.lo, "hi": q.hi, "sense": ">=0" if q.sign > 0 else "<=0"}
                    for q in entry["inequalities"]
                ],
                "volume": str(entry["volume"]),
                "vertices": [[str(c) for c in v] for v in entry["vertices"]],
            }
        )
    return payload


def _ordered_polygon(vertices):
    cx = sum(float(v[0]) for v in vertices) / len(vertices)
    cy = sum(float(v[1]) for v in vertices) / len(vertices)
    return sorted(
        vertices, key=lambda v: math.atan2(float(v[1]) - cy, float(v[0]) - cx)
    )


def write_svg(spec, path: str) -> None:
    """Draw the two-chamber subdivision of the planar polytope."""
    spec = volume.as_spec(spec)
    if spec.n != 2:
        raise ValueError("SVG output is for n = 2")
    scale = 160.0 / max(1.0, float(spec.u[-1]))
    width = float(spec.u[0]) * scale + 40
    height = float(spec.u[1]) * scale + 40

    def pt(v):
        return f"{20 + float(v[0]) * scale:.2f},{height - 20 - float(v[1]) * scale:.2f}"

    fills = ["#9ecae1", "#fdae6b", "#a1d99b", "#bcbddc", "#fc9272"]
    rows = ['<?xml version="1.0" encoding="UTF-8"?>']
    rows.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}">'
    )
    for idx, entry in enumerate(treefan.subdivision_chambers(spec)):
        if not entry["vertices"]:
            continue
        points = " ".join(pt(v) for v in _ordered_polygon(entry["vertices"]))
        fill = fills[idx % len(fills)]
        rows.append(
            f'<polygon points="{points}" fill="{fill}" stroke="#333333" stroke-width="1">'
            f"<title>k = {list(entry['k'])}, volume {entry['volume']}</title></polygon>"
        )
    rows.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(rows) + "\n")


def _chamber_faces(vertices, spec, inequalities):
    """Group the chamber's vertices into its 2-faces for mesh output."""
    n = spec.n
    planes = []
    for i in range(n):
        row = [Fraction(0)] * n
        row[i] = Fraction(1)
        planes.append((row, Fraction(0)))
    for i in range(n):
        planes.append(([Fraction(1)] * (i + 1) + [Fraction(0)] * (n - i - 1), spec.u[i]))
    for q in inequalities:
        row = [Fraction(0)] * n
        bound = Fraction(0)
        for idx in range(q.lo, q.hi + 1):
            row[idx - 1] = Fraction(q.sign)
            bound += q.sign * spec.x[idx - 1]
        planes.append((row, bound))
    faces = []
    for row, bound in planes:
        members = [
            v for v in vertices if sum(a * c for a, c in zip(row, v)) == bound
        ]
        if len(members) >= 3:
            faces.append(members)
    return faces


def write_obj(spec, path: str) -> None:
    """Write the three-dimensional subdivision as an OBJ mesh, one group
    of polygon faces per chamber."""
    spec = volume.as_spec(spec)
    if spec.n != 3:
        raise ValueError("OBJ output is for n = 3")
    lines = ["# chamber subdivision of the prefix-sum polytope"]
    index = {}
    vertex_lines = []

    def vid(v):
        if v not in index:
            index[v] = len(index) + 1
            vertex_lines.append(
                f"v {float(v[0]):.6f} {float(v[1]):.6f} {float(v[2]):.6f}"
            )
        return index[v]

    groups = []
    for entry in treefan.subdivision_chambers(spec):
        vertices = entry["vertices"]
        if not vertices:
            continue
        name = "chamber_k_" + "_".join(str(t) for t in entry["k"])
        face_lines = [f"g {name}"]
        for face in _chamber_faces(vertices, spec, entry["inequalities"]):
            ordered = _order_face_cycle(face)
            face_lines.append("f " + " ".join(str(vid(v)) for v in ordered))
        groups.append("\n".join(face_lines))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines + vertex_lines + groups) + "\n")


def _order_face_cycle(face):
    import itertools

    pts = [tuple(float(c) for c in v) for v in face]
    cx = [sum(p[i] for p in pts) / len(pts) for i in range(3)]
    normal = None
    for p, q in itertools.combinations(pts, 2):
        a = [p[i] - cx[i] for i in range(3)]
        b = [q[i] - cx[i] for i in range(3)]
        cross = (
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        )
        if any(abs(c) > 1e-9 for c in cross):
            normal = cross
            break
    if normal is None:
        return face
    axis = max(range(3), key=lambda i: abs(normal[i]))
    u_axis, v_axis = [i for i in range(3) if i != axis]

    def angle(v):
        p = tuple(float(c) for c in v)
        return math.atan2(p[v_axis] - cx[v_axis], p[u_axis] - cx[u_axis])

    return sorted(face, key=angle)


# ----------------------------------------------------------------------
# Subcommand handlers


def _cmd_volume(args) -> int:
    poly = volume.volume_poly(args.n)
    if args.eval_point:
        point = _fractions(args.eval_point)
        _print_value(poly_eval(poly, point))
        return EXIT_OK
    if args.json:
        print(json.dumps(poly.to_json_dict()))
    else:
        print(poly.to_text())
    return EXIT_OK


def _cmd_lattice(args) -> int:
    x = _ints(args.x)
    if args.z:
        spec = lattice.TwoSidedSpec(_ints(args.z), x)
        _print_value(lattice.two_sided_count(spec))
    else:
        _print_value(lattice.count_points(volume.PolytopeSpec(x)))
    return EXIT_OK


def _cmd_ehrhart(args) -> int:
    poly = lattice.ehrhart_ab(args.n, args.a, args.b)
    if args.r is not None:
        _print_value(poly.evaluate([args.r]))
    else:
        print(poly.to_text(varnames=["r"]))
    return EXIT_OK


def _cmd_parking(args) -> int:
    _print_value(parking.count_x_parking(volume.PolytopeSpec(_ints(args.x))))
    return EXIT_OK


def _cmd_poset_section(args) -> int:
    with open(args.poset, encoding="utf-8") as fh:
        poset = posets.FinitePoset.from_json_dict(json.load(fh))
    if not poset.has_top():
        poset = poset.with_adjoined_top()
    chain = posets.MarkedChain(poset, _ints(args.chain))
    if args.volume:
        print(posets.section_volume(poset, chain).to_text())
        return EXIT_OK
    if not args.x:
        raise ValueError("--x is required unless --volume is given")
    _print_value(posets.section_count(poset, chain, _ints(args.x)))
    return EXIT_OK


def _parse_tree_arg(args) -> treefan.PlaneBinaryTree:
    if getattr(args, "tree", None):
        return treefan.PlaneBinaryTree.from_parens(args.tree)
    if getattr(args, "k", None):
        return treefan.tree_of_k(_ints(args.k))
    raise ValueError("give the tree as --tree parens or --k composition")


def _cmd_tree(args) -> int:
    if args.tree_command == "enumerate":
        trees = treefan.enumerate_trees(args.n)
        if args.json:
            print(
                json.dumps(
                    [
                        {"tree": t.to_parens(), "k": list(treefan.k_of_tree(t).parts)}
                        for t in trees
                    ]
                )
            )
        else:
            for t in trees:
                k = ",".join(str(v) for v in treefan.k_of_tree(t).parts)
                print(f"{t.to_parens()}  k={k}")
    elif args.tree_command == "k-of":
        tree = treefan.PlaneBinaryTree.from_parens(args.tree)
        print(",".join(str(v) for v in treefan.k_of_tree(tree).parts))
    elif args.tree_command == "of-k":
        print(treefan.tree_of_k(_ints(args.k)).to_parens())
    elif args.tree_command == "locate":
        located = treefan.locate_in_fan(_fractions(args.point), args.n)
        print("boundary" if located is None else located.to_parens())
    elif args.tree_command == "triangulate":
        tree = _parse_tree_arg(args)
        dec = treefan.tree_triangulation(tree)
        print(json.dumps({"n_gon": dec.n_gon, "diagonals": sorted(map(list, dec.diagonals))}))
    return EXIT_OK


def _cmd_subdivide(args) -> int:
    spec = volume.PolytopeSpec(_fractions(args.x))
    emitted = False
    if args.svg_path:
        write_svg(spec, args.svg_path)
        emitted = True
    if args.obj_path:
        write_obj(spec, args.obj_path)
        emitted = True
    if args.json_path or not emitted:
        payload = json.dumps({"x": [str(v) for v in spec.x], "chambers": _chamber_payload(spec)})
        if args.json_path and args.json_path != "-":
            with open(args.json_path, "w", encoding="utf-8") as fh:
                fh.write(payload + "\n")
        else:
            print(payload)
    return EXIT_OK


def _cmd_prob(args, cfg) -> int:
    if args.prob_command == "band":
        r = _fractions(args.r) if args.r else None
        s = _fractions(args.s) if args.s else None
        if r is None and s is None:
            raise ValueError("give at least one of --r and --s")
        if r is None:
            _print_value(probability.upper_band_prob(s))
        elif s is None:
            _print_value(probability.lower_band_prob(r))
        else:
            _print_value(probability.band_prob(r, s))
    elif args.prob_command == "daniels":
        _print_value(probability.lower_band_prob(probability.daniels_band(args.n, Fraction(args.p))))
    elif args.prob_command == "pyke":
        _print_value(probability.pyke_formula(args.n, Fraction(args.b), Fraction(args.x)))
    elif args.prob_command == "mc":
        r = _fractions(args.r) if args.r else None
        s = _fractions(args.s) if args.s else None
        band = probability.BandSpec(r, s)
        trials = args.trials or cfg.mc_trials
        result = probability.mc_band(band, trials, args.seed)
        print(json.dumps(result.to_json_dict()))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.command == "volume":
            return _cmd_volume(args)
        if args.command == "lattice":
            return _cmd_lattice(args)
        if args.command == "ehrhart":
            return _cmd_ehrhart(args)
        if args.command == "parking":
            return _cmd_parking(args)
        if args.command == "poset-section":
            return _cmd_poset_section(args)
        if args.command == "tree":
            return _cmd_tree(args)
        if args.command == "subdivide":
            return _cmd_subdivide(args)
        if args.command == "prob":
            return _cmd_prob(args, cfg)
        if args.command == "verify":
            seed = args.seed if args.seed is not None else cfg.verify_seed
            ok = verification.run_suite(args.suite, seed)
            print("all criteria passed" if ok else "FAILURES detected")
            return EXIT_OK if ok else EXIT_FAIL
        raise ValueError(f"unhandled command {args.command}")
    except ResourceLimitError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
