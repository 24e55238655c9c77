"""Command-line front end.

Subcommands: genus, theta, curve, intersect, tritangents, lift,
real-counts, emch-census, real-search.  All results go to standard
output, diagnostics to standard error; exit code 0 on success, 1 on a
domain error, 2 on usage errors.  Output is machine-parseable
`name: value` lines and stays byte-identical for identical inputs;
TRITROP_THREADS caps worker threads where a subcommand can use them.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from .exceptions import TritropError
from .formats import parse_graph, parse_polynomial
from .intersection import stable_intersection, tangencies
from .metric_graph import Divisor
from .plane_curve import curve_from_polynomial, degree_profile, vadd, smul
from .real_counts import (
    RealTopologyType,
    emch_census,
    lifting_multiplicity,
    odd_even_counts,
    real_theta_counts,
)
from .svg import Scene, render_svg, scene_of_curve
from .theta import all_theta_characteristics


def worker_count() -> int:
    """Thread budget from TRITROP_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("TRITROP_THREADS", "1")))
    except ValueError:
        return 1


def _div_str(D: Divisor) -> str:
    return " ".join(f"{p!r}:{c}" for p, c in D.items()) or "0"


def _cmd_genus(args) -> int:
    G = parse_graph(Path(args.graph).read_text())
    print(f"genus: {G.genus}")
    return 0


def _cmd_theta(args) -> int:
    G = parse_graph(Path(args.graph).read_text())
    thetas = all_theta_characteristics(G)
    print(f"genus: {G.genus}")
    print(f"count: {len(thetas)}")
    for k, th in enumerate(thetas):
        kind = "effective" if th.effective else "non-effective"
        print(f"theta {k}: {kind} {_div_str(th.divisor)}")
    return 0


def _print_curve(C) -> None:
    prof = degree_profile(C)
    if prof.kind == "degree":
        print(f"profile: degree {prof.d}")
    else:
        print(f"profile: bidegree {prof.d1} {prof.d2}")
    print(f"genus: {C.genus}")
    for v in C.vertices:
        print(f"vertex {v[0]} {v[1]}")
    for e in sorted(C.edges, key=lambda e: (e.kind, e.p, e.d)):
        if e.kind == "segment":
            print(
                f"segment {e.p[0]} {e.p[1]} {e.d[0]} {e.d[1]} {e.length} {e.weight}"
            )
        else:
            print(f"ray {e.p[0]} {e.p[1]} {e.d[0]} {e.d[1]} {e.weight}")


def _cmd_curve(args) -> int:
    C = curve_from_polynomial(parse_polynomial(Path(args.polynomial).read_text()))
    _print_curve(C)
    if args.svg:
        Path(args.svg).write_text(render_svg(scene_of_curve(C)))
        print(f"svg: {args.svg}", file=sys.stderr)
    return 0


def _cmd_intersect(args) -> int:
    C1 = curve_from_polynomial(parse_polynomial(Path(args.poly1).read_text()))
    C2 = curve_from_polynomial(parse_polynomial(Path(args.poly2).read_text()))
    D = stable_intersection(C1, C2)
    for (x, y), m in D:
        print(f"point {x} {y} {m}")
    print(f"total: {D.total()}")
    for ev in tangencies(C1, C2):
        if ev.kind == "point":
            print(f"tangency point {ev.locus[0][0]} {ev.locus[0][1]}")
        else:
            (a, b) = ev.locus
            print(f"tangency segment {a[0]} {a[1]} {b[0]} {b[1]}")
    if args.svg:
        vs = list(C1.vertices) + list(C2.vertices) + [p for p, _ in D]
        m = Fraction(1)
        bbox = (
            min(v[0] for v in vs) - m,
            max(v[0] for v in vs) + m,
            min(v[1] for v in vs) - m,
            max(v[1] for v in vs) + m,
        )
        scene = scene_of_curve(C1, bbox=bbox)
        scene_of_curve(C2, scene=scene, style="overlay")
        for p, mult in D:
            scene.add_chip(p, mult)
        Path(args.svg).write_text(render_svg(scene))
        print(f"svg: {args.svg}", file=sys.stderr)
    return 0


def _class_scene(C, cls) -> Scene:
    scene = scene_of_curve(C, margin=Fraction(2))
    scene_of_curve(cls.representatives[0].curve(), scene=scene, style="overlay")
    for p, w in cls.contacts:
        scene.add_marker(p)
        scene.add_chip(p, w)
    return scene


def _cmd_tritangents(args) -> int:
    from .tritangent import enumerate_tritangents

    C = curve_from_polynomial(parse_polynomial(Path(args.polynomial).read_text()))
    classes = enumerate_tritangents(C)
    print(f"count: {len(classes)}")
    for k, cls in enumerate(classes):
        L = cls.representatives[0]
        part = ",".join(str(w) for w in cls.partition)
        fam = "family" if cls.family else "rigid"
        print(
            f"class {k}: partition {part} {fam} reps {len(cls.representatives)}"
            f" heights {L.h10} {L.h01} {L.h11} theta {_div_str(cls.theta.divisor)}"
        )
    if args.svg_dir:
        out = Path(args.svg_dir)
        out.mkdir(parents=True, exist_ok=True)
        for k, cls in enumerate(classes):
            (out / f"class_{k:02d}.svg").write_text(
                render_svg(_class_scene(C, cls))
            )
        print(f"svg: {len(classes)} files in {args.svg_dir}", file=sys.stderr)
    return 0


def _axonometric(p):
    # rational axonometry: drop into the page along -y
    return (p[0] - Fraction(2, 5) * p[1], p[2] - Fraction(1, 5) * p[1])


def _cmd_lift(args) -> int:
    from .space_lift import lift_curve, lift_map, plane_curve_contact, tritangent_planes_of_lift

    C = curve_from_polynomial(parse_polynomial(Path(args.polynomial).read_text()))
    q = parse_polynomial(Path(args.quadric).read_text(), dims=3)
    if args.origin:
        origin = (Fraction(args.origin[0]), Fraction(args.origin[1]))
        phi = lift_map(q, origin)
    else:
        probe = lift_map(q, (Fraction(0), Fraction(0)))
        xs = [v[0] for v in C.vertices]
        ys = [v[1] for v in C.vertices]
        xlo, xhi, ylo, yhi = probe.rectangle
        origin = (
            (min(xs) + max(xs)) / 2 - (xhi - xlo) / 2,
            (min(ys) + max(ys)) / 2 - (yhi - ylo) / 2,
        )
        phi = lift_map(q, origin)
    xlo, xhi, ylo, yhi = phi.rectangle
    print(f"rectangle: {xlo} {xhi} {ylo} {yhi}")
    G = lift_curve(C, phi)
    for e in G.edges:
        head = " ".join(str(v) for v in (*e.p, *e.d))
        if e.kind == "segment":
            print(f"segment {head} {e.length} {e.weight}")
        else:
            print(f"ray {head} {e.weight}")
    if args.planes:
        pairs = tritangent_planes_of_lift(C, phi)
        for k, (cls, P) in enumerate(pairs):
            part = ",".join(str(w) for w in cls.partition)
            _, observed, total, _ = plane_curve_contact(P, G)
            obs = ",".join(str(w) for w in observed)
            print(
                f"plane {k}: vertex {P.vertex[0]} {P.vertex[1]} {P.vertex[2]}"
                f" partition {part} contact {obs} total {total}"
            )
    if args.svg:
        pts2 = [_axonometric(p) for e in G.edges for p in (e.p,)]
        m = Fraction(3)
        bbox = (
            min(p[0] for p in pts2) - m,
            max(p[0] for p in pts2) + m,
            min(p[1] for p in pts2) - m,
            max(p[1] for p in pts2) + m,
        )
        scene = Scene(bbox)
        for e in G.edges:
            if e.kind == "segment":
                q2 = vadd(
                    _axonometric(e.p), smul(e.length, _axonometric(e.d))
                )
                scene.add_segment(_axonometric(e.p), q2, e.weight)
            else:
                scene.add_ray(_axonometric(e.p), _axonometric(e.d), e.weight)
        Path(args.svg).write_text(render_svg(scene))
        print(f"svg: {args.svg}", file=sys.stderr)
    return 0


def _cmd_real_counts(args) -> int:
    odd, even = odd_even_counts(args.genus)
    print(f"odd: {odd}")
    print(f"even: {even}")
    if args.genus >= 1:
        print(f"lifting multiplicity: {lifting_multiplicity(args.genus)}")
    if args.ovals is not None:
        t = RealTopologyType(args.genus, args.ovals, args.separating)
        real_even, real_odd = real_theta_counts(t)
        print(f"real even: {real_even}")
        print(f"real odd: {real_odd}")
    return 0


def _cmd_emch_census(args) -> int:
    census = emch_census()
    for row in census.rows:
        print(f"{row.contact}: {row.count}  [{row.derivation}]")
    print(f"total: {census.total}")
    for note in census.notes:
        print(f"note: {note}")
    return 0


def _cmd_real_search(args) -> int:
    from .real_search import (
        CLUSTER_RADIUS,
        AffineSextic,
        Poly3,
        clebsch_sextic,
        emch_sextic,
        search,
    )

    if args.fixture:
        S = clebsch_sextic() if args.fixture == "clebsch" else emch_sextic()
    else:
        if not (args.q2 and args.c3):
            print("error: need --fixture or both --q2 and --c3", file=sys.stderr)
            return 2
        q2 = parse_polynomial(Path(args.q2).read_text(), dims=3)
        c3 = parse_polynomial(Path(args.c3).read_text(), dims=3)
        S = AffineSextic(
            "custom",
            Poly3.make({m: float(c) for m, c in q2.items()}),
            Poly3.make({m: float(c) for m, c in c3.items()}),
            seed_radius=args.seed_radius,
        )
    planes = search(
        S,
        seeds=args.seeds,
        rng_seed=args.rng_seed,
        symmetrize=not args.no_symmetrize,
        cluster_radius=args.cluster_radius if args.cluster_radius else CLUSTER_RADIUS,
        threads=worker_count(),
    )
    for k, p in enumerate(planes):
        n = " ".join(f"{v:.12g}" for v in p.normal)
        pts = "  ".join(
            " ".join(f"{v:.12g}" for v in q) for q in p.contacts
        )
        print(
            f"plane {k}: n {n} c {p.offset:.12g} residual {p.residual:.3g}"
            f" label {p.label} contacts {pts}"
        )
    print(f"count: {len(planes)}")
    if args.json:
        doc = {
            "name": S.name,
            "seeds": args.seeds,
            "rng_seed": args.rng_seed,
            "planes": [
                {
                    "normal": list(p.normal),
                    "offset": p.offset,
                    "contacts": [list(q) for q in p.contacts],
                    "residual": p.residual,
                    "condition": p.condition,
                    "label": p.label,
                }
                for p in planes
            ],
        }
        Path(args.json).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        print(f"json: {args.json}", file=sys.stderr)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tritrop",
        description="Exact tropical curves, theta characteristics and tritangents.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("genus", help="first Betti number of a metric graph")
    p.add_argument("graph")
    p.set_defaults(func=_cmd_genus)

    p = sub.add_parser("theta", help="all 2^g theta characteristics of a graph")
    p.add_argument("graph")
    p.set_defaults(func=_cmd_theta)

    p = sub.add_parser("curve", help="tropical curve of a polynomial")
    p.add_argument("polynomial")
    p.add_argument("--svg")
    p.set_defaults(func=_cmd_curve)

    p = sub.add_parser("intersect", help="stable intersection of two curves")
    p.add_argument("poly1")
    p.add_argument("poly2")
    p.add_argument("--svg")
    p.set_defaults(func=_cmd_intersect)

    p = sub.add_parser("tritangents", help="the 15 tritangent classes of a (3,3)-curve")
    p.add_argument("polynomial")
    p.add_argument("--svg-dir")
    p.set_defaults(func=_cmd_tritangents)

    p = sub.add_parser("lift", help="lift a (d,d)-curve onto a smooth quadric")
    p.add_argument("polynomial")
    p.add_argument("--quadric", required=True)
    p.add_argument("--origin", nargs=2, metavar=("X0", "Y0"))
    p.add_argument("--planes", action="store_true", help="also emit tritangent planes")
    p.add_argument("--svg", help="axonometric projection")
    p.set_defaults(func=_cmd_lift)

    p = sub.add_parser("real-counts", help="theta characteristic counting formulas")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--ovals", type=int)
    p.add_argument("--separating", action="store_true")
    p.set_defaults(func=_cmd_real_counts)

    p = sub.add_parser("emch-census", help="census of the 108 totally-real tritangents")
    p.set_defaults(func=_cmd_emch_census)

    p = sub.add_parser("real-search", help="Newton search for real tritangent planes")
    p.add_argument("--fixture", choices=["clebsch", "emch"])
    p.add_argument("--q2", help="quadric polynomial file (i j k h lines)")
    p.add_argument("--c3", help="cubic polynomial file")
    p.add_argument("--seed-radius", type=float, default=1.0)
    p.add_argument("--seeds", type=int, default=10_000)
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--cluster-radius", type=float)
    p.add_argument("--no-symmetrize", action="store_true")
    p.add_argument("--json")
    p.set_defaults(func=_cmd_real_search)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except TritropError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except AssertionError as e:
        print(f"error: internal check failed: {e}", file=sys.stderr)
        return 1


def app() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    app()
