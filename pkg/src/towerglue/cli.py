"""Command line interface.

Exit codes: 0 on success (or when every verdict passes), 1 for invalid
input or a failed verdict, 2 for a numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import battery
from . import catalog as ct
from . import chain_spaces as cs
from . import document as dc
from . import horizontal as hz
from . import neck_integral as ni
from . import saddle_tower as st
from . import vertical as vt
from .configuration import full_report
from .errors import InvalidInput, TowerGlueError

TOWER_FAMILIES = ("symmetric", "isosceles6", "custom")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _pair(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _complex_arg(text: str) -> complex:
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected re,im but got {text!r}") from None
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected re,im but got {text!r}")
    return complex(parts[0], parts[1])


def _emit(data, out=None):
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _finite(x):
    return float(x) if math.isfinite(x) else None


def _cut_label(graph, c) -> str:
    return "{" + ",".join(str(graph.vertex_ids[v]) for v in sorted(c.side)) + "}"


def report_data(cfg, tol) -> dict:
    """Plain-data balance report of a configuration."""
    g = cfg.graph
    rep = full_report(cfg, tol)
    cuts = cfg.all_cuts if g.n_vertices > 1 else []
    hf = hz.forces(cfg.rep.edge_vectors(), cuts) if cuts else []
    h = rep.horizontal
    data = {
        "name": cfg.name,
        "ok": rep.ok,
        "verdicts": rep.verdicts,
        "predicted_genus": rep.predicted_genus,
        "horizontal": {
            "balanced": h.balanced, "rigid": h.rigid, "max_force": h.max_force,
            "sigma_min": _finite(h.sigma_min), "sigma_max": _finite(h.sigma_max),
            "forces": {_cut_label(g, c): _pair(f) for c, f in zip(cuts, hf)},
        },
    }
    if rep.vertical is None:
        data["vertical"] = {"error": rep.vertical_error}
    else:
        v = rep.vertical
        vf = vt.forces(cfg, cfg.phases, cuts, K=v.weights) if cuts else []
        shortest = {}
        for c in cuts:
            keep = np.nonzero(cs.shortest_coeffs(c, cfg.lengths))[0]
            shortest[_cut_label(g, c)] = sorted(g.names[g.edges[e][0]] for e in keep)
        data["vertical"] = {
            "balanced": v.balanced, "rigid": v.rigid, "max_force": v.max_force,
            "determinant": v.determinant, "sigma_min": _finite(v.sigma_min),
            "sigma_max": _finite(v.sigma_max),
            "weights": {g.names[hh]: float(k) for (hh, _), k in zip(g.edges, v.weights)},
            "forces": {_cut_label(g, c): float(f) for c, f in zip(cuts, vf)},
            "shortest_edges": shortest,
        }
    return data


# -- commands -----------------------------------------------------------------

def cmd_check(args) -> int:
    doc = dc.load(args.config)
    tol = dc.tolerances(doc)["balance"] if args.tol is None else args.tol
    cfg = dc.to_configuration(doc)
    data = report_data(cfg, tol)
    _emit(data, args.report)
    if args.report:
        print(", ".join(data["verdicts"]))
    return 0 if data["ok"] else 1


def cmd_solve(args) -> int:
    doc = dc.load(args.config)
    if args.horizontal:
        rep, hist = hz.solve_balance(dc.to_representation(doc))
        for vd, p in zip(doc.graph.vertices, rep.positions):
            vd.position = (float(p.real), float(p.imag))
        print(f"balanced in {len(hist) - 1} Newton steps, residual {hist[-1]:.3g}", file=sys.stderr)
    else:
        cfg = dc.to_configuration(doc)
        if cfg.shifts is None:
            raise InvalidInput("solving for phases needs shifts or initial phases")
        phi = vt.solve_phases(cfg, cfg.shifts)
        g = cfg.graph
        doc.phases = {g.names[h]: float(p) for (h, _), p in zip(g.edges, phi)}
    text = dc.dumps(doc)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _tower(args) -> st.SaddleTower:
    if args.family == "symmetric":
        if args.n is None or args.psi is None:
            raise InvalidInput("the symmetric family needs --n and --psi")
        return st.symmetric_family(args.n, args.psi)
    if args.family == "isosceles6":
        if args.psi is None:
            raise InvalidInput("the isosceles family needs --psi")
        return st.isosceles6(args.psi)
    if not args.angles:
        raise InvalidInput("a custom tower needs --angles")
    try:
        angles = [float(a) for a in args.angles.split(",")]
    except ValueError:
        raise InvalidInput("--angles must be comma separated radians") from None
    signs = [1 if i % 2 else -1 for i in range(len(angles))]
    if args.signs:
        if set(args.signs) - {"+", "-"} or len(args.signs) != len(angles):
            raise InvalidInput("--signs must be a string of + and -, one per wing")
        signs = [1 if c == "+" else -1 for c in args.signs]
    st.check_wings(np.array(angles), np.array(signs))
    return st.SaddleTower.solve(angles, signs)


def cmd_tower(args) -> int:
    tower = _tower(args)
    d = st.analyze(tower)
    if args.mesh:
        verts, faces = st.export_mesh(tower, delta=args.delta, rings=args.rings)
        st.write_obj(args.mesh, verts, faces)
    if args.table:
        print(f"# family {tower.family}, n = {tower.n}, phase = {d.phase:.9f}")
        print(f"{'h':>2} {'theta':>12} {'sigma':>5} {'upsilon':>14} {'|mu|':>14} "
              f"{'Re mu':>14} {'Im mu':>14} {'nu':>12}")
        for h in range(tower.n):
            m = d.mu[h]
            print(f"{h:>2} {tower.angles[h]:>12.9f} {int(tower.signs[h]):>+5d} {d.upsilon[h]:>14.9f} "
                  f"{abs(m):>14.9f} {m.real:>14.9f} {m.imag:>14.9f} {d.nu[h]:>12.9f}")
        return 0
    _emit({
        "family": tower.family, "n": tower.n,
        "angles": tower.angles.tolist(), "signs": tower.signs.tolist(),
        "punctures": [_pair(p) for p in tower.punctures],
        "upsilon": d.upsilon.tolist(), "mu": [_pair(m) for m in d.mu],
        "abs_mu": np.abs(d.mu).tolist(), "nu": d.nu.tolist(), "phase": d.phase,
    })
    return 0


def cmd_classify_genus3(args) -> int:
    out = []
    for e in ct.genus3_catalog(args.t1, args.t2):
        entry = {"family": e.name, "admissible": e.admissible, "constraint": e.constraint}
        if e.report is not None:
            entry["verdicts"] = e.report.verdicts
        out.append(entry)
    types = ct.classify_two_face_graphs()
    _emit({"torus": {"T1": _pair(args.t1), "T2": _pair(args.t2)},
           "arg_T2_over_T1": ct.torus_angle(args.t1, args.t2),
           "families": out,
           "two_face_types": {"orientable": types["count"],
                              "by_vertices": {str(v): r for v, r in types["by_vertices"].items()},
                              "types": types["orientable_types"]}})
    return 0


def cmd_verify_paper(args) -> int:
    ok, results = battery.run(sys.stdout)
    passed = sum(r["passed"] for r in results)
    print(f"{passed}/{len(results)} checks passed")
    if args.json:
        _emit({"passed": ok, "checks": [{k: r[k] for k in ("name", "passed", "detail")}
                                        for r in results]}, args.json)
    return 0 if ok else 1


def cmd_neck(args) -> int:
    rows, ok = [], True
    for fam in ni.battery(args.eps1):
        lim = ni.limit_value(fam)
        gaps = ni.convergence(fam)
        shift = ni.branch_shift_error(fam, 1e-6 * complex(math.cos(0.7), math.sin(0.7)))
        good = (gaps[-1] < 1e-4 and all(b <= a + 1e-12 for a, b in zip(gaps, gaps[1:]))
                and shift < 1e-10 and abs(lim - fam.expected) < 1e-10)
        ok &= good
        rows.append({"family": fam.name, "limit": _pair(lim), "expected": _pair(fam.expected),
                     "gaps": gaps, "branch_shift_error": shift, "passed": good})
    _emit({"epsilon1": args.eps1, "t_sequence": list(ni.T_SEQUENCE), "families": rows})
    return 0 if ok else 1


EXAMPLES = {
    "meeks": lambda: ct.meeks(),
    "meeks-oblique": lambda: ct.meeks(1.0, 1.2 * complex(math.cos(1.1), math.sin(1.1))),
    "aH": lambda: ct.one_vertex(),
    "rGL": lambda: ct.one_vertex(1.0, complex(-0.5, math.sqrt(3) / 2), 2 * math.pi / 3,
                                 2 * math.pi / 3),
    "aG": lambda: ct.orthogonal_family(),
    "aI": lambda: ct.oblique_family(),
}


def cmd_example(args) -> int:
    cfg = EXAMPLES[args.name]()
    text = dc.dumps(dc.from_configuration(cfg))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="towerglue", description="Balance and rigidity of saddle tower configurations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("check", help="full balance and rigidity report of a configuration")
    s.add_argument("config")
    s.add_argument("--tol", type=float, default=None, help="force tolerance")
    s.add_argument("--report", help="write the JSON report here instead of stdout")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("solve", help="balance a configuration horizontally or solve its phases")
    s.add_argument("config")
    mode = s.add_mutually_exclusive_group(required=True)
    mode.add_argument("--horizontal", action="store_true")
    mode.add_argument("--phases", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("tower", help="Weierstrass data of a single saddle tower")
    s.add_argument("--family", choices=TOWER_FAMILIES, default="symmetric")
    s.add_argument("--n", type=int)
    s.add_argument("--psi", type=float)
    s.add_argument("--angles", help="custom wing angles, comma separated radians")
    s.add_argument("--signs", help="custom wing signs such as -+-+")
    s.add_argument("--mesh", help="write an OBJ mesh here")
    s.add_argument("--delta", type=float, default=0.05)
    s.add_argument("--rings", type=int, default=32)
    s.add_argument("--table", action="store_true", help="print a text table instead of JSON")
    s.set_defaults(func=cmd_tower)

    s = sub.add_parser("classify-genus3", help="genus three families on a given torus")
    s.add_argument("--t1", type=_complex_arg, default=complex(1, 0))
    s.add_argument("--t2", type=_complex_arg, default=complex(0, 1))
    s.set_defaults(func=cmd_classify_genus3)

    s = sub.add_parser("verify-paper", help="run the reference battery")
    s.add_argument("--json", help="also write the results as JSON")
    s.set_defaults(func=cmd_verify_paper)

    s = sub.add_parser("neck", help="neck integral battery")
    s.add_argument("--eps1", type=float, default=0.2)
    s.set_defaults(func=cmd_neck)

    s = sub.add_parser("example", help="write a built-in configuration document")
    s.add_argument("name", choices=sorted(EXAMPLES))
    s.add_argument("--out")
    s.set_defaults(func=cmd_example)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TowerGlueError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
