"""Command-line front end; JSON in, canonical JSON (or CSV) out.

Exit codes: 0 success, 1 usage/parse errors, 2 failed verification (the
witness report goes to stdout).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import certify, diophantine, jsonio, repweights, slprobe, torus, weyl
from .rootcore import RootcertError, RootSystem, Weight, build_root_system


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_vec(text: str) -> tuple[Fraction, ...]:
    return tuple(jsonio.parse_rational(part.strip()) for part in text.split(","))


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_datum(args) -> tuple[RootSystem, torus.SplitDatum]:
    if getattr(args, "datum", None):
        data = _load_json(args.datum)
        kind = data["kind"]
        system = build_root_system(kind if isinstance(kind, str) else kind["cartan"])
        if data.get("split"):
            basis = [jsonio.parse_vector(row) for row in data["split"]["basis"]]
            return system, torus.SplitDatum(system, basis)
        return system, torus.fully_split(system)
    system = build_root_system(args.kind)
    return system, torus.fully_split(system)


def _load_subspace(system: RootSystem, args) -> torus.SubtorusSubspace:
    if getattr(args, "subspace", None):
        data = _load_json(args.subspace)
        rows = data["basis"] if isinstance(data, dict) else data
    else:
        rows = [_parse_vec(part) for part in args.basis.split(";")]
    parsed = []
    for row in rows:
        if isinstance(row, (list, tuple)) and not isinstance(row[0], str):
            parsed.append([v if isinstance(v, float) else jsonio.parse_rational(v) for v in row])
        else:
            parsed.append(list(jsonio.parse_vector(row)))
    return torus.subspace(system, parsed)


def _emit(args, payload) -> None:
    text = jsonio.dumps(payload)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands -------------------------------------------------------------


def cmd_rootsys_show(args) -> int:
    system, datum = _load_datum(args)
    payload = {
        "name": system.name,
        "rank": system.rank,
        "cartan": [list(r) for r in system.cartan],
        "components": [list(i + 1 for i in c) for c in system.components],
        "component_names": list(system.component_names),
        "positive_roots": [[int(c) for c in b.coords] for b in system.positive_roots],
        "weyl_order": system.weyl_order(),
        "split_rank": datum.rank_q,
        "restricted_system": datum.qsys.name if datum.qsys else datum.qsys_error,
    }
    _emit(args, payload)
    return 0


def cmd_weyl_orbit(args) -> int:
    system, _ = _load_datum(args)
    chi = system.weight(_parse_vec(args.chi))
    orb = sorted(weyl.orbit(system, chi), key=lambda w: w.coords)
    from . import linalg

    span = linalg.rank([w.coords for w in orb])
    _emit(args, {"size": len(orb), "span_dim": span,
                 "orbit": [list(w.coords) for w in orb]})
    return 0


def cmd_weyl_dominate(args) -> int:
    system, _ = _load_datum(args)
    chi = system.weight(_parse_vec(args.chi))
    dom, w = weyl.dominate(system, chi)
    _emit(args, {"dominant": list(dom.coords), "word": [i + 1 for i in w.word],
                 "matrix": [list(row) for row in w.matrix]})
    return 0


def cmd_weyl_onestep(args) -> int:
    system, _ = _load_datum(args)
    chi = system.weight(_parse_vec(args.chi))
    t = system.torus(_parse_vec(args.t))
    beta = weyl.one_step(system, chi, t)
    if beta is weyl.ZERO:
        _emit(args, {"beta": "ZERO", "value": system.evaluate(chi, t)})
    else:
        _emit(args, {"beta": list(beta.coords),
                     "reflected_value": system.evaluate(system.reflect(chi, beta), t)})
    return 0


def cmd_torus_decompose(args) -> int:
    system, datum = _load_datum(args)
    sub = _load_subspace(system, args)
    ani, spl = torus.decompose(sub, datum)
    _emit(args, {
        "ani": None if ani is None else [list(v.coords) for v in ani.basis],
        "spl": None if spl is None else [list(v.coords) for v in spl.basis],
        "dims": {"ani": 0 if ani is None else ani.dim,
                 "spl": 0 if spl is None else spl.dim},
    })
    return 0


def cmd_torus_splitify(args) -> int:
    system, datum = _load_datum(args)
    sub = _load_subspace(system, args)
    w, image, trace = torus.make_almost_split(sub, datum)
    _emit(args, {
        "word": [i + 1 for i in w.word],
        "image_basis": [list(v.coords) for v in image.basis],
        "trace": [
            {"chi": list(st["chi"]), "beta": list(st["beta"]),
             "new_split_dim": st["new_split_dim"]}
            for st in trace
        ],
    })
    return 0


def cmd_dio_approx(args) -> int:
    xs = _parse_vec(args.x) if "/" in args.x or "." not in args.x else tuple(
        float(p) for p in args.x.split(",")
    )
    result = diophantine.dirichlet(xs, args.Q)
    _emit(args, {"q": result.q, "p": list(result.p), "Q": result.Q,
                 "errors": [e if isinstance(e, Fraction) else repr(e) for e in result.errors]})
    return 0


def cmd_rep_saturate(args) -> int:
    system, _ = _load_datum(args)
    spec = repweights.saturate(system, system.weight(_parse_vec(args.highest)))
    weights = sorted(spec.weight_set, key=lambda w: w.coords)
    _emit(args, {"size": len(weights), "weights": [list(w.coords) for w in weights]})
    return 0


def cmd_rep_dexp(args) -> int:
    system, _ = _load_datum(args)
    _emit(args, {"d": list(repweights.fundamental_expansion_constants(system))})
    return 0


def cmd_certify_build(args) -> int:
    system, datum = _load_datum(args)
    sub = _load_subspace(system, args)
    cert = certify.build_certificate(sub, datum)
    _emit(args, certify.certificate_to_dict(cert))
    return 0


def cmd_certify_verify(args) -> int:
    cert = certify.certificate_from_dict(_load_json(args.cert))
    report = certify.verify_hypotheses(cert, trials=args.trials, seed=args.seed)
    _emit(args, report)
    return 0 if report["pass"] else 2


def cmd_certify_decide(args) -> int:
    system, datum = _load_datum(args)
    sub = _load_subspace(system, args)
    report = certify.factor_decision(sub, datum)
    _emit(args, {
        "verdict": report.verdict,
        "components": list(report.component_names),
        "component_ranks": list(report.component_ranks),
        "dim_subspace": report.dim_subspace,
        "projection_dims": list(report.projection_dims),
        "conditions": list(report.conditions),
        "literal_reading_holds": report.literal_reading_holds,
    })
    return 0


def cmd_probe_run(args) -> int:
    cert = certify.certificate_from_dict(_load_json(args.cert))
    if args.x:
        mat = np.array(_load_json(args.x), dtype=float)
    else:
        mat = np.eye(args.n)
    ray = [float(v) for v in _parse_vec(args.ray)] if args.ray else None
    table = slprobe.probe_divergence(
        cert, mat, t_max=args.tmax, steps=args.steps, ray=ray
    )
    n = table["n"]
    r = len(table["weight_norms"][0])
    header = ["t"] + [f"w{i + 1}" for i in range(r)] + [f"sys{k}" for k in range(1, n)]
    lines = [",".join(header)]
    for t, wn, sy in zip(table["times"], table["weight_norms"], table["systoles"]):
        lines.append(",".join(f"{v:.12g}" for v in [t] + wn + sy))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# -- wiring -------------------------------------------------------------------


def _add_datum_args(p, need_subspace=False):
    p.add_argument("--out", help="write output to this path instead of stdout")
    p.add_argument("--datum", help="root-datum JSON file ({kind, split?})")
    p.add_argument("--kind", default="A2", help="series label, e.g. A2 or A2xA1")
    if need_subspace:
        p.add_argument("--subspace", help="subspace JSON file ({basis: [[...]]})")
        p.add_argument(
            "--basis",
            default="",
            help="inline subspace basis, rows separated by ';', entries by ','",
        )


def build_parser() -> _Parser:
    parser = _Parser(prog="rootcert")
    sub = parser.add_subparsers(dest="group", required=True)

    p = sub.add_parser("rootsys").add_subparsers(dest="cmd", required=True)
    q = p.add_parser("show")
    _add_datum_args(q)
    q.set_defaults(func=cmd_rootsys_show)

    p = sub.add_parser("weyl").add_subparsers(dest="cmd", required=True)
    q = p.add_parser("orbit")
    _add_datum_args(q)
    q.add_argument("--chi", required=True)
    q.set_defaults(func=cmd_weyl_orbit)
    q = p.add_parser("dominate")
    _add_datum_args(q)
    q.add_argument("--chi", required=True)
    q.set_defaults(func=cmd_weyl_dominate)
    q = p.add_parser("onestep")
    _add_datum_args(q)
    q.add_argument("--chi", required=True)
    q.add_argument("--t", required=True)
    q.set_defaults(func=cmd_weyl_onestep)

    p = sub.add_parser("torus").add_subparsers(dest="cmd", required=True)
    q = p.add_parser("decompose")
    _add_datum_args(q, need_subspace=True)
    q.set_defaults(func=cmd_torus_decompose)
    q = p.add_parser("splitify")
    _add_datum_args(q, need_subspace=True)
    q.set_defaults(func=cmd_torus_splitify)

    p = sub.add_parser("dio").add_subparsers(dest="cmd", required=True)
    q = p.add_parser("approx")
    q.add_argument("--out", help="write output to this path instead of stdout")
    q.add_argument("--x", required=True)
    q.add_argument("--Q", type=int, required=True)
    q.set_defaults(func=cmd_dio_approx)

    p = sub.add_parser("rep").add_subparsers(dest="cmd", required=True)
    q = p.add_parser("saturate")
    _add_datum_args(q)
    q.add_argument("--highest", required=True)
    q.set_defaults(func=cmd_rep_saturate)
    q = p.add_parser("dexp")
    _add_datum_args(q)
    q.set_defaults(func=cmd_rep_dexp)

    p = sub.add_parser("certify").add_subparsers(dest="cmd", required=True)
    q = p.add_parser("build")
    _add_datum_args(q, need_subspace=True)
    q.set_defaults(func=cmd_certify_build)
    q = p.add_parser("verify")
    q.add_argument("--out", help="write output to this path instead of stdout")
    q.add_argument("--cert", required=True)
    q.add_argument("--trials", type=int, default=1000)
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=cmd_certify_verify)
    q = p.add_parser("decide")
    _add_datum_args(q, need_subspace=True)
    q.set_defaults(func=cmd_certify_decide)

    p = sub.add_parser("probe").add_subparsers(dest="cmd", required=True)
    q = p.add_parser("run")
    q.add_argument("--out", help="write output to this path instead of stdout")
    q.add_argument("--n", type=int, default=3)
    q.add_argument("--cert", required=True)
    q.add_argument("--tmax", type=float, default=3.0)
    q.add_argument("--steps", type=int, default=7)
    q.add_argument("--x", help="JSON file with a unimodular basis matrix")
    q.add_argument("--ray", default="", help="flow ray, comma-separated")
    q.set_defaults(func=cmd_probe_run)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except slprobe.DecayError as exc:
        sys.stdout.write(jsonio.dumps({"pass": False, "witness": str(exc)}))
        return 2
    except (RootcertError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"rootcert: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
