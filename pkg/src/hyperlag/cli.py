"""Command-line front end.

JSON results go to stdout, human-readable progress to stderr, so pipelines
can consume the output while a terminal user still sees what happened.
Exit codes: 0 success / certification pass, 1 usage or input error,
2 certification failure, 3 adder generation failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import closedform, constructions, certify, hypercore, optimize

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CERT_FAIL = 2
EXIT_GENERATOR = 3


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        _say(f"wrote {out}")
    else:
        print(text)


def _optimizer_config(args) -> optimize.OptimizerConfig:
    return optimize.OptimizerConfig(
        restarts=args.restarts,
        max_iters=args.iters,
        tolerance=args.tol,
        seed=args.seed,
        threads=args.threads,
    )


def cmd_lagrangian(args) -> int:
    try:
        G = hypercore.read_hypergraph(args.path)
    except hypercore.HypergraphFormatError as exc:
        _say(f"parse error in {args.path}: {exc}")
        return EXIT_INPUT
    except OSError as exc:
        _say(f"cannot read {args.path}: {exc}")
        return EXIT_INPUT
    result = optimize.maximize_lagrangian(G, _optimizer_config(args))
    payload = result.to_json()
    payload["config"] = {
        "seed": args.seed, "restarts": args.restarts,
        "iters": args.iters, "tol": args.tol, "threads": args.threads,
    }
    _emit(payload, args.out)
    _say(f"lambda >= {result.value:.12f} on support {list(result.support)}")
    return EXIT_OK


def cmd_construct(args) -> int:
    kind = args.family
    try:
        if kind == "b2k":
            G = constructions.build_b2k(args.k, args.n)
            parts = [(1, 2 * args.k), (2 * args.k + 1, args.n)]
            meta = constructions.construction_metadata("b2k", k=args.k, t=args.n, parts=parts)
        elif kind == "theorem1":
            G = constructions.build_theorem1_base(args.t)
            meta = constructions.construction_metadata(
                "theorem1", t=args.t, parts=constructions.theorem1_parts(args.t))
        elif kind == "theorem3":
            pattern = constructions.build_theorem3_pattern(args.k)
            G = constructions.instantiate_pattern(pattern, args.t)
            meta = constructions.construction_metadata(
                "theorem3", k=args.k, t=args.t,
                parts=constructions.pattern_parts(pattern, args.t))
        elif kind == "sparse":
            params = constructions.SparseAdderParams(s=args.s, c=args.c, t=args.t, seed=args.seed)
            G = constructions.generate_sparse_adder(params)
            meta = constructions.construction_metadata(
                "sparse", t=args.t, s=args.s, c=args.c, seed=args.seed, parts=[(1, args.t)])
        elif kind == "gstar":
            G, meta = _build_gstar(args)
        else:  # pragma: no cover - argparse restricts choices
            raise ValueError(f"unknown family {kind}")
    except constructions.AdderGenerationError as exc:
        _say(f"generator failure: {exc}")
        return EXIT_GENERATOR
    except ValueError as exc:
        _say(f"invalid parameters: {exc}")
        return EXIT_INPUT

    hypercore.write_hypergraph(G, args.out)
    sidecar = args.out + ".json"
    with open(sidecar, "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2)
        fh.write("\n")
    _say(f"wrote {args.out} ({G.m} edges) and {sidecar}")
    print(json.dumps({"out": args.out, "edges": G.m, "sidecar": sidecar}))
    return EXIT_OK


def _build_gstar(args):
    if args.kind == "t1":
        base = constructions.build_theorem1_base(args.t)
        parts = constructions.theorem1_parts(args.t)
        lo, hi = parts[0]
        meta_kind, k = "gstar_t1", None
    else:
        if args.k is None:
            raise ValueError("gstar with --kind t3 needs --k")
        pattern = constructions.build_theorem3_pattern(args.k)
        base = constructions.instantiate_pattern(pattern, args.t)
        parts = constructions.pattern_parts(pattern, args.t)
        lo, hi = parts[-1]
        meta_kind, k = "gstar_t3", args.k
    adder = constructions.generate_sparse_adder(
        constructions.SparseAdderParams(s=args.s, c=args.c, t=hi - lo + 1, seed=args.seed))
    G = constructions.assemble_gstar(base, adder, range(lo, hi + 1))
    meta = constructions.construction_metadata(
        meta_kind, k=k, t=args.t, s=args.s, c=args.c, seed=args.seed, parts=parts)
    return G, meta


def cmd_alpha(args) -> int:
    value = closedform.alpha_k(args.k)
    payload = closedform.exact_to_json(value)
    payload["alpha_over_6"] = float(value) / 6
    payload["irrational"] = closedform.is_non_square_4k_minus_1(args.k)
    if args.check_optimize:
        a_hat, peak = closedform.f_b2k_numeric_max(args.k)
        payload["optimize_gap"] = abs(float(value) / 6 - peak)
        payload["optimize_argmax"] = a_hat
        payload["astar"] = float(closedform.astar_weight(args.k))
    _emit(payload, args.out)
    _say(f"alpha_{args.k} = {float(value):.9f}")
    return EXIT_OK


def cmd_certify(args) -> int:
    if args.theorem == "t1":
        report = certify.certify_theorem1(
            grid_resolution=args.grid,
            refine_iters=args.refine_iters,
            tol=args.tol,
            profile_s=args.profiles,
        )
    else:
        if args.k is None:
            _say("certify t3 needs --k")
            return EXIT_INPUT
        report = certify.certify_theorem3(
            args.k,
            grid_resolution=args.grid,
            tol=args.tol,
            refine_iters=args.refine_iters,
            profile_s=args.profiles,
        )
    _emit(report.to_json(), args.out)
    for case in report.cases:
        _say(f"[{'PASS' if case.passed else 'FAIL'}] {case.case_name}: "
             f"found {case.bound_found:.12f} ({case.method})")
    _say(f"overall: {'PASS' if report.overall else 'FAIL'}")
    return EXIT_OK if report.overall else EXIT_CERT_FAIL


def cmd_density_gain(args) -> int:
    try:
        report = certify.check_blowup_density_gain(
            args.kind, args.t, s=args.s, c=args.c, seed=args.seed, k=args.k)
    except constructions.AdderGenerationError as exc:
        _say(f"generator failure: {exc}")
        return EXIT_GENERATOR
    except ValueError as exc:
        _say(f"invalid parameters: {exc}")
        return EXIT_INPUT
    _emit(report.to_json(), args.out)
    _say(f"bound {float(report.bound):.9f} vs target {float(report.target):.9f} "
         f"-> {'PASS' if report.passed else 'FAIL'}")
    return EXIT_OK if report.passed else EXIT_CERT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperlag",
        description="Hypergraph Lagrangians: constructions, optimization, certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, seed=True, out=True, tol=None):
        if seed:
            p.add_argument("--seed", type=int, default=0)
        if out:
            p.add_argument("--out", default=None, help="write JSON here instead of stdout")
        if tol is not None:
            p.add_argument("--tol", type=float, default=tol)

    p = sub.add_parser("lagrangian", help="maximize the Lagrangian of a hypergraph file")
    p.add_argument("path")
    p.add_argument("--restarts", type=int, default=12)
    p.add_argument("--iters", type=int, default=500)
    p.add_argument("--threads", type=int, default=1)
    add_common(p, tol=1e-9)
    p.set_defaults(func=cmd_lagrangian)

    p = sub.add_parser("construct", help="build a hypergraph family and write it to a file")
    p.add_argument("family", choices=["b2k", "theorem1", "theorem3", "sparse", "gstar"])
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--s", type=int, default=3)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--kind", choices=["t1", "t3"], default="t1", help="base family for gstar")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("alpha", help="evaluate the surd constant alpha_k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--check-optimize", action="store_true",
                   help="also compare alpha_k/6 against a 1-d numeric maximization")
    add_common(p, seed=False)
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("certify", help="run a certification pipeline")
    p.add_argument("theorem", choices=["t1", "t3"])
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--grid", type=int, default=200)
    p.add_argument("--refine-iters", type=int, default=500)
    p.add_argument("--profiles", type=int, default=None,
                   help="also optimize every part-size profile up to this total size")
    add_common(p, seed=False, tol=None)
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("density-gain", help="blow-up density gain accounting for gstar")
    p.add_argument("--kind", choices=["t1", "t3"], required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--s", type=int, default=3)
    p.add_argument("--c", type=float, default=1.0)
    add_common(p)
    p.set_defaults(func=cmd_density_gain)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "certify" and args.tol is None:
        args.tol = 1e-9 if args.theorem == "t1" else 1e-8
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
