"""Command-line frontend.

Every computation and suite is reachable as a subcommand with JSON input
and JSON (or CSV) output.  Numeric output is printed with 12 significant
digits and dictionary keys are sorted, so identical inputs and seeds give
byte-identical results.

Exit codes: 0 success, 1 computation failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import acceptance, boxes, excl, kscolor, quantum, scenarios
from . import graph as gr
from .bounds import bounds_report, qstab_membership, stab_membership, th_membership
from .numkernel import LpError, SdpError


class CliInputError(Exception):
    pass


def _round_floats(obj):
    if isinstance(obj, float):
        return float(format(obj, ".12g"))
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    if isinstance(obj, (np.floating,)):
        return float(format(float(obj), ".12g"))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    return obj


def _emit(data, output: str | None) -> None:
    text = json.dumps(_round_floats(data), sort_keys=True, indent=2) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_csv(header: list[str], rows: list[list], output: str | None) -> None:
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for cell in row:
            if isinstance(cell, float):
                cells.append(format(cell, ".12g"))
            else:
                cells.append(str(cell))
        lines.append(",".join(cells))
    text = "\n".join(lines) + "\n"
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise CliInputError(
            f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    except OSError as exc:
        raise CliInputError(f"cannot read {path}: {exc}") from exc


def _parse_offsets(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(",") if p.strip() != "")
    except ValueError as exc:
        raise CliInputError(f"bad --offsets value {text!r}: {exc}") from exc


def _graph_from_args(args, data: dict | None = None) -> tuple[gr.Graph, str]:
    """Build the graph either from --family flags or from JSON input."""
    if getattr(args, "family", None):
        params = {}
        if args.n is not None:
            params["n"] = args.n
        if args.offsets:
            offs = _parse_offsets(args.offsets)
            if args.family == "johnson":
                params["m"], params["k"] = offs
            elif args.family == "johnson_gqs":
                params["q"], params["s"] = offs
            else:
                params["offsets"] = offs
        try:
            g = gr.build_family(args.family, **params)
        except (gr.GraphError, TypeError, ValueError) as exc:
            raise CliInputError(str(exc)) from exc
        name = args.family if args.n is None else f"{args.family}({args.n})"
        return g, name
    if data is None and getattr(args, "input", None):
        data = _load_json(args.input)
    if isinstance(data, dict) and "graph" in data:
        data = data["graph"]
    if not isinstance(data, dict):
        raise CliInputError("expected a graph object or --family flags")
    try:
        return gr.from_json_dict(data), "graph"
    except (gr.GraphError, KeyError, TypeError, ValueError) as exc:
        raise CliInputError(f"bad graph JSON: {exc}") from exc


def _cmd_bounds(args) -> int:
    g, _ = _graph_from_args(args)
    rep = bounds_report(g, tol=args.tol or 5e-7)
    _emit(rep.to_json_dict(), args.output)
    return 0


def _cmd_membership(args) -> int:
    data = _load_json(args.input)
    if isinstance(data, dict) and "p" in data:
        p = data["p"]
        g, _ = _graph_from_args(args, data if "graph" in data else None)
    else:
        raise CliInputError('membership input must contain a "p" array')
    p = [float(x) for x in p]
    if len(p) != g.n:
        raise CliInputError(f"p has {len(p)} entries for a {g.n}-vertex graph")
    in_stab, stab_cert = stab_membership(g, p)
    in_th, theta_c = th_membership(g, p, tol=args.tol or 1e-6)
    in_qstab, qstab_cert = qstab_membership(g, p)
    out = {
        "stab": in_stab,
        "th": in_th,
        "theta_complement": theta_c,
        "qstab": in_qstab,
    }
    if not in_stab and isinstance(stab_cert, dict):
        out["stab_separation"] = {
            "a": list(stab_cert["a"]),
            "beta": stab_cert["beta"],
        }
    if not in_qstab and qstab_cert:
        out["qstab_failure"] = {
            k: (list(v) if isinstance(v, tuple) else v) for k, v in qstab_cert.items()
        }
    _emit(out, args.output)
    return 0


def _cmd_duality(args) -> int:
    g, name = _graph_from_args(args)
    rep = excl.duality_suite(g, graph_id=name, tol=args.tol or 5e-7)
    _emit(rep.to_json_dict(), args.output)
    return 0


def _cmd_suite(args) -> int:
    if args.which == "ops":
        _emit({"rows": excl.op_propagation_suite()}, args.output)
        return 0
    if args.which == "circulant10":
        _emit(excl.circulant10_suite(), args.output)
        return 0
    results = acceptance.run_all()
    payload = {
        "criteria": [
            {"id": r.cid, "description": r.description, "passed": r.passed, "details": r.details}
            for r in results
        ],
        "all_passed": all(r.passed for r in results),
    }
    _emit(payload, args.output)
    return 0 if payload["all_passed"] else 1


def _cmd_ks_check(args) -> int:
    data = _load_json(args.input)
    try:
        vs = kscolor.vector_system_from_json_dict(data)
        pins = {int(k): int(v) for k, v in (data.get("pins") or {}).items()}
        problem = kscolor.coloring_problem(vs, pins)
    except (ValueError, TypeError) as exc:
        raise CliInputError(str(exc)) from exc
    res = kscolor.classify_colorability(problem)
    out = {
        "status": res.status,
        "rays": len(vs.vectors),
        "bases": len(problem.bases),
        "witness": None if res.witness is None else {str(k): v for k, v in res.witness.items()},
        "trace": res.trace,
    }
    _emit(out, args.output)
    return 0


_BUILTIN_PROOFS = {"square": kscolor.peres_mermin_square, "star": kscolor.dim8_star}


def _cmd_ks_multiplicative(args) -> int:
    if args.builtin:
        spec = _BUILTIN_PROOFS[args.builtin]()
    elif args.input:
        try:
            spec = kscolor.proof_spec_from_json_dict(_load_json(args.input))
        except ValueError as exc:
            raise CliInputError(str(exc)) from exc
    else:
        raise CliInputError("give --input FILE or --builtin square|star")
    rep = kscolor.verify_multiplicative_proof(spec)
    _emit({
        "operators_ok": rep.operators_ok,
        "lines_commute": rep.lines_commute,
        "products_match": rep.products_match,
        "assignment_exists": rep.assignment_exists,
    }, args.output)
    return 0


def _load_model(path: str) -> scenarios.EmpiricalModel:
    data = _load_json(path)
    if isinstance(data, dict) and "model" in data:
        data = data["model"]
    try:
        return scenarios.model_from_json_dict(data)
    except (ValueError, TypeError, KeyError) as exc:
        raise CliInputError(f"bad model JSON: {exc}") from exc


def _cmd_scenario(args) -> int:
    model = _load_model(args.input)
    if args.which == "check":
        ok, violations = scenarios.check_nondisturbance(model, tol=args.tol or 1e-9)
        _emit({"nondisturbing": ok, "violations": violations}, args.output)
        return 0
    if args.which == "global-section":
        exists, cert = scenarios.has_global_section(model, tol=args.tol or 1e-7)
        out = {"exists": exists}
        if exists:
            out["distribution"] = {
                " ".join(f"{m}={v}" for m, v in atom): w
                for atom, w in cert["distribution"].items()
            }
        else:
            out["separating_functional"] = cert
        _emit(out, args.output)
        return 0
    data = _load_json(args.input)
    if "gamma" not in data:
        raise CliInputError('evaluate input needs a "gamma" array next to the model')
    gamma = tuple(int(x) for x in data["gamma"])
    ineq = scenarios.ncycle_inequality(len(gamma), gamma)
    form = data.get("form", "correlation")
    value = scenarios.evaluate_inequality(model, ineq, form=form)
    bound = ineq.bound if form == "correlation" else ineq.prob_bound
    _emit({
        "inequality": ineq.name,
        "form": form,
        "value": value,
        "classical_bound": bound,
        "violated": value > bound + 1e-12,
    }, args.output)
    return 0


def _load_box(path: str) -> boxes.Box:
    data = _load_json(path)
    if isinstance(data, dict) and "box" in data:
        data = data["box"]
    try:
        return boxes.box_from_json_dict(data)
    except (ValueError, TypeError, KeyError) as exc:
        raise CliInputError(f"bad box JSON: {exc}") from exc


def _cmd_box(args) -> int:
    which = args.which
    if which == "check":
        box = _load_box(args.input)
        ns, ns_detail = boxes.is_nosignaling(box)
        local, cert = boxes.is_local(box)
        out = {"nosignaling": ns, "local": local}
        if not ns and ns_detail:
            out["signaling_detail"] = {
                k: (list(v) if isinstance(v, tuple) else v) for k, v in ns_detail.items()
            }
        _emit(out, args.output)
        return 0
    if which == "chsh":
        _emit({"value": boxes.chsh_value(_load_box(args.input))}, args.output)
        return 0
    if which == "gyni":
        _emit({"value": boxes.gyni_value(_load_box(args.input))}, args.output)
        return 0
    if which == "lo":
        copy = _load_box(args.input) if args.input else None
        _emit({"value": boxes.local_orthogonality_two_pr(copy)}, args.output)
        return 0
    if which == "ic-vandam":
        res = boxes.van_dam_ic(seed=args.seed, trials=args.trials or 10_000,
                               e=args.noise if args.noise is not None else 1.0)
        _emit({
            "success": res.success,
            "mutual_information_bits": res.mutual_information,
            "message_bits": res.message_bits,
            "trials": res.trials,
            "seed": res.seed,
        }, args.output)
        return 0
    if which == "ic-nested":
        params = _load_json(args.input) if args.input else {}
        d = int(params.get("d", 2))
        e = float(params.get("e", 1.0))
        levels = int(params.get("levels", args.n or 6))
        res = boxes.nested_ic(d, e, levels)
        _emit({
            "d": d,
            "e": e,
            "levels": res.levels,
            "success": res.success,
            "closed_form": ((d - 1) * e**levels + 1) / d,
            "ic_violation_condition": res.ic_violation_condition,
        }, args.output)
        return 0
    # ip-protocol: random instances against the direct oracle
    rng = np.random.default_rng(args.seed)
    bits = args.n or 16
    instances = args.trials or 1000
    agree = 0
    for _ in range(instances):
        x = rng.integers(0, 2, size=bits)
        y = rng.integers(0, 2, size=bits)
        res = boxes.ip_one_bit_protocol(x, y, seed=int(rng.integers(1 << 30)))
        if res.result == int(np.dot(x, y)) % 2 and res.bits_communicated == 1:
            agree += 1
    _emit({
        "instances": instances,
        "bit_length": bits,
        "agreement": agree / instances,
        "bits_communicated": 1,
        "seed": args.seed,
    }, args.output)
    return 0


def _cmd_plotdata(args) -> int:
    rows = []
    if args.family == "circulant10":
        for row in excl.circulant10_suite()["rows"]:
            rows.append([row["graph"], row["n"], row["alpha"], row["theta"],
                         row["alpha_star"], row["theta_over_alpha"]])
    else:
        upper = args.n or 11
        builders = {"cycle": gr.cycle_graph, "prism": gr.prism_graph, "moebius": gr.moebius_ladder}
        if args.family not in builders:
            raise CliInputError(f"plotdata family must be one of {sorted(builders)} or circulant10")
        lo = 4 if args.family == "moebius" else 3
        for n in range(lo, upper + 1):
            if args.family == "moebius" and n % 2:
                continue
            g = builders[args.family](n)
            rep = bounds_report(g, tol=args.tol or 5e-7)
            rows.append([f"{args.family}({n})", g.n, rep.alpha, rep.theta,
                         rep.alpha_star, rep.theta / rep.alpha])
    _emit_csv(["graph", "n", "alpha", "theta", "alpha_star", "theta_over_alpha"], rows, args.output)
    return 0


def _add_graph_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", help="graph family: cycle|path|complete|prism|moebius|circulant|petersen|johnson|johnson_gqs")
    p.add_argument("--n", type=int, help="size parameter for --family")
    p.add_argument("--offsets", help="comma-separated integers (circulant offsets; m,k for johnson; q,s for johnson_gqs)")
    p.add_argument("--input", help="JSON file with a graph object {n, edges[, labels]}")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", help="write to this file instead of standard output")
    p.add_argument("--tol", type=float, help="numeric tolerance override")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="exgraph",
        description="exclusivity-graph contextuality toolkit",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="alpha, theta, alpha* of a graph",
                       description='Output: {"alpha", "theta", "alpha_star", "ratio", "witness_independent_set"}.')
    _add_graph_flags(p)
    _add_common(p)
    p.set_defaults(fn=_cmd_bounds)

    p = sub.add_parser("membership", help="STAB/TH/QSTAB membership of an assignment",
                       description='Input JSON: {"graph": {n, edges}, "p": [..]} (or --family flags plus {"p": [..]}). '
                                   'Output: {"stab", "th", "theta_complement", "qstab"} plus certificates on rejection.')
    _add_graph_flags(p)
    _add_common(p)
    p.set_defaults(fn=_cmd_membership)

    p = sub.add_parser("duality", help="complement-duality report of a graph",
                       description='Output: DualityReport fields {"graph", "n", "theta", "theta_complement", "product", '
                                   '"vertex_transitive", "self_complementary", "e_principle_max", pass/fail flags}.')
    _add_graph_flags(p)
    _add_common(p)
    p.set_defaults(fn=_cmd_duality)

    p = sub.add_parser("suite", help="run a verification suite",
                       description="ops: theta under graph operations; circulant10: the ten-vertex census; "
                                   "acceptance: the full acceptance battery (exit 1 on any failure).")
    p.add_argument("which", choices=["ops", "circulant10", "acceptance"])
    _add_common(p)
    p.set_defaults(fn=_cmd_suite)

    ks = sub.add_parser("ks", help="ray-system colorability and operator proofs").add_subparsers(
        dest="which", required=True)
    p = ks.add_parser("check", help="classify a vector system",
                      description='Input JSON: {"d": dim, "vectors": [[..]..], "tol": eps, "pins": {"i": 0|1}}. '
                                  'Output: {"status", "rays", "bases", "witness", "trace"}.')
    p.add_argument("--input", required=True)
    _add_common(p)
    p.set_defaults(fn=_cmd_ks_check)
    p = ks.add_parser("multiplicative", help="verify an operator-product proof",
                      description='Input JSON: {"operators": [[[re,im]..]..], "lines": [[i..]..], "signs": [1|-1..]} '
                                  'or --builtin square|star. Output: the four verification booleans.')
    p.add_argument("--input")
    p.add_argument("--builtin", choices=sorted(_BUILTIN_PROOFS))
    _add_common(p)
    p.set_defaults(fn=_cmd_ks_multiplicative)

    sc = sub.add_parser("scenario", help="empirical-model operations").add_subparsers(
        dest="which", required=True)
    for which, helptext, desc in (
        ("check", "non-disturbance test",
         'Input: model JSON {"measurements", "outcomes", "contexts", "tables"}. Output: {"nondisturbing", "violations"}.'),
        ("global-section", "joint-distribution feasibility",
         'Input: model JSON. Output: {"exists"} with a distribution or a separating functional.'),
        ("evaluate", "evaluate a cycle inequality on a model",
         'Input: {"model": .., "gamma": [1,-1,..], "form": "correlation"|"probability"}. '
         'Output: {"value", "classical_bound", "violated"}.'),
    ):
        p = sc.add_parser(which, help=helptext, description=desc)
        p.add_argument("--input", required=True)
        _add_common(p)
        p.set_defaults(fn=_cmd_scenario)

    bx = sub.add_parser("box", help="Bell-box operations").add_subparsers(dest="which", required=True)
    for which, helptext, desc, needs_input in (
        ("check", "normalization, no-signaling, locality",
         'Input: box JSON {"parties", "settings", "outcomes", "table"}. Output: {"nosignaling", "local"}.', True),
        ("chsh", "CHSH value of a two-party binary box", 'Output: {"value"}.', True),
        ("gyni", "guess-your-neighbour's-input value", 'Output: {"value"}.', True),
        ("lo", "two-copy orthogonal-event sum (default: perfect PR)", 'Output: {"value"} (5/4 for PR).', False),
    ):
        p = bx.add_parser(which, help=helptext, description=desc)
        p.add_argument("--input", required=needs_input)
        _add_common(p)
        p.set_defaults(fn=_cmd_box)
    p = bx.add_parser("ic-vandam", help="information-causality violation protocol",
                      description='Output: {"success", "mutual_information_bits", "message_bits", "trials", "seed"}.')
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trials", type=int)
    p.add_argument("--noise", type=float, help="box correlation strength E (default 1.0)")
    _add_common(p)
    p.set_defaults(fn=_cmd_box)
    p = bx.add_parser("ic-nested", help="nested noisy-box success probability",
                      description='Input (optional): {"d", "e", "levels"}. Output: {"success", "closed_form", "ic_violation_condition"}.')
    p.add_argument("--input")
    p.add_argument("--n", type=int, help="levels when no input file is given")
    _add_common(p)
    p.set_defaults(fn=_cmd_box)
    p = bx.add_parser("ip-protocol", help="one-bit distributed inner-product protocol vs direct oracle",
                      description='Output: {"instances", "bit_length", "agreement", "bits_communicated", "seed"}.')
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trials", type=int, help="number of random instances (default 1000)")
    p.add_argument("--n", type=int, help="bit length per instance (default 16)")
    _add_common(p)
    p.set_defaults(fn=_cmd_box)

    pd = sub.add_parser("plotdata", help="CSV sweeps for plotting").add_subparsers(
        dest="which", required=True)
    p = pd.add_parser("theta-alpha", help="graph,n,alpha,theta,alpha_star,theta_over_alpha sweep",
                      description="CSV with header graph,n,alpha,theta,alpha_star,theta_over_alpha. "
                                  "--family cycle|prism|moebius with --n upper bound, or --family circulant10.")
    p.add_argument("--family", default="cycle")
    p.add_argument("--n", type=int)
    _add_common(p)
    p.set_defaults(fn=_cmd_plotdata)

    return ap


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags, 0 on --help; pass both through
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except CliInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, gr.GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SdpError, LpError, RuntimeError) as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
