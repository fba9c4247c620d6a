"""Command-line front end.

One verb per concept: validate, fdc, erdc, pddc, spddc, sparsify,
special-case, gen, check.  Default output is human-readable text; --json
emits a machine-readable report with stable field order.  Exit codes:
0 success, 1 domain error (infeasible precondition, budget exceeded),
2 usage or document parse/validation error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import fdc as fdc_mod
from . import gadgets, oracles
from . import sparsifier as sparsify_mod
from .errors import (
    BudgetExceededError,
    DeepConnError,
    FormatError,
    PreconditionError,
    ValidationError,
)
from .fdc import format_rational
from .model import Instance, parse_instance, serialize_instance

_ERROR_CODES = {
    FormatError: ("FORMAT", 2),
    ValidationError: ("VALIDATION", 2),
    PreconditionError: ("PRECONDITION", 1),
    BudgetExceededError: ("BUDGET", 1),
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        report = args.handler(args)
    except DeepConnError as exc:
        code, status = next(
            (v for t, v in _ERROR_CODES.items() if isinstance(exc, t)),
            ("ERROR", 1),
        )
        print(f"error {code}: {exc}", file=sys.stderr)
        return status
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        for line in _humanize(report):
            print(line)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deepconn",
        description="Deep-connectivity parameters of overlay networks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def instance_cmd(name, help_text, pair=False, witness=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("-i", "--instance", required=True, help="instance document path")
        if pair:
            grp = p.add_mutually_exclusive_group(required=True)
            grp.add_argument("--pair", nargs=2, metavar=("A", "B"))
            grp.add_argument("--all-pairs", action="store_true")
        if witness:
            p.add_argument("--witness", action="store_true")
        p.add_argument("--budget", type=int, default=None)
        p.add_argument("--json", action="store_true")
        p.add_argument("-o", "--output", default=None)
        return p

    instance_cmd("validate", "parse and validate an instance").set_defaults(
        handler=_cmd_validate
    )
    for name in ("fdc", "erdc", "pddc", "spddc"):
        instance_cmd(
            name, f"compute the {name} parameter", pair=True, witness=True
        ).set_defaults(handler=_cmd_parameter, parameter=name)
    instance_cmd("sparsify", "construct a sparse 2-survivable overlay").set_defaults(
        handler=_cmd_sparsify
    )
    instance_cmd(
        "special-case", "identity-routing 2n-2 construction"
    ).set_defaults(handler=_cmd_special_case)
    instance_cmd(
        "check", "run the cross-parameter invariant suite", witness=False
    ).set_defaults(handler=_cmd_check)

    gen = sub.add_parser("gen", help="generate instances")
    gsub = gen.add_subparsers(dest="generator", required=True)

    def gen_cmd(name):
        p = gsub.add_parser(name)
        p.add_argument("--json", action="store_true")
        p.add_argument("-o", "--output", default=None)
        p.add_argument("--labels", default=None, help="sidecar labels path")
        return p

    p = gen_cmd("set-system")
    p.add_argument("--h-nodes", required=True, help="comma-separated overlay nodes")
    p.add_argument("--h-edges", required=True, help="comma-separated a-b pairs")
    p.add_argument("--f", required=True, help="comma-separated a-b pairs, one per set")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--sets", required=True, help="semicolon-separated comma lists")
    p.set_defaults(handler=_cmd_gen_set_system)

    p = gen_cmd("spddc-reduction")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--sets", required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(handler=_cmd_gen_spddc)

    p = gen_cmd("hamiltonian")
    p.add_argument("--nodes", required=True)
    p.add_argument("--edges", required=True)
    p.set_defaults(handler=_cmd_gen_hamiltonian)

    p = gen_cmd("random")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--peers", type=int, required=True)
    p.add_argument("--edge-prob", type=float, default=0.5)
    p.add_argument(
        "--policy", choices=gadgets.ROUTE_POLICIES, default="shortest_path"
    )
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_gen_random)

    return parser


def _load(args) -> Instance:
    try:
        with open(args.instance, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read {args.instance}: {exc}") from exc
    return parse_instance(text)


def _emit_instance(args, instance, labels=None) -> None:
    text = serialize_instance(instance)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    if labels is not None and getattr(args, "labels", None):
        with open(args.labels, "w", encoding="utf-8") as fh:
            json.dump(labels, fh, indent=2)
            fh.write("\n")


def _cmd_validate(args):
    instance = _load(args)
    return {
        "command": "validate",
        "nodes": len(instance.nodes),
        "edges": len(instance.edges),
        "peers": len(instance.peers),
        "overlay_edges": len(instance.overlay_edges),
        "routes": len(instance.routes),
        "total_routing": instance.total,
        "status": "ok",
    }


def _cmd_parameter(args):
    instance = _load(args)
    name = args.parameter
    started = time.perf_counter()
    kwargs = {}
    if args.budget is not None and name != "fdc":
        kwargs["budget"] = args.budget
    if args.pair:
        s, t = args.pair
        if name == "fdc":
            result = fdc_mod.fdc_pair(instance, s, t)
            value, witness = result.value, _fdc_witness(result)
        else:
            value, cert = getattr(oracles, f"{name}_pair")(instance, s, t, **kwargs)
            witness = _oracle_witness(cert)
        report = {
            "command": name,
            "pair": [s, t],
            "value": format_rational(value) if name == "fdc" else value,
        }
    else:
        if name == "fdc":
            value, pair, result = fdc_mod.fdc_all_pairs(instance)
            witness = _fdc_witness(result)
        else:
            value, pair, cert = oracles.all_pairs(instance, name, **kwargs)
            witness = _oracle_witness(cert)
        report = {
            "command": name,
            "all_pairs": True,
            "value": format_rational(value) if name == "fdc" else value,
            "argmin_pair": list(pair),
        }
    if args.witness:
        report["witness"] = witness
    report["status"] = "ok"
    if not args.json:
        report["elapsed_s"] = round(time.perf_counter() - started, 3)
    return report


def _fdc_witness(result):
    return {
        "primal": {
            " ".join(path): format_rational(flow)
            for path, flow in sorted(result.primal.items())
        },
        "dual": {
            f"{u},{v}": format_rational(w)
            for (u, v), w in sorted(result.dual.items())
        },
    }


def _oracle_witness(cert):
    if isinstance(cert, oracles.CutCertificate):
        return {"cut": [list(e) for e in sorted(cert.edges)]}
    return {"paths": [list(p) for p in cert.paths]}


def _cmd_sparsify(args):
    instance = _load(args)
    overlay = sparsify_mod.sparsify(instance)
    result = sparsify_mod.sparsified_instance(instance, overlay)
    _emit_instance(args, result)
    return {
        "command": "sparsify",
        "tree_edges": len(instance.peers) - 1,
        "overlay_edges": [list(e) for e in sorted(overlay)],
        "size": len(overlay),
        "status": "ok",
    }


def _cmd_special_case(args):
    instance = _load(args)
    if set(instance.peers) != set(instance.nodes):
        raise PreconditionError("special case requires every node to be a peer")
    overlay = sparsify_mod.special_case_construct(instance.nodes, instance.edges)
    routes = {e: e for e in overlay}
    from .model import build_instance

    result = build_instance(
        instance.nodes, instance.edges, instance.peers, overlay, routes
    )
    _emit_instance(args, result)
    return {
        "command": "special-case",
        "overlay_edges": [list(e) for e in sorted(overlay)],
        "size": len(overlay),
        "bound": 2 * len(instance.nodes) - 2,
        "status": "ok",
    }


def _cmd_check(args):
    instance = _load(args)
    peers = sorted(instance.peers)
    rows = []
    ok = True
    for i, s in enumerate(peers):
        for t in peers[i + 1 :]:
            erdc, _ = oracles.erdc_pair(instance, s, t)
            pddc, _ = oracles.pddc_pair(instance, s, t)
            spddc, _ = oracles.spddc_pair(instance, s, t)
            flow = fdc_mod.fdc_pair(instance, s, t).value
            holds = spddc <= pddc <= erdc and spddc <= flow <= erdc
            ok = ok and holds
            rows.append(
                {
                    "pair": [s, t],
                    "erdc": erdc,
                    "pddc": pddc,
                    "spddc": spddc,
                    "fdc": format_rational(flow),
                    "inequalities": "ok" if holds else "VIOLATED",
                }
            )
    return {"command": "check", "pairs": rows, "status": "ok" if ok else "violated"}


def _parse_edge_list(text):
    out = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        parts = token.split("-")
        if len(parts) != 2:
            raise FormatError(f"bad edge token {token!r}; expected a-b")
        out.append((parts[0], parts[1]))
    return out


def _parse_sets(text):
    sets = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        sets.append([int(x) for x in chunk.split(",") if x.strip()] if chunk else [])
    return sets


def _cmd_gen_set_system(args):
    system = gadgets.SetSystem.from_lists(args.m, _parse_sets(args.sets))
    out = gadgets.encode_set_system(
        args.h_nodes.split(","),
        _parse_edge_list(args.h_edges),
        _parse_edge_list(args.f),
        system,
    )
    _emit_instance(args, out.instance, out.labels)
    return {
        "command": "gen set-system",
        "nodes": len(out.instance.nodes),
        "edges": len(out.instance.edges),
        "labels": out.labels,
        "status": "ok",
    }


def _cmd_gen_spddc(args):
    system = gadgets.SetSystem.from_lists(args.m, _parse_sets(args.sets))
    out, source, sink = gadgets.build_spddc_reduction(system, args.k)
    _emit_instance(args, out.instance, out.labels)
    return {
        "command": "gen spddc-reduction",
        "source": source,
        "sink": sink,
        "nodes": len(out.instance.nodes),
        "edges": len(out.instance.edges),
        "status": "ok",
    }


def _cmd_gen_hamiltonian(args):
    instance = gadgets.build_hamiltonian_reduction(
        args.nodes.split(","), _parse_edge_list(args.edges)
    )
    _emit_instance(args, instance)
    return {
        "command": "gen hamiltonian",
        "nodes": len(instance.nodes),
        "edges": len(instance.edges),
        "peers": len(instance.peers),
        "status": "ok",
    }


def _cmd_gen_random(args):
    instance = gadgets.random_instance(
        args.nodes, args.peers, args.edge_prob, args.policy, args.seed
    )
    _emit_instance(args, instance)
    return {
        "command": "gen random",
        "seed": args.seed,
        "nodes": len(instance.nodes),
        "edges": len(instance.edges),
        "peers": len(instance.peers),
        "status": "ok",
    }


def _humanize(report, indent=0):
    pad = "  " * indent
    for key, value in report.items():
        if isinstance(value, dict):
            yield f"{pad}{key}:"
            yield from _humanize(value, indent + 1)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            yield f"{pad}{key}:"
            for item in value:
                yield from _humanize(item, indent + 1)
                yield ""
        else:
            yield f"{pad}{key}: {value}"


if __name__ == "__main__":
    sys.exit(main())
