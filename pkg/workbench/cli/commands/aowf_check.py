import argparse
from typing import Callable, Dict, List

from workbench.cli.common import FAILED, OK, Emitter
from workbench.schemas.report import PropertyCheckResult
from workbench.services.aowf import (
    certificate_domain,
    check_associative,
    check_commutative,
    check_overstrong_candidate,
    check_weakly_associative,
    shift_domain,
    sigma_cert,
    sigma_strong,
    totalize,
    universal_inverter_for_sigma_strong,
    weakly_but_not_associative,
)
from workbench.services.graphs import Graph, complete_graph, cycle_graph, load_graph, path_graph

NAMED_GRAPHS: Dict[str, Callable[[], Graph]] = {
    "k3": lambda: complete_graph(3),
    "p3": lambda: path_graph(3),
    "c5": lambda: cycle_graph(5),
}

CHECKS = {
    "associative": check_associative,
    "commutative": check_commutative,
    "weak": check_weakly_associative,
}


def _graph(name: str) -> Graph:
    if name.lower() in NAMED_GRAPHS:
        return NAMED_GRAPHS[name.lower()]()
    graph, _ = load_graph(name)
    return graph


def _emit(results: List[PropertyCheckResult], out: Emitter) -> int:
    for result in results:
        out.record(result.model_dump())
    return OK if all(r.holds for r in results) else FAILED


def run_cert(args: argparse.Namespace, out: Emitter) -> int:
    domain = certificate_domain(_graph(args.graph), args.size)
    sigma = sigma_cert
    if args.totalize:
        sigma, domain = totalize(sigma_cert), shift_domain(domain)
    names = list(CHECKS) if args.property == "all" else [args.property]
    return _emit([CHECKS[name](sigma, domain) for name in names], out)


def run_strong(args: argparse.Namespace, out: Emitter) -> int:
    domain = list(range(args.bound))
    results = [
        check_commutative(sigma_strong, domain),
        check_overstrong_candidate(
            sigma_strong, lambda i, z, a: universal_inverter_for_sigma_strong(z), domain
        ),
    ]
    return _emit(results, out)


def run_control(args: argparse.Namespace, out: Emitter) -> int:
    """Reports both checks for the weak-only function; exit status follows the associativity check."""
    control = weakly_but_not_associative()
    results = [
        check_weakly_associative(control, control.domain),
        check_associative(control, control.domain),
    ]
    _emit(results, out)
    return OK if results[0].holds and not results[1].holds else FAILED


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("aowf-check", help="exhaustive property checks on two-argument functions")
    commands = parser.add_subparsers(dest="action", required=True)

    p = commands.add_parser("cert", parents=[common], help="the three-colorability certificate function")
    p.add_argument("graph", help="k3, p3, c5 or a graph file")
    p.add_argument("--property", choices=[*CHECKS, "all"], default="all")
    p.add_argument("--totalize", action="store_true", help="check the total version on shifted encodings")
    p.add_argument("--size", type=int, default=30, help="domain elements (size^3 triples)")
    p.set_defaults(handler=run_cert)

    p = commands.add_parser("strong", parents=[common], help="odd/even construction and its universal inverter")
    p.add_argument("--bound", type=int, default=60)
    p.set_defaults(handler=run_strong)

    p = commands.add_parser("control", parents=[common], help="weakly but not fully associative function")
    p.set_defaults(handler=run_control)
