import argparse
from fractions import Fraction
from typing import Callable, List, Tuple

from workbench.cli.common import FAILED, OK, Emitter, make_rng, resolve_seed
from workbench.core.errors import InvalidArgument
from workbench.core.rng import Rng
from workbench.schemas.report import ZkRoundRecord, ZkSummary
from workbench.services.graphs import load_graph, path_graph, star_graph
from workbench.services.zkp import (
    FsSimulator,
    FsVerifier,
    GmwSimulator,
    ProtocolOutcome,
    RoundTriple,
    ZeroProver,
    fs_check,
    fs_fixture_keys,
    fs_keygen,
    fs_protocol,
    gmw_check,
    gmw_fixture,
    gmw_keygen,
    gmw_protocol,
    gni_protocol,
    run_round,
)


def _emit(protocol: str, outcome: ProtocolOutcome, args: argparse.Namespace, out: Emitter) -> int:
    for i, (triple, verdict) in enumerate(zip(outcome.rounds, outcome.verdicts), start=1):
        out.record(ZkRoundRecord(round=i, verdict=verdict, **triple.as_record()).model_dump())
    passed = sum(outcome.verdicts)
    summary = ZkSummary(
        protocol=protocol,
        rounds=len(outcome.rounds),
        accepted=outcome.accepted,
        accept_rate=str(Fraction(passed, len(outcome.rounds))),
        seed=resolve_seed(args),
    )
    out.record(summary.model_dump())
    return OK if outcome.accepted else FAILED


def _simulated(rounds: int, rng: Rng, make_round: Callable[[Rng], RoundTriple],
               check: Callable[[RoundTriple], bool]) -> ProtocolOutcome:
    """Rounds produced by a simulator, judged by the ordinary verifier check."""
    if rounds < 1:
        raise InvalidArgument("a protocol run needs at least one round")
    triples: List[RoundTriple] = [make_round(rng.split(f"round-{i}")) for i in range(rounds)]
    verdicts = [check(t) for t in triples]
    return ProtocolOutcome(accepted=all(verdicts), rounds=triples, verdicts=verdicts)


def _gni_graphs(args: argparse.Namespace) -> Tuple:
    if args.g1 and args.g2:
        return load_graph(args.g1)[0], load_graph(args.g2)[0]
    if args.g1 or args.g2:
        raise InvalidArgument("--g1 and --g2 go together")
    return path_graph(4), star_graph(4)


def run_gni(args: argparse.Namespace, out: Emitter) -> int:
    g1, g2 = _gni_graphs(args)
    strategy = "cheating" if args.impostor else "honest"
    return _emit("gni", gni_protocol(g1, g2, args.rounds, make_rng(args), strategy), args, out)


def run_gmw(args: argparse.Namespace, out: Emitter) -> int:
    rng = make_rng(args)
    if args.vertices:
        public, pi = gmw_keygen(args.vertices, rng.split("keygen"))
    else:
        public, pi = gmw_fixture()
    if args.simulate:
        outcome = _simulated(
            args.rounds, rng, lambda child: GmwSimulator(public, child).round(), lambda t: gmw_check(public, t)
        )
        return _emit("gmw-simulated", outcome, args, out)
    outcome = gmw_protocol(public, args.rounds, rng, None if args.impostor else pi)
    return _emit("gmw", outcome, args, out)


def run_fs(args: argparse.Namespace, out: Emitter) -> int:
    rng = make_rng(args)
    keys = fs_keygen(args.bits, rng.split("keygen")) if args.bits else fs_fixture_keys()
    public = keys.public
    if args.simulate:
        outcome = _simulated(
            args.rounds, rng, lambda child: FsSimulator(public, child).round(),
            lambda t: fs_check(public, t, args.strict),
        )
        return _emit("fiat-shamir-simulated", outcome, args, out)
    if args.zero:
        rounds = []
        for i in range(args.rounds):
            rounds.append(run_round(ZeroProver(), FsVerifier(public, rng.split(f"round-{i}"), args.strict)))
        outcome = ProtocolOutcome(
            accepted=all(v for _, v in rounds), rounds=[t for t, _ in rounds], verdicts=[v for _, v in rounds]
        )
        return _emit("fiat-shamir-zero", outcome, args, out)
    outcome = fs_protocol(public, args.rounds, rng, None if args.impostor else keys.s, args.strict)
    return _emit("fiat-shamir", outcome, args, out)


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("zk", help="interactive proofs and their simulators")
    commands = parser.add_subparsers(dest="action", required=True)

    def base(name: str, help: str) -> argparse.ArgumentParser:
        p = commands.add_parser(name, parents=[common], help=help)
        p.add_argument("--rounds", type=int, default=20)
        p.add_argument("--impostor", action="store_true", help="prover without the secret")
        return p

    p = base("gni", "graph non-isomorphism")
    p.add_argument("--g1", default=None, help="graph file")
    p.add_argument("--g2", default=None, help="graph file")
    p.set_defaults(handler=run_gni)

    p = base("gmw", "zero-knowledge proof of graph isomorphism")
    p.add_argument("--vertices", type=int, default=None, help="random key of this size instead of the fixture")
    p.add_argument("--simulate", action="store_true")
    p.set_defaults(handler=run_gmw)

    p = base("fs", "Fiat-Shamir identification")
    p.add_argument("--bits", type=int, default=None, help="random modulus of this size instead of n = 15")
    p.add_argument("--simulate", action="store_true")
    p.add_argument("--zero", action="store_true", help="prover sending x = y = 0")
    p.add_argument("--strict", action=argparse.BooleanOptionalAction, default=None)
    p.set_defaults(handler=run_fs)
