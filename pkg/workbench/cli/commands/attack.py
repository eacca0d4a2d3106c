import argparse

from workbench.cli.common import FAILED, OK, Emitter, make_rng, natural
from workbench.schemas.report import AttackResult
from workbench.services.attacks import (
    AttackReport,
    make_wiener_vulnerable_key,
    run_broadcast_attack_e3,
    run_pollard_pm1,
    run_superencryption_cycle,
    run_trial_division,
    run_wiener_attack,
    small_message_attack,
)
from workbench.services.numtheory import gen_prime, power_mod
from workbench.services.rsa import RsaPublicKey


def _emit(report: AttackReport, out: Emitter) -> int:
    result = AttackResult(
        attack=report.attack, succeeded=report.succeeded, recovered=report.recovered, work=report.work
    )
    out.record(result.model_dump())
    return OK if report.succeeded else FAILED


def run_wiener(args: argparse.Namespace, out: Emitter) -> int:
    if args.n is not None and args.e is not None:
        pk = RsaPublicKey(args.n, args.e)
    else:
        pk, _ = make_wiener_vulnerable_key(args.bits, make_rng(args))
        out.record({"n": pk.n, "e": pk.e})
    report = run_wiener_attack(pk)
    if report.succeeded:
        sk = report.recovered
        report = AttackReport(report.attack, True, {"d": sk.d, "p": sk.p, "q": sk.q}, report.work)
    return _emit(report, out)


def run_broadcast(args: argparse.Namespace, out: Emitter) -> int:
    """Demo: one message sent under e = 3 to three receivers with independent moduli."""
    rng = make_rng(args)
    moduli = []
    while len(moduli) < 3:
        p, q = gen_prime(args.bits // 2, rng), gen_prime(args.bits // 2, rng)
        n = p * q
        if p != q and (p - 1) % 3 and (q - 1) % 3 and n not in moduli:
            moduli.append(n)
    m = args.m if args.m is not None else rng.randint(2, min(moduli) - 1)
    ciphertexts = [power_mod(m, 3, n) for n in moduli]
    out.record({"moduli": moduli, "ciphertexts": ciphertexts})
    return _emit(run_broadcast_attack_e3(ciphertexts, moduli), out)


def run_pollard(args: argparse.Namespace, out: Emitter) -> int:
    return _emit(run_pollard_pm1(args.n, args.bound), out)


def run_trial(args: argparse.Namespace, out: Emitter) -> int:
    return _emit(run_trial_division(args.n, args.bound), out)


def run_cycle(args: argparse.Namespace, out: Emitter) -> int:
    return _emit(run_superencryption_cycle(RsaPublicKey(args.n, args.e), args.c, args.max_iters), out)


def run_small_message(args: argparse.Namespace, out: Emitter) -> int:
    m = small_message_attack(RsaPublicKey(args.n, args.e), args.c)
    return _emit(AttackReport("small-message", m is not None, m, 1), out)


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("attack", help="attacks on textbook RSA")
    commands = parser.add_subparsers(dest="action", required=True)

    p = commands.add_parser("wiener", parents=[common], help="continued-fraction attack on small d")
    p.add_argument("--n", type=natural, default=None)
    p.add_argument("--e", type=natural, default=None)
    p.add_argument("--bits", type=int, default=256, help="size of the generated vulnerable key")
    p.set_defaults(handler=run_wiener)

    p = commands.add_parser("broadcast", parents=[common], help="e = 3 sent to three receivers")
    p.add_argument("--bits", type=int, default=128)
    p.add_argument("--m", type=natural, default=None)
    p.set_defaults(handler=run_broadcast)

    p = commands.add_parser("pollard", parents=[common], help="Pollard p-1 factoring")
    p.add_argument("n", type=natural)
    p.add_argument("--bound", type=natural, default=10000)
    p.set_defaults(handler=run_pollard)

    p = commands.add_parser("trial", parents=[common], help="trial division")
    p.add_argument("n", type=natural)
    p.add_argument("--bound", type=natural, default=None)
    p.set_defaults(handler=run_trial)

    p = commands.add_parser("cycle", parents=[common], help="repeated encryption until the ciphertext returns")
    p.add_argument("--n", type=natural, required=True)
    p.add_argument("--e", type=natural, required=True)
    p.add_argument("--max-iters", dest="max_iters", type=int, default=100000)
    p.add_argument("c", type=natural)
    p.set_defaults(handler=run_cycle)

    p = commands.add_parser("small-message", parents=[common], help="plain e-th root when m^e < n")
    p.add_argument("--n", type=natural, required=True)
    p.add_argument("--e", type=natural, required=True)
    p.add_argument("c", type=natural)
    p.set_defaults(handler=run_small_message)
