import argparse
from math import gcd
from typing import Optional

from workbench.cli.common import FAILED, OK, Emitter, make_rng, natural, resolve_seed
from workbench.core.errors import InvalidArgument
from workbench.core.rng import Rng
from workbench.services.aowf import sigma_cert, sigma_strong, totalize
from workbench.services.classical import text_to_letters
from workbench.services.protocols import (
    DhParams,
    dh_keyagree,
    dh_mitm,
    elgamal_exchange,
    elgamal_signature_exchange,
    hybrid_dh,
    rabi_sherman_exchange,
    rivest_sherman_keyagree,
    shamir_no_key,
)

DEFAULT_P = 2147483647
DEFAULT_G = 7

SIGMAS = {
    "add": lambda a, b: a + b,
    "cert": totalize(sigma_cert),
    "strong": sigma_strong,
}


class _Exponents:
    """Hands out exponents from the command line, drawing missing ones from the seeded rng."""

    def __init__(self, args: argparse.Namespace, modulus: int):
        self._args = args
        self._modulus = modulus
        self._rng: Optional[Rng] = None

    def get(self, name: str, coprime: bool = False) -> int:
        value = getattr(self._args, name, None)
        if value is not None:
            return value
        if self._rng is None:
            self._rng = make_rng(self._args).split(f"protocol-{self._args.action}")
        while True:
            value = self._rng.randint(1, self._modulus - 2)
            if not coprime or gcd(value, self._modulus - 1) == 1:
                return value


def _seed_or_none(args: argparse.Namespace) -> Optional[int]:
    try:
        return resolve_seed(args)
    except InvalidArgument:
        return None


def _params(args: argparse.Namespace) -> DhParams:
    return DhParams(args.p, args.g)


def run_dh(args: argparse.Namespace, out: Emitter) -> int:
    params = _params(args)
    exps = _Exponents(args, params.p)
    t, k_a, k_b = dh_keyagree(params, exps.get("a"), exps.get("b"), _seed_or_none(args))
    out.transcript(t, args.out)
    out.record({"k_alice": k_a, "k_bob": k_b, "agreed": k_a == k_b})
    return OK if k_a == k_b else FAILED


def run_mitm(args: argparse.Namespace, out: Emitter) -> int:
    params = _params(args)
    exps = _Exponents(args, params.p)
    t, keys, detected = dh_mitm(
        params, exps.get("a"), exps.get("b"), exps.get("e1"), exps.get("e2"), _seed_or_none(args)
    )
    out.transcript(t, args.out)
    out.record({
        "k_alice": t.outputs["alice"],
        "k_bob": t.outputs["bob"],
        "erich_with_alice": keys["alice-erich"],
        "erich_with_bob": keys["erich-bob"],
        "detected": detected,
    })
    compromised = keys["alice-erich"] == t.outputs["alice"] and keys["erich-bob"] == t.outputs["bob"]
    return OK if compromised else FAILED


def run_hybrid(args: argparse.Namespace, out: Emitter) -> int:
    params = _params(args)
    exps = _Exponents(args, params.p)
    m = text_to_letters(args.message)
    t = hybrid_dh(params, exps.get("b"), exps.get("a"), m, _seed_or_none(args))
    out.transcript(t, args.out)
    return OK if t.outputs["bob"] == m else FAILED


def run_elgamal(args: argparse.Namespace, out: Emitter) -> int:
    params = _params(args)
    exps = _Exponents(args, params.p)
    t = elgamal_exchange(params, exps.get("b", coprime=True), exps.get("a", coprime=True), args.m, _seed_or_none(args))
    out.transcript(t, args.out)
    return OK if t.outputs["bob"] == args.m else FAILED


def run_elgamal_sign(args: argparse.Namespace, out: Emitter) -> int:
    params = _params(args)
    exps = _Exponents(args, params.p)
    t = elgamal_signature_exchange(
        params, exps.get("b", coprime=True), exps.get("r", coprime=True), args.m, _seed_or_none(args)
    )
    out.transcript(t, args.out)
    return OK if t.outputs["alice"] else FAILED


def run_shamir(args: argparse.Namespace, out: Emitter) -> int:
    exps = _Exponents(args, args.p)
    t = shamir_no_key(
        args.p, exps.get("a", coprime=True), exps.get("b", coprime=True), args.m,
        args.allow_degenerate, _seed_or_none(args),
    )
    out.transcript(t, args.out)
    return OK if t.outputs["bob"] == args.m % args.p else FAILED


def run_rivest_sherman(args: argparse.Namespace, out: Emitter) -> int:
    t, _, _ = rivest_sherman_keyagree(SIGMAS[args.sigma], args.x, args.y, args.z, _seed_or_none(args))
    out.transcript(t, args.out)
    return OK if t.outputs["agreed"] else FAILED


def run_rabi_sherman(args: argparse.Namespace, out: Emitter) -> int:
    t = rabi_sherman_exchange(SIGMAS[args.sigma], args.x, args.y, args.m, _seed_or_none(args))
    out.transcript(t, args.out)
    return OK if t.outputs["bob"] else FAILED


def _group_options(p: argparse.ArgumentParser, *exponents: str) -> None:
    p.add_argument("--p", type=natural, default=DEFAULT_P)
    p.add_argument("--g", type=natural, default=DEFAULT_G)
    for name in exponents:
        p.add_argument(f"--{name}", type=natural, default=None, help="drawn from the seed when omitted")


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("protocol", help="run a two-party protocol and print its transcript")
    commands = parser.add_subparsers(dest="action", required=True)

    p = commands.add_parser("dh", parents=[common], help="Diffie-Hellman key agreement")
    _group_options(p, "a", "b")
    p.set_defaults(handler=run_dh)

    p = commands.add_parser("mitm", parents=[common], help="Diffie-Hellman with Erich in the middle")
    _group_options(p, "a", "b", "e1", "e2")
    p.set_defaults(handler=run_mitm)

    p = commands.add_parser("hybrid", parents=[common], help="Diffie-Hellman key used as a Vigenere key")
    _group_options(p, "a", "b")
    p.add_argument("message")
    p.set_defaults(handler=run_hybrid)

    p = commands.add_parser("elgamal", parents=[common], help="ElGamal encryption")
    _group_options(p, "a", "b")
    p.add_argument("m", type=natural)
    p.set_defaults(handler=run_elgamal)

    p = commands.add_parser("elgamal-sign", parents=[common], help="ElGamal signature")
    _group_options(p, "b", "r")
    p.add_argument("m", type=natural)
    p.set_defaults(handler=run_elgamal_sign)

    p = commands.add_parser("shamir", parents=[common], help="Shamir's no-key protocol")
    p.add_argument("--p", type=natural, default=DEFAULT_P)
    p.add_argument("--a", type=natural, default=None)
    p.add_argument("--b", type=natural, default=None)
    p.add_argument("--allow-degenerate", dest="allow_degenerate", action="store_true")
    p.add_argument("m", type=natural)
    p.set_defaults(handler=run_shamir)

    p = commands.add_parser("rivest-sherman", parents=[common], help="key agreement over a two-argument function")
    p.add_argument("--sigma", choices=sorted(SIGMAS), default="add")
    for name in ("x", "y", "z"):
        p.add_argument(name, type=natural)
    p.set_defaults(handler=run_rivest_sherman)

    p = commands.add_parser("rabi-sherman", parents=[common], help="signature over a two-argument function")
    p.add_argument("--sigma", choices=sorted(SIGMAS), default="add")
    p.add_argument("x", type=natural)
    p.add_argument("y", type=natural)
    p.add_argument("m", type=natural)
    p.set_defaults(handler=run_rabi_sherman)
