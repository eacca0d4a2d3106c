import argparse

from workbench.cli.common import FAILED, OK, Emitter, make_rng, natural
from workbench.core.errors import InvalidArgument
from workbench.services.numtheory import ext_gcd_trace, gen_prime, miller_rabin, mod_exp
from workbench.services.rsa import (
    RsaPrivateKey,
    RsaPublicKey,
    rsa_decrypt,
    rsa_encrypt,
    rsa_keygen,
    rsa_keygen_from_primes,
    rsa_sign,
    rsa_verify,
)


def run_keygen(args: argparse.Namespace, out: Emitter) -> int:
    if args.p is not None or args.q is not None:
        if args.p is None or args.q is None:
            raise InvalidArgument("--p and --q go together")
        pk, sk = rsa_keygen_from_primes(args.p, args.q, args.e)
    else:
        pk, sk = rsa_keygen(args.bits, make_rng(args), args.e)
    out.record({"n": pk.n, "e": pk.e, "d": sk.d, "p": sk.p, "q": sk.q, "phi": sk.phi})
    return OK


def run_encrypt(args: argparse.Namespace, out: Emitter) -> int:
    out.value("c", rsa_encrypt(RsaPublicKey(args.n, args.e), args.m))
    return OK


def run_decrypt(args: argparse.Namespace, out: Emitter) -> int:
    out.value("m", rsa_decrypt(RsaPrivateKey(args.n, args.d), args.c))
    return OK


def run_sign(args: argparse.Namespace, out: Emitter) -> int:
    out.value("sig", rsa_sign(RsaPrivateKey(args.n, args.d), args.m))
    return OK


def run_verify(args: argparse.Namespace, out: Emitter) -> int:
    valid = rsa_verify(RsaPublicKey(args.n, args.e), args.m, args.sig)
    out.value("valid", valid)
    return OK if valid else FAILED


def run_prime(args: argparse.Namespace, out: Emitter) -> int:
    out.value("prime", gen_prime(args.bits, make_rng(args)))
    return OK


def run_isprime(args: argparse.Namespace, out: Emitter) -> int:
    out.value("verdict", miller_rabin(args.n, args.rounds).value)
    return OK


def run_euclid(args: argparse.Namespace, out: Emitter) -> int:
    for row in ext_gcd_trace(args.b0, args.b1):
        out.record({"i": row.i, "b": row.b, "x": row.x, "y": row.y, "q": row.q})
    return OK


def run_power(args: argparse.Namespace, out: Emitter) -> int:
    value, cost = mod_exp(args.m, args.e, args.n)
    out.record({"value": value, "squarings": cost.squarings, "multiplications": cost.multiplications})
    return OK


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("rsa", help="raw RSA and the arithmetic beneath it")
    commands = parser.add_subparsers(dest="action", required=True)

    p = commands.add_parser("keygen", parents=[common])
    p.add_argument("--p", type=natural, default=None)
    p.add_argument("--q", type=natural, default=None)
    p.add_argument("--e", type=natural, default=None)
    p.add_argument("--bits", type=int, default=64)
    p.set_defaults(handler=run_keygen)

    for name, handler, value in (("encrypt", run_encrypt, "m"), ("decrypt", run_decrypt, "c"), ("sign", run_sign, "m")):
        p = commands.add_parser(name, parents=[common])
        p.add_argument("--n", type=natural, required=True)
        p.add_argument("--d" if name != "encrypt" else "--e", type=natural, required=True)
        p.add_argument(value, type=natural)
        p.set_defaults(handler=handler)

    p = commands.add_parser("verify", parents=[common])
    p.add_argument("--n", type=natural, required=True)
    p.add_argument("--e", type=natural, required=True)
    p.add_argument("m", type=natural)
    p.add_argument("sig", type=natural)
    p.set_defaults(handler=run_verify)

    p = commands.add_parser("prime", parents=[common], help="random probable prime")
    p.add_argument("--bits", type=int, required=True)
    p.set_defaults(handler=run_prime)

    p = commands.add_parser("isprime", parents=[common], help="Miller-Rabin verdict")
    p.add_argument("n", type=natural)
    p.add_argument("--rounds", type=int, default=None)
    p.set_defaults(handler=run_isprime)

    p = commands.add_parser("euclid", parents=[common], help="extended Euclid table")
    p.add_argument("b0", type=natural)
    p.add_argument("b1", type=natural)
    p.set_defaults(handler=run_euclid)

    p = commands.add_parser("power", parents=[common], help="square-and-multiply with its cost")
    p.add_argument("m", type=natural)
    p.add_argument("e", type=natural)
    p.add_argument("n", type=natural)
    p.set_defaults(handler=run_power)
