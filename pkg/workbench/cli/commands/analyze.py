import argparse
from pathlib import Path

from workbench.cli.common import FAILED, OK, Emitter, make_rng
from workbench.core.errors import InvalidArgument
from workbench.services.classical import (
    FiniteCryptosystem,
    buchmann_system,
    ciphertext_probability,
    dump_cryptosystem,
    is_perfectly_secret,
    load_cryptosystem,
    one_time_pad_system,
    posterior,
    shannon_conditions,
    shannon_sweep,
)


def _report(system: FiniteCryptosystem, out: Emitter) -> int:
    for c in system.ciphertexts:
        pr_c = ciphertext_probability(system, c)
        out.record({"ciphertext": str(c), "probability": pr_c})
        if pr_c == 0:
            continue
        for p in system.plaintexts:
            out.record({"plaintext": str(p), "given": str(c), "posterior": posterior(system, p, c)})
    verdict = is_perfectly_secret(system)
    summary = {
        "perfectly_secret": verdict.holds,
        "witness": [str(v) for v in verdict.witness] if verdict.witness else None,
    }
    try:
        conditions = shannon_conditions(system)
        summary.update(uniform_keys=conditions.uniform_keys, unique_key_per_pair=conditions.unique_key_per_pair)
    except InvalidArgument:
        # Shannon's hypotheses (|C| = |K|) do not apply to this system
        pass
    out.record(summary)
    return OK


def run_secrecy(args: argparse.Namespace, out: Emitter) -> int:
    return _report(load_cryptosystem(Path(args.file).read_text(encoding="utf-8")), out)


def run_fixture(args: argparse.Namespace, out: Emitter) -> int:
    if args.name == "buchmann":
        system = buchmann_system()
    else:
        system = one_time_pad_system(args.bits)
    if args.dump:
        for line in dump_cryptosystem(system).splitlines():
            out.value("line", line)
        return OK
    return _report(system, out)


def run_sweep(args: argparse.Namespace, out: Emitter) -> int:
    report = shannon_sweep(args.count, make_rng(args))
    out.record({
        "systems": report.systems,
        "perfectly_secret": report.perfectly_secret,
        "mismatches": len(report.mismatches),
    })
    return OK if not report.mismatches else FAILED


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("analyze", help="perfect-secrecy analysis of finite cryptosystems")
    commands = parser.add_subparsers(dest="action", required=True)

    p = commands.add_parser("secrecy", parents=[common], help="analyze a cryptosystem table file")
    p.add_argument("file")
    p.set_defaults(handler=run_secrecy)

    p = commands.add_parser("fixture", parents=[common], help="analyze a built-in system")
    p.add_argument("name", choices=["buchmann", "otp"])
    p.add_argument("--bits", type=int, default=2)
    p.add_argument("--dump", action="store_true", help="print the table instead of analyzing it")
    p.set_defaults(handler=run_fixture)

    p = commands.add_parser("sweep", parents=[common], help="Shannon equivalence over random small systems")
    p.add_argument("--count", type=int, default=200)
    p.set_defaults(handler=run_sweep)
