import argparse
from pathlib import Path

from workbench.cli.common import OK, Emitter
from workbench.core.errors import InvalidArgument
from workbench.services.classical import (
    Direction,
    HillKey,
    caesar,
    frequency_count,
    hill,
    one_time_pad,
    sample_corpus,
    text_to_letters,
    vigenere,
)


def _direction(args: argparse.Namespace) -> Direction:
    return Direction.DECRYPT if args.decrypt else Direction.ENCRYPT


def _add_direction(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--encrypt", action="store_true", default=True)
    group.add_argument("--decrypt", action="store_true")


def _parse_matrix(text: str) -> HillKey:
    """Rows separated by `;`, entries by `,`: "11,8;3,7"."""
    try:
        rows = tuple(tuple(int(v) for v in row.split(",")) for row in text.split(";"))
    except ValueError as exc:
        raise InvalidArgument(f"cannot read Hill matrix {text!r}: {exc}") from exc
    return HillKey(rows)


def _bits(text: str):
    if any(ch not in "01" for ch in text):
        raise InvalidArgument(f"{text!r} is not a bit string")
    return [int(ch) for ch in text]


def run_caesar(args: argparse.Namespace, out: Emitter) -> int:
    out.value("result", caesar(args.key, args.text, _direction(args)))
    return OK


def run_vigenere(args: argparse.Namespace, out: Emitter) -> int:
    out.value("result", vigenere(args.key, args.text, _direction(args)))
    return OK


def run_hill(args: argparse.Namespace, out: Emitter) -> int:
    out.value("result", hill(_parse_matrix(args.key), args.text, _direction(args)))
    return OK


def run_otp(args: argparse.Namespace, out: Emitter) -> int:
    out.value("result", "".join(str(b) for b in one_time_pad(_bits(args.key), _bits(args.data))))
    return OK


def run_frequency(args: argparse.Namespace, out: Emitter) -> int:
    if args.file:
        text = text_to_letters(Path(args.file).read_text(encoding="utf-8"))
    elif args.text:
        text = text_to_letters(args.text)
    else:
        text = sample_corpus()
    frequencies = frequency_count(text)
    for letter, share in sorted(frequencies.items(), key=lambda item: (-item[1], item[0])):
        out.record({"letter": letter, "frequency": share})
    return OK


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("classical", help="classical ciphers and letter frequencies")
    commands = parser.add_subparsers(dest="action", required=True)

    p = commands.add_parser("caesar", parents=[common])
    p.add_argument("--key", type=int, required=True)
    _add_direction(p)
    p.add_argument("text")
    p.set_defaults(handler=run_caesar)

    p = commands.add_parser("vigenere", parents=[common])
    p.add_argument("--key", required=True)
    _add_direction(p)
    p.add_argument("text")
    p.set_defaults(handler=run_vigenere)

    p = commands.add_parser("hill", parents=[common])
    p.add_argument("--key", required=True, help='matrix rows as "a,b;c,d"')
    _add_direction(p)
    p.add_argument("text")
    p.set_defaults(handler=run_hill)

    p = commands.add_parser("otp", parents=[common])
    p.add_argument("--key", required=True, help="key bits, e.g. 0110")
    p.add_argument("data", help="plaintext or ciphertext bits")
    p.set_defaults(handler=run_otp)

    p = commands.add_parser("frequency", parents=[common], help="letter frequencies (bundled English sample by default)")
    p.add_argument("--file", default=None)
    p.add_argument("text", nargs="?", default=None)
    p.set_defaults(handler=run_frequency)
