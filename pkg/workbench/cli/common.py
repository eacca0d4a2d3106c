"""Pieces every subcommand shares: common flags, seed resolution and output."""
import argparse
import json
import sys
from fractions import Fraction
from typing import Any, List, Mapping, Optional, TextIO

from workbench.core.config import settings
from workbench.core.errors import InvalidArgument
from workbench.core.rng import Rng
from workbench.schemas.transcript import Transcript, encode_value, transcript_lines, transcript_write

# Exit codes
OK = 0
USAGE = 2
FAILED = 3

MAX_SEED = 2 ** 64 - 1


def common_options() -> argparse.ArgumentParser:
    """Parent parser attached to every leaf subcommand."""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--seed", type=int, default=None, help="64-bit seed (falls back to WORKBENCH_SEED)")
    parent.add_argument("--json", action="store_true", help="emit JSON lines instead of key=value text")
    parent.add_argument("--out", default=None, help="write the transcript to this path")
    parent.add_argument("--debug", action="store_true", help="DEBUG logging, captured into the run archive")
    return parent


def natural(text: str) -> int:
    """argparse type accepting decimal or 0x-hex naturals."""
    try:
        value = int(text, 16) if text.lower().startswith("0x") else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a natural number")
    if value < 0:
        raise argparse.ArgumentTypeError(f"{text!r} is negative")
    return value


def resolve_seed(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else settings.WORKBENCH_SEED
    if seed is None:
        raise InvalidArgument(f"`{args.command}` draws random values; pass --seed or set WORKBENCH_SEED")
    if not 0 <= seed <= MAX_SEED:
        raise InvalidArgument(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def make_rng(args: argparse.Namespace) -> Rng:
    return Rng(resolve_seed(args))


def _plain(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return hex(value)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(encode_value(value), sort_keys=True)
    if value is None:
        return "-"
    return str(value)


class Emitter:
    """
    Writes a run's stdout and keeps a copy for the archive.

    Records are JSON objects with `--json`, `key=value` lines otherwise.
    """

    def __init__(self, as_json: bool, stream: Optional[TextIO] = None):
        self.as_json = as_json
        self._stream = stream if stream is not None else sys.stdout
        self.lines: List[str] = []

    def _write(self, line: str) -> None:
        self.lines.append(line)
        print(line, file=self._stream)

    def record(self, values: Mapping[str, Any]) -> None:
        if self.as_json:
            self._write(json.dumps(encode_value(dict(values)), sort_keys=True))
        else:
            self._write(" ".join(f"{key}={_plain(value)}" for key, value in values.items()))

    def value(self, key: str, value: Any) -> None:
        """A single result: bare in text mode, {key: value} in JSON mode."""
        if self.as_json:
            self.record({key: value})
        else:
            self._write(value if isinstance(value, str) else _plain(value))

    def transcript(self, t: Transcript, path: Optional[str]) -> None:
        if path:
            transcript_write(t, path)
            self.record({"transcript": path, "messages": len(t.messages)})
        else:
            for line in transcript_lines(t):
                self._write(line)

    @property
    def output(self) -> str:
        return "\n".join(self.lines)
