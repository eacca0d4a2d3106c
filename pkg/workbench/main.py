import argparse
import logging
import sys
from typing import List, Optional, Sequence

from workbench.cli.commands import COMMAND_MODULES
from workbench.cli.common import USAGE, Emitter, common_options
from workbench.core.config import settings
from workbench.core.errors import WorkbenchError
from workbench.core.log_handler import run_log

# Set up the logging configuration; stdout is reserved for results
log_level = logging.DEBUG if settings.DEBUG else logging.ERROR
logging.basicConfig(level=log_level, stream=sys.stderr)

logger = logging.getLogger(__name__)
logger.setLevel(log_level)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="workbench",
        description="Seeded, reproducible experiments with textbook cryptographic protocols.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = common_options()
    for module in COMMAND_MODULES:
        module.register(subparsers, common)
    return parser


def _enable_debug() -> None:
    """Lower every workbench logger to DEBUG and capture records for the archive."""
    root = logging.getLogger()
    root.setLevel(logging.DEBUG)
    if run_log not in root.handlers:
        root.addHandler(run_log)
    for name in list(logging.root.manager.loggerDict):
        if name.startswith("workbench"):
            logging.getLogger(name).setLevel(logging.DEBUG)


def _seed_of(args: argparse.Namespace) -> Optional[int]:
    return args.seed if getattr(args, "seed", None) is not None else settings.WORKBENCH_SEED


def _archive(args: argparse.Namespace, argv: Sequence[str], exit_code: int, out: Emitter, log: str) -> None:
    from workbench.crud.run import create_run
    from workbench.db.session import get_db, init_db

    init_db()
    with get_db() as db:
        run = create_run(db, args.command, argv, _seed_of(args), exit_code, out.output, log)
    logger.debug(f"archived run {run.id}")


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else 0

    debug = settings.DEBUG or args.debug
    if debug:
        _enable_debug()

    out = Emitter(as_json=args.json)
    try:
        exit_code = args.handler(args, out)
    except WorkbenchError as exc:
        logger.error(f"{args.command} {getattr(args, 'action', '')}: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        exit_code = USAGE

    if settings.ARCHIVE_RUNS and args.command != "runs":
        _archive(args, argv, exit_code, out, run_log.drain() if debug else "")
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
