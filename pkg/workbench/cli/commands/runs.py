import argparse

from workbench.cli.common import FAILED, OK, Emitter
from workbench.crud import run as crud_run
from workbench.db.session import get_db, init_db
from workbench.schemas.run import RunDetail, RunResponse


def _summary(run) -> dict:
    return RunResponse.model_validate(run).model_dump(mode="json")


def run_list(args: argparse.Namespace, out: Emitter) -> int:
    init_db()
    with get_db() as db:
        for run in crud_run.list_runs(db, offset=args.offset, limit=args.limit):
            out.record(_summary(run))
    return OK


def run_show(args: argparse.Namespace, out: Emitter) -> int:
    init_db()
    with get_db() as db:
        run = crud_run.get_run(db, args.id)
    if run is None:
        out.record({"id": args.id, "found": False})
        return FAILED
    detail = RunDetail.model_validate(run)
    if args.log:
        for line in detail.log.splitlines():
            out.value("log", line)
        return OK
    out.record(_summary(run))
    for line in detail.output.splitlines():
        out.value("output", line)
    return OK


def run_delete(args: argparse.Namespace, out: Emitter) -> int:
    init_db()
    with get_db() as db:
        deleted = crud_run.delete_run(db, args.id)
    out.record({"id": args.id, "deleted": bool(deleted)})
    return OK if deleted else FAILED


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("runs", help="archived runs (see ARCHIVE_RUNS)")
    commands = parser.add_subparsers(dest="action", required=True)

    p = commands.add_parser("list", parents=[common])
    p.add_argument("--offset", type=int, default=0)
    p.add_argument("--limit", type=int, default=100)
    p.set_defaults(handler=run_list)

    p = commands.add_parser("show", parents=[common])
    p.add_argument("id", type=int)
    p.add_argument("--log", action="store_true", help="print the captured debug log instead")
    p.set_defaults(handler=run_show)

    p = commands.add_parser("delete", parents=[common])
    p.add_argument("id", type=int)
    p.set_defaults(handler=run_delete)
