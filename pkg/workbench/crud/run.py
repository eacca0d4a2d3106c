import json
from typing import List, Optional, Sequence

from sqlalchemy import delete, select
from sqlalchemy.orm import Session

from workbench.models.run import Run


def create_run(db: Session, subcommand: str, argv: Sequence[str], seed: Optional[int], exit_code: int,
               output: str, log: str = "") -> Run:
    run = Run(
        subcommand=subcommand,
        argv=json.dumps(list(argv)),
        seed=None if seed is None else str(seed),
        exit_code=exit_code,
        output=output,
        log=log,
    )
    db.add(run)
    db.commit()
    db.refresh(run)
    return run


def get_run(db: Session, run_id: int) -> Optional[Run]:
    result = db.execute(select(Run).where(Run.id == run_id))
    return result.scalars().first()


def list_runs(db: Session, offset: int = 0, limit: int = 100) -> List[Run]:
    result = db.execute(select(Run).order_by(Run.id).offset(offset).limit(limit))
    return list(result.scalars().all())


def delete_run(db: Session, run_id: int) -> int:
    result = db.execute(delete(Run).where(Run.id == run_id))
    db.commit()
    return result.rowcount
