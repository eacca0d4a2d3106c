from pydantic import BaseModel
from datetime import datetime
from typing import Optional


class RunResponse(BaseModel):
    id: int
    subcommand: str
    argv: str
    seed: Optional[str] = None
    exit_code: int
    created_at: Optional[datetime] = None

    class Config:
        from_attributes = True


class RunDetail(RunResponse):
    output: str
    log: str
