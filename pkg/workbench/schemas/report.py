from pydantic import BaseModel
from typing import Any, List, Optional


class PropertyCheckResult(BaseModel):
    property: str
    domain_size: int
    holds: bool
    witness: Optional[List[Any]] = None


class AttackResult(BaseModel):
    attack: str
    succeeded: bool
    recovered: Optional[Any] = None
    work: int = 0


class ZkRoundRecord(BaseModel):
    round: int
    commitment: Any
    challenge: int
    response: Any
    verdict: bool


class ZkSummary(BaseModel):
    protocol: str
    rounds: int
    accepted: bool
    accept_rate: str
    seed: int
