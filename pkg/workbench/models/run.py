from sqlalchemy import Column, DateTime, Integer, String, Text
from sqlalchemy.sql import func
from workbench.db.base import Base


class Run(Base):
    __tablename__ = "runs"
    id = Column(Integer, primary_key=True, index=True)
    subcommand = Column(String(64), index=True, nullable=False)
    argv = Column(Text, nullable=False)
    seed = Column(String(32), nullable=True)
    exit_code = Column(Integer, nullable=False)
    output = Column(Text, nullable=False, default="")
    log = Column(Text, nullable=False, default="")
    created_at = Column(DateTime(timezone=True), server_default=func.now())
