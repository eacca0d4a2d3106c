from sqlalchemy.orm import declarative_base

Base = declarative_base()

# Registers the archive table on Base.metadata for init_db() and alembic.
from workbench.models import run  # noqa: E402,F401
