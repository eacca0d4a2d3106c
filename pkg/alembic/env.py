from logging.config import fileConfig

from sqlalchemy import create_engine, pool
from alembic import context

from workbench.core.config import settings
from workbench.db.base import Base

config = context.config

if config.config_file_name is not None:
    fileConfig(config.config_file_name)


def _migrate(**connection_options) -> None:
    # sqlite cannot ALTER most things in place; batch mode rebuilds the table
    context.configure(target_metadata=Base.metadata, render_as_batch=True, **connection_options)
    with context.begin_transaction():
        context.run_migrations()


if context.is_offline_mode():
    # Emit the run-archive DDL as SQL without a live connection.
    _migrate(url=settings.DATABASE_URL, literal_binds=True, dialect_opts={"paramstyle": "named"})
else:
    engine = create_engine(settings.DATABASE_URL, poolclass=pool.NullPool)
    with engine.connect() as connection:
        _migrate(connection=connection)
