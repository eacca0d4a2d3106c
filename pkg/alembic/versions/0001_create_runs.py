"""create runs table

Revision ID: 0001
Revises:
Create Date: 2026-10-19
"""
from alembic import op
import sqlalchemy as sa

revision = "0001"
down_revision = None
branch_labels = None
depends_on = None


def upgrade():
    op.create_table(
        "runs",
        sa.Column("id", sa.Integer(), primary_key=True),
        sa.Column("subcommand", sa.String(length=64), nullable=False),
        sa.Column("argv", sa.Text(), nullable=False),
        sa.Column("seed", sa.String(length=32), nullable=True),
        sa.Column("exit_code", sa.Integer(), nullable=False),
        sa.Column("output", sa.Text(), nullable=False),
        sa.Column("log", sa.Text(), nullable=False),
        sa.Column("created_at", sa.DateTime(timezone=True), server_default=sa.func.now()),
    )
    op.create_index("ix_runs_id", "runs", ["id"])
    op.create_index("ix_runs_subcommand", "runs", ["subcommand"])


def downgrade():
    op.drop_index("ix_runs_subcommand", table_name="runs")
    op.drop_index("ix_runs_id", table_name="runs")
    op.drop_table("runs")
