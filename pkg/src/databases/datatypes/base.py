"""Lookups shared by registry tables.

Every registry table carries a UUID ``id`` and a ``created_at`` stamp, and
rows written from a manifest remember it in ``source_file``.
"""

from typing import Any, TypeVar

from sqlmodel import Session, SQLModel, func, select

T = TypeVar("T", bound=SQLModel)


class BaseRepository:
    """Holds the session and the id, provenance and recency lookups."""

    def __init__(self, session: Session):
        self.session = session

    def find_by_source_file(self, model: type[T], source_file: str | None) -> T | None:
        """The row already recorded from the same manifest, if any."""
        if not source_file:
            return None
        return self.session.exec(select(model).where(model.source_file == source_file)).first()

    def find_by_id_prefix(self, model: type[T], prefix: str) -> T | None:
        """The single row whose id starts with ``prefix``.

        Prefixes may be written with or without the UUID hyphens. An empty,
        unmatched or ambiguous prefix gives None.
        """
        wanted = prefix.replace("-", "").lower()
        if not wanted:
            return None
        ids = self.session.exec(select(model.id)).all()
        matches = [i for i in ids if i.hex.startswith(wanted)]
        if len(matches) != 1:
            return None
        return self.session.get(model, matches[0])

    def newest_first(self, model: type[T], **equal_to: Any) -> list[T]:
        """Rows ordered by ``created_at`` descending; None-valued filters are ignored."""
        statement = select(model)
        for column, value in equal_to.items():
            if value is not None:
                statement = statement.where(getattr(model, column) == value)
        statement = statement.order_by(model.created_at.desc())
        return list(self.session.exec(statement).all())

    def count(self, model: type[T]) -> int:
        return int(self.session.exec(select(func.count()).select_from(model)).one())
