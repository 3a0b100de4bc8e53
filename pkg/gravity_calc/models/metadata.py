"""
Key/value metadata for the results archive.
"""
from sqlalchemy import String
from sqlalchemy.orm import Mapped, mapped_column

from . import Base

SCHEMA_VERSION = '1'


class Metadata(Base):
    """
    Model for storing archive metadata.
    """
    __tablename__ = 'metadata'

    key: Mapped[str] = mapped_column(String(50), primary_key=True)
    value: Mapped[str] = mapped_column(String(255), nullable=True)

    def __repr__(self):
        return f"<Metadata {self.key}: {self.value}>"

    @classmethod
    def get(cls, session, key):
        record = session.get(cls, key)
        return record.value if record else None

    @classmethod
    def set(cls, session, key, value):
        """
        Create or update a metadata entry and commit.

        Returns:
            The updated or new Metadata instance
        """
        record = session.get(cls, key)
        if record:
            record.value = str(value)
        else:
            record = cls(key=key, value=str(value))
            session.add(record)
        session.commit()
        return record

    @classmethod
    def get_schema_version(cls, session):
        return cls.get(session, 'schema_version')

    @classmethod
    def set_last_run(cls, session, timestamp):
        return cls.set(session, 'last_run', timestamp)

    @classmethod
    def get_last_run(cls, session):
        return cls.get(session, 'last_run')
