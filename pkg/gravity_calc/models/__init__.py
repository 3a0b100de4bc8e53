"""
Data models for the gravity calculator.

Geometry and algebra models are plain dataclasses; the results archive uses
SQLAlchemy declarative models registered on `Base`.
"""
from sqlalchemy import create_engine
from sqlalchemy.orm import DeclarativeBase, sessionmaker


class Base(DeclarativeBase):
    pass


def init_db(db_path):
    """
    Create the archive tables in a SQLite file.

    Args:
        db_path: path of the SQLite file

    Returns:
        sessionmaker bound to the database
    """
    from gravity_calc.models import metadata, record  # noqa: F401  registers the tables

    engine = create_engine(f'sqlite:///{db_path}')
    Base.metadata.create_all(engine)
    return sessionmaker(bind=engine)
