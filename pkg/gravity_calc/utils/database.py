"""
Results archive: cache page and Cotor computations in SQLite.
"""
import hashlib
import json
import logging
import os
from contextlib import contextmanager
from datetime import datetime, timezone
from typing import Any, Dict, Optional

from sqlalchemy.exc import SQLAlchemyError

from gravity_calc.models import init_db
from gravity_calc.models.metadata import SCHEMA_VERSION, Metadata
from gravity_calc.models.record import PageRecord

DEFAULT_DB_PATH = 'data/gravity_calc.db'


def database_path(config: Dict[str, Any]) -> str:
    return config.get('database', {}).get('path') or DEFAULT_DB_PATH


def initialize_database(config):
    """
    Create the archive if it doesn't exist.

    Args:
        config: Application configuration dictionary

    Returns:
        bool: True if the database was created, False otherwise
    """
    db_path = database_path(config)
    db_dir = os.path.dirname(db_path)
    if db_dir and not os.path.exists(db_dir):
        os.makedirs(db_dir)

    if os.path.exists(db_path):
        logging.info(f"Archive already exists at {db_path}")
        return False

    try:
        Session = init_db(db_path)
        with Session() as session:
            Metadata.set(session, 'schema_version', SCHEMA_VERSION)
        Session.kw['bind'].dispose()
        logging.info(f"Created new archive at {db_path}")
        return True
    except SQLAlchemyError as e:
        logging.error(f"Failed to create archive: {e}")
        return False


@contextmanager
def open_session(config):
    """
    Session on the configured archive, creating it if needed.

    The session is closed and the engine disposed on exit.
    """
    initialize_database(config)
    Session = init_db(database_path(config))
    try:
        with Session() as session:
            yield session
    finally:
        Session.kw['bind'].dispose()


def canonical_request(request: Dict[str, Any]) -> str:
    return json.dumps(request, sort_keys=True, separators=(',', ':'), default=str)


def request_hash(request: Dict[str, Any]) -> str:
    return hashlib.sha256(canonical_request(request).encode('utf-8')).hexdigest()


def store_result(session, request: Dict[str, Any], result: Dict[str, Any]) -> PageRecord:
    """
    Insert or replace the archived result of a request.

    Args:
        session: SQLAlchemy session
        request: the run request (mode, X, p, bounds, ...)
        result: the JSON-ready result payload

    Returns:
        The stored PageRecord
    """
    key = request_hash(request)
    record = session.get(PageRecord, key)
    if record is None:
        record = PageRecord(request_hash=key)
        session.add(record)
    record.mode = str(request.get('mode', ''))
    record.request_json = canonical_request(request)
    record.result_json = json.dumps(result, sort_keys=True)
    record.truncated = bool(result.get('truncated', False))
    try:
        session.commit()
    except SQLAlchemyError as e:
        session.rollback()
        logging.error(f"Failed to archive result: {e}")
        raise
    Metadata.set_last_run(session, datetime.now(timezone.utc).isoformat())
    logging.debug(f"Archived {record}")
    return record


def load_result(session, request: Dict[str, Any]) -> Optional[Dict[str, Any]]:
    """Cached result payload for a request, or None."""
    record = session.get(PageRecord, request_hash(request))
    if record is None:
        return None
    logging.info(f"Using archived result {record.request_hash[:8]}")
    return json.loads(record.result_json)
