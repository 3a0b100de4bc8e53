"""
Tests for the results archive.
"""
import pytest

from gravity_calc.models.metadata import SCHEMA_VERSION, Metadata
from gravity_calc.models.record import PageRecord
from gravity_calc.utils.database import (
    database_path,
    initialize_database,
    load_result,
    open_session,
    request_hash,
    store_result,
)

REQUEST = {'mode': 'e2', 'X': [1], 'p': 2, 'max_s': 3, 'max_degree': 8, 'max_weight': 4}
RESULT = {'pages': {'E2': {'0,0': 1, '-1,2': 1}}, 'truncated': False, 'box': {'max_s': 3}}


@pytest.fixture
def config(tmp_path):
    """Configuration pointing the archive at a temporary directory."""
    return {'database': {'enabled': True, 'path': str(tmp_path / 'archive' / 'test.db')}}


@pytest.fixture
def session(config):
    with open_session(config) as session:
        yield session


def test_database_path_default():
    assert database_path({}) == 'data/gravity_calc.db'
    assert database_path({'database': {'path': 'x.db'}}) == 'x.db'


def test_initialize_database(config):
    """Test that the archive is created once, with its schema version."""
    assert initialize_database(config) is True
    assert initialize_database(config) is False
    with open_session(config) as session:
        assert Metadata.get_schema_version(session) == SCHEMA_VERSION


def test_request_hash_ignores_key_order():
    """Test that equal requests hash equally."""
    shuffled = dict(reversed(list(REQUEST.items())))
    assert request_hash(shuffled) == request_hash(REQUEST)
    assert request_hash(dict(REQUEST, p=3)) != request_hash(REQUEST)


def test_store_and_load_result(session):
    """Test the archive round trip and the last-run stamp."""
    assert load_result(session, REQUEST) is None
    record = store_result(session, REQUEST, RESULT)
    assert record.mode == 'e2'
    assert not record.truncated
    assert load_result(session, REQUEST) == RESULT
    assert Metadata.get_last_run(session) is not None


def test_store_result_replaces(session):
    """Test that storing a request twice keeps one record with the newer result."""
    store_result(session, REQUEST, RESULT)
    newer = dict(RESULT, truncated=True)
    store_result(session, REQUEST, newer)
    assert session.query(PageRecord).count() == 1
    assert load_result(session, REQUEST) == newer
    assert session.get(PageRecord, request_hash(REQUEST)).truncated


def test_metadata_set_and_get(session):
    Metadata.set(session, 'note', 'first')
    Metadata.set(session, 'note', 'second')
    assert Metadata.get(session, 'note') == 'second'
    assert Metadata.get(session, 'missing') is None


def test_open_session_releases_connections(config):
    """Test that leaving the block ends the transaction and returns every connection."""
    with open_session(config) as session:
        store_result(session, REQUEST, RESULT)
        assert load_result(session, REQUEST) == RESULT
        engine = session.get_bind()
    assert not session.in_transaction()
    assert engine.pool.checkedout() == 0
    with open_session(config) as session:
        assert load_result(session, REQUEST) == RESULT
