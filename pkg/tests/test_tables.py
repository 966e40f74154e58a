import json
import shutil

import pytest

from weylcalc import tables
from weylcalc.cartan import Weight
from weylcalc.scalars import Concrete, Generic
from weylcalc.tables import (
    ChecksumMismatch, TableRow, check_block, load_fixtures, split_multiple, verify_all, verify_row, write_checksums,
)


@pytest.fixture(scope="module")
def fixtures():
    return load_fixtures()


@pytest.fixture
def fixture_copy(tmp_path):
    dst = tmp_path / "fixtures"
    shutil.copytree(tables.FIXTURE_DIR, dst)
    return dst


def test_all_tables_present(fixtures):
    assert len(fixtures) == 18
    assert sorted(f.number for f in fixtures) == list(range(1, 19))
    assert sum(len(b.rows) for f in fixtures for b in f.blocks) == 502
    generic = [f for f in fixtures if isinstance(f.mode, Generic)]
    assert len(generic) == 7
    assert {f.mode.p for f in fixtures if isinstance(f.mode, Concrete)} == {2, 3, 5, 7}


def test_continued_table_shares_group(fixtures):
    by_id = {f.id: f for f in fixtures}
    assert by_id["small2table2"].group == "small2table1"


def test_split_multiple():
    a = split_multiple((2, 4, 6, 4, 4, 2))
    assert a.coeffs == (1, 2, 3, 2, 2, 1) and a.m == 2
    assert split_multiple((1, 1, 0, 0, 0, 1)) is None


def test_omega1_at_7_row(fixtures):
    """The ω1 block at p=7: [1,2,3,1,2,1] is killed by β = [0,1,2,1,2,1]."""
    fix = next(f for f in fixtures if f.id == "small7table1")
    block = fix.blocks[0]
    assert block.lam == Weight.of(1, 0, 0, 0, 0, 0)
    row = next(r for r in block.rows if r.printed_multiple == (1, 2, 3, 1, 2, 1))
    assert row.kind == "noncontributor" and row.beta == (0, 1, 2, 1, 2, 1)
    assert verify_row(row, Concrete(7)).status == "pass"


def test_everything_verifies(fixtures):
    summary = verify_all(fixtures)
    c = summary.counts()
    assert summary.ok, summary.text()
    assert c["convention_flip"] == 0 and c["rows"] == 1021 and c["blocks"] == 117


def test_only_and_substitute(fixtures):
    s = verify_all(fixtures, only=["pm1table2"], substitute=[13])
    assert s.ok and s.counts()["rows"] == 60


def test_tampered_word_fails_and_reversed_word_flips(fixtures):
    fix = next(f for f in fixtures if f.id == "small7table2")
    row = next(r for b in fix.blocks for r in b.rows if r.kind == "contributor")
    mode = Concrete(7)
    flipped = TableRow(row.lam, row.printed_multiple, row.kind, word=tuple(reversed(row.word)), result=row.result)
    assert verify_row(flipped, mode).status == "convention-flip"
    broken = TableRow(row.lam, row.printed_multiple, row.kind, word=row.word[:-1], result=row.result)
    v = verify_row(broken, mode)
    assert v.status == "fail" and v.diffs


def test_missing_row_is_reported(fixtures):
    fix = next(f for f in fixtures if f.id == "small7table1")
    block = fix.blocks[0]
    check = check_block(fix.id, block.lam, block.rows[1:], Concrete(7))
    assert check.missing == [block.rows[0].printed_multiple] and not check.ok


def test_checksum_drift_detected(fixture_copy):
    path = fixture_copy / "gentable.json"
    path.write_text(path.read_text().replace('"caption"', '"caption" ', 1))
    with pytest.raises(ChecksumMismatch):
        load_fixtures(fixture_copy)
    write_checksums(fixture_copy)
    assert load_fixtures(fixture_copy)


def test_env_override(monkeypatch, fixture_copy):
    monkeypatch.setenv("WEYLCALC_FIXTURES", str(fixture_copy))
    assert tables.fixture_dir() == fixture_copy


def test_junit_and_json(fixtures):
    s = verify_all(fixtures, only=["gentable"], substitute=())
    xml = s.to_junit()
    assert xml.startswith("<testsuite") and 'failures="0"' in xml
    doc = json.loads(json.dumps(s.to_json()))
    assert doc["ok"] and doc["counts"]["failed"] == 0
