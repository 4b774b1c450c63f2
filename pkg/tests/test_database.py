"""
Unit tests for the run ledger.
"""
import json

import pytest

from database import delete_run, get_cases_for_run, get_failed_cases, get_runs, save_report, use_db
from valuedomain import EQUAL, NOT_EQUAL, PROBABLY_EQUAL
from verifier import CONJECTURAL, PROVED, SKIPPED, CaseRecord, Report


def _report(suite="sweep"):
    cases = [
        CaseRecord("BD.AB", "CD.AC", 0, EQUAL, CONJECTURAL),
        CaseRecord("BD.AB", "CD.AC", 1, PROBABLY_EQUAL, CONJECTURAL, mode="modp"),
        CaseRecord("CD.BD.AB", "CD.AC.AB", 2, NOT_EQUAL, CONJECTURAL, witness={"q": "2", "B": "3"}),
    ]
    return Report(suite, {"mode": "grid", "seed": 7}, cases)


@pytest.mark.unit
class TestRunLedger:
    """Tests for storing and reading verification runs."""

    def test_save_report(self):
        """Test that a run and its summary are stored."""
        run_id = save_report(_report())
        runs = get_runs()
        assert len(runs) == 1
        stored = runs[0]
        assert stored[0] == run_id
        assert stored[1] == "sweep"
        assert stored[2] == "grid"
        assert stored[3] == 7
        assert stored[5:] == (3, 1, 1, 1, 0, 0)

    def test_unverified_count(self):
        """Test that skipped proved cases are stored as unverified."""
        cases = [CaseRecord("BC", "BC", 0, SKIPPED, PROVED), CaseRecord("BC", "BC", 1, SKIPPED, CONJECTURAL)]
        save_report(Report("s41", {"mode": "grid", "seed": 0}, cases))
        assert get_runs()[0][9:] == (2, 1)

    def test_get_runs_newest_first(self):
        """Test ordering and the limit."""
        first = save_report(_report("s41"))
        second = save_report(_report("s44"))
        assert [row[0] for row in get_runs()] == [second, first]
        assert len(get_runs(limit=1)) == 1

    def test_get_cases_for_run(self):
        """Test that cases come back in their original order."""
        run_id = save_report(_report())
        cases = get_cases_for_run(run_id)
        assert [case[2] for case in cases] == [0, 1, 2]
        assert cases[0][3] == EQUAL
        assert cases[0][5] is None

    def test_witness_is_json(self):
        """Test that witnesses are stored as JSON text."""
        run_id = save_report(_report())
        failed = get_failed_cases(run_id)
        assert len(failed) == 1
        assert json.loads(failed[0][5]) == {"B": "3", "q": "2"}

    def test_get_failed_cases_across_runs(self):
        """Test that failures from every run are listed without a run id."""
        save_report(_report())
        save_report(_report())
        assert len(get_failed_cases()) == 2

    def test_delete_run(self):
        """Test that a run and its cases are removed."""
        run_id = save_report(_report())
        delete_run(run_id)
        assert get_runs() == []
        assert get_cases_for_run(run_id) == []

    def test_cases_cascade_with_run(self):
        """Test that removing a run row removes its cases."""
        kept = save_report(_report())
        dropped = save_report(_report())
        with use_db("write") as cursor:
            cursor.execute("DELETE FROM runs WHERE id = ?", (dropped,))
        assert get_cases_for_run(dropped) == []
        assert len(get_cases_for_run(kept)) == 3


@pytest.mark.unit
class TestUseDb:
    """Tests for the connection context manager."""

    def test_invalid_mode(self):
        """Test that only read and write are accepted."""
        with pytest.raises(ValueError):
            with use_db("append"):
                pass

    def test_rollback_on_error(self):
        """Test that a failed write leaves no partial rows."""
        with pytest.raises(RuntimeError):
            with use_db("write") as cursor:
                cursor.execute(
                    "INSERT INTO runs (suite, mode, seed, created, total, equal, probable, failed, skipped) "
                    "VALUES ('x', 'grid', 0, 'now', 0, 0, 0, 0, 0)"
                )
                raise RuntimeError("interrupted")
        assert get_runs() == []
