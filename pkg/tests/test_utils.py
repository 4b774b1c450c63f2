"""
Tests for utility functions and the configuration loader.
"""
import json
import time
from fractions import Fraction

import pytest

from config import GRID_BUDGET, GRID_K_MAX, GRID_N_MAX, MODP_K_MAX, MODP_N_MAX, load_config
from utils import SuiteName, parse_ints, parse_point, run_parallel, timed


@pytest.mark.unit
class TestRunParallel:
    """Tests for run_parallel."""

    def test_serial(self):
        """Test the serial path."""
        assert run_parallel(lambda x: x * x, [1, 2, 3]) == [1, 4, 9]

    def test_threads_keep_order(self):
        """Test that results follow the input order even when later items finish first."""
        def slow_for_small(x):
            time.sleep(0.01 * (5 - x))
            return x

        assert run_parallel(slow_for_small, range(5), threads=3) == [0, 1, 2, 3, 4]


@pytest.mark.unit
class TestTimed:
    """Tests for the timed decorator."""

    def test_returns_result_and_ms(self):
        """Test that the wrapper returns the result with the elapsed time."""
        @timed("double")
        def double(x):
            return 2 * x

        result, ms = double(21)
        assert result == 42
        assert ms >= 0

    def test_preserves_name(self):
        """Test that functools.wraps keeps the wrapped name."""
        @timed("noop")
        def noop():
            return None

        assert noop.__name__ == "noop"


@pytest.mark.unit
class TestParsing:
    """Tests for the command-line value parsers."""

    def test_parse_point(self):
        """Test rational values and whitespace."""
        assert parse_point("q=2, B=3/5") == {"q": Fraction(2), "B": Fraction(3, 5)}

    def test_parse_point_rejects_unknown_variable(self):
        """Test that names outside q, B, C, D, z are rejected."""
        with pytest.raises(ValueError):
            parse_point("x=1")

    def test_parse_point_rejects_missing_value(self):
        """Test that an entry without '=' is rejected."""
        with pytest.raises(ValueError):
            parse_point("q")

    def test_parse_ints(self):
        """Test commas and spaces as separators."""
        assert parse_ints("1,2 3") == [1, 2, 3]

    def test_suite_names(self):
        """Test that suite names print as their command-line value."""
        assert str(SuiteName.SECTION3) == "section3"
        assert SuiteName("s41") is SuiteName.S41


@pytest.mark.unit
class TestLoadConfig:
    """Tests for load_config."""

    def test_defaults(self, monkeypatch):
        """Test the defaults without environment overrides."""
        monkeypatch.delenv("QDUAL_THREADS", raising=False)
        monkeypatch.delenv("QDUAL_SEED", raising=False)
        monkeypatch.delenv("QDUAL_DB_PATH", raising=False)
        config = load_config()
        assert config.mode == "grid"
        assert config.grid_budget == GRID_BUDGET
        assert config.db_path is None

    def test_none_overrides_ignored(self):
        """Test that flags left unset do not override."""
        assert load_config(mode=None, seed=5).seed == 5

    def test_environment(self, monkeypatch):
        """Test QDUAL_SEED and the QDUAL_THREADS cap."""
        monkeypatch.setenv("QDUAL_SEED", "11")
        monkeypatch.setenv("QDUAL_THREADS", "2")
        config = load_config(threads=8)
        assert config.seed == 11
        assert config.threads == 2

    def test_json_file(self, tmp_path):
        """Test a JSON config file."""
        path = tmp_path / "qdual.json"
        path.write_text(json.dumps({"mode": "modp", "trials": 5}))
        config = load_config(str(path))
        assert config.mode == "modp"
        assert config.trials == 5

    def test_unknown_key(self, tmp_path):
        """Test that unknown keys are rejected."""
        path = tmp_path / "qdual.json"
        path.write_text(json.dumps({"colour": "blue"}))
        with pytest.raises(ValueError):
            load_config(str(path))

    def test_invalid_mode(self):
        """Test that an unknown backend is rejected."""
        with pytest.raises(ValueError):
            load_config(mode="fuzzy")

    def test_modp_sweep_budgets(self):
        """Test that modp mode widens the default sweep budgets unless they are set."""
        grid = load_config(mode="grid")
        assert (grid.k_max, grid.n_max) == (GRID_K_MAX, GRID_N_MAX)
        modp = load_config(mode="modp")
        assert (modp.k_max, modp.n_max) == (MODP_K_MAX, MODP_N_MAX) == (4, 3)
        assert load_config(mode="modp", k_max=2).k_max == 2

    def test_modp_budgets_respect_file(self, tmp_path):
        """Test that budgets from a JSON file win over the modp defaults."""
        path = tmp_path / "qdual.json"
        path.write_text(json.dumps({"mode": "modp", "n_max": 1}))
        config = load_config(str(path))
        assert config.n_max == 1
        assert config.k_max == MODP_K_MAX

    @pytest.mark.parametrize("overrides", [{"trials": 0}, {"grid_budget": 0}, {"m_q": 0}, {"m_z": -1}, {"prime": 2}])
    def test_rejects_out_of_range(self, overrides):
        """Test that nonsensical budgets are rejected."""
        with pytest.raises(ValueError):
            load_config(**overrides)

    def test_report_dict(self):
        """Test the report-facing subset."""
        data = load_config(seed=3).as_dict()
        assert data["seed"] == 3
        assert set(data["budgets"]) == {"grid", "k_max", "n_max", "m_q", "m_z"}
