"""Tests for the cli_report module."""

import json
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from src.cli_report import main as cli
from src.cli_report.config import (
    CHECK_KINDS,
    CaseConfig,
    SuiteConfig,
    load_suite,
    parse_split,
    parse_suite,
)
from src.cli_report.emit import COLUMNS, SUMMARY_FILE, emit_report
from src.cli_report.fixtures import gen_fixture, profile_transform
from src.cli_report.suite import CaseOutcome, Skipped, exit_status, run_case, run_suite
from src.common import ConfigError
from src.common.types import Result
from src.grid_domain import MaskedGrid, read_grid_function
from src.inequality_harness import Tolerances, VerificationReport
from src.rearrangement import StepProfile

SUITE_TEXT = """\
[suite]
seed = 4
strict = true

[case b-square]
shape = rectangle 0 1 0 1
split = 1,1
h = 0.0625
function = tent-sum(2)
checks = hl, ps

[case a-line]
shape = interval 0 1
h = 0.03125
function = bump
w = square
seed = 9
"""

LINE_CASE = CaseConfig("line", "interval -1 1", 1.0 / 32, function="bump", checks=("hl",))


def _outcome(*reports: VerificationReport, skipped: tuple[Skipped, ...] = ()) -> CaseOutcome:
    outcome = CaseOutcome("c", 0.1, 0)
    outcome.reports = [("hl", r.with_metadata(case="c", h=0.1)) for r in reports]
    outcome.skipped = list(skipped)
    return outcome


class TestSuiteConfig:
    """Test parsing of suite files."""

    def test_parse(self) -> None:
        """Cases come out sorted by id with suite defaults filled in."""
        config = parse_suite(SUITE_TEXT)
        assert [c.case_id for c in config.cases] == ["a-line", "b-square"]
        line, square = config.cases
        assert config.strict
        assert line.seed == 9
        assert line.w == "square"
        assert line.checks == CHECK_KINDS
        assert square.seed == 4
        assert square.split == (1, 1)
        assert square.checks == ("hl", "ps")

    def test_duplicate_case_id(self) -> None:
        """A repeated case id is reported with the line of the repeat."""
        text = "[case a]\nshape = disk 1\n\n[case a]\nshape = disk 1\n"
        with pytest.raises(ConfigError, match="duplicate case id") as info:
            parse_suite(text)
        assert info.value.line == 4

    def test_missing_shape(self) -> None:
        """Every case names its domain."""
        with pytest.raises(ConfigError, match="missing key 'shape'") as info:
            parse_suite("[suite]\nseed = 1\n[case a]\nh = 0.1\n")
        assert info.value.code == "bad config"
        assert info.value.line == 3

    def test_unknown_check(self) -> None:
        """Check names must be known."""
        with pytest.raises(ConfigError, match="unknown checks"):
            parse_suite("[case a]\nshape = disk 1\nchecks = hl, sideways\n")

    def test_unknown_section(self) -> None:
        """Only [suite] and [case <id>] sections are allowed."""
        with pytest.raises(ConfigError, match="unknown section"):
            parse_suite("[cases]\nshape = disk 1\n")

    def test_nonpositive_spacing(self) -> None:
        """h must be positive."""
        with pytest.raises(ConfigError, match="h must be positive"):
            parse_suite("[case a]\nshape = disk 1\nh = 0\n")

    def test_split(self) -> None:
        """Splits are 'n,m' or none."""
        assert parse_split("none") is None
        assert parse_split("") is None
        assert parse_split("1, 1") == (1, 1)
        with pytest.raises(ConfigError):
            parse_split("1;1")

    def test_overrides(self) -> None:
        """Command-line values replace file values."""
        config = parse_suite(SUITE_TEXT).with_overrides(
            out=Path("elsewhere"), strict=False, seed=2, h=0.25
        )
        assert config.out == Path("elsewhere")
        assert not config.strict
        assert {c.seed for c in config.cases} == {2}
        assert {c.h for c in config.cases} == {0.25}
        with pytest.raises(ConfigError):
            config.with_overrides(h=-1.0)

    def test_bundled_suite(self) -> None:
        """The bundled suite parses and covers every check kind."""
        config = load_suite(cli.DEFAULT_SUITE)
        ids = [c.case_id for c in config.cases]
        assert ids == sorted(ids)
        assert set().union(*(c.checks for c in config.cases)) == set(CHECK_KINDS)


class TestFixtures:
    """Test named fixture functions and W transforms."""

    def test_seeded(self, unit_square: MaskedGrid) -> None:
        """The same seed gives the same function; another seed another one."""
        a = gen_fixture("tent-sum(3)", unit_square, 1)
        b = gen_fixture("tent-sum(3)", unit_square, 1)
        c = gen_fixture("tent-sum(3)", unit_square, 2)
        assert np.array_equal(a.values, b.values)
        assert not np.array_equal(a.values, c.values)

    def test_cone_peak(self, unit_disk: MaskedGrid) -> None:
        """The cone is 1 - r around the box center."""
        u = gen_fixture("cone", unit_disk)
        assert u.max == pytest.approx(1.0, abs=unit_disk.h)
        assert u.values.min() >= 0.0

    def test_indicator(self, unit_disk: MaskedGrid) -> None:
        """Indicators take 0 and 1 only."""
        u = gen_fixture("indicator(disk 0.5)", unit_disk)
        assert set(np.unique(u.values)) == {0.0, 1.0}
        assert np.sum(u.values) * unit_disk.cell_measure == pytest.approx(np.pi / 4, rel=0.05)

    @pytest.mark.parametrize("spec", ["pyramid", "constant()", "plane(1,2)", "tent-sum(x)"])
    def test_bad_spec(self, spec: str, unit_square: MaskedGrid) -> None:
        """Unknown names and wrong arities are refused."""
        with pytest.raises(ConfigError, match="bad function spec"):
            gen_fixture(spec, unit_square)

    def test_profile_transforms(self) -> None:
        """W is a function of u*."""
        ustar = StepProfile(np.array([0.0, 1.0, 2.0]), np.array([3.0, 1.0]))
        assert np.allclose(profile_transform("u*")(ustar).values, [3.0, 1.0])
        assert np.allclose(profile_transform("square")(ustar).values, [9.0, 1.0])
        assert np.allclose(profile_transform("scale(2)")(ustar).values, [6.0, 2.0])
        assert np.allclose(profile_transform("min(2)")(ustar).values, [2.0, 1.0])
        with pytest.raises(ConfigError):
            profile_transform("cube")


class TestSuiteRun:
    """Test running cases and deciding the exit status."""

    def test_run_case(self) -> None:
        """Reports carry the case metadata."""
        outcome = run_case(LINE_CASE, Tolerances())
        assert outcome.case_id == "line"
        [(kind, report)] = outcome.reports
        assert kind == "hl"
        assert report.metadata["case"] == "line"
        assert report.passed
        assert not outcome.skipped

    def test_riesz_over_cap_is_skipped(self) -> None:
        """Instances past the direct-sum cap become skipped rows."""
        case = CaseConfig("line", "interval -1 1", 1.0 / 32, function="bump", checks=("riesz",))
        outcome = run_case(case, Tolerances(riesz_cap=10))
        assert outcome.reports == []
        assert outcome.skipped == [Skipped("riesz", "instance too large for direct Riesz")]

    def test_run_suite_sorted(self) -> None:
        """Results are keyed by case id in sorted order for any job count."""
        cases = (
            CaseConfig("z", "interval 0 1", 1.0 / 32, checks=("hl",)),
            CaseConfig("a", "interval 0 1", 1.0 / 32, function="bump", checks=("hl",)),
            CaseConfig("m", "hexagon", 1.0 / 32, checks=("hl",)),
        )
        results = run_suite(SuiteConfig(cases), jobs=3)
        assert list(results) == ["a", "m", "z"]
        assert results["a"].is_ok
        assert results["m"].is_err
        assert "bad shape spec" in results["m"].error
        assert exit_status(results) == 2

    def test_exit_status_pass(self) -> None:
        """All verdicts passing gives 0."""
        results = {"c": Result(value=_outcome(VerificationReport("x", 1.0, 0.0, 0.0)))}
        assert exit_status(results) == 0
        assert exit_status(results, strict=True) == 0

    def test_exit_status_failure(self) -> None:
        """A failed verdict gives 1."""
        results = {"c": Result(value=_outcome(VerificationReport("x", 0.0, 1.0, 0.0)))}
        assert exit_status(results) == 1

    def test_exit_status_hypothesis(self) -> None:
        """Failures outside the hypotheses only fail under --strict."""
        report = VerificationReport("x", 0.0, 1.0, 0.0, hypothesis_ok=False)
        results = {"c": Result(value=_outcome(report))}
        assert exit_status(results) == 0
        assert exit_status(results, strict=True) == 1

    def test_exit_status_skipped_hypothesis(self) -> None:
        """A skip for an unmet hypothesis is a warning unless strict."""
        skip = Skipped("nonlinear-ps", "key condition violated", hypothesis=True)
        results = {"c": Result(value=_outcome(skipped=(skip,)))}
        assert exit_status(results) == 0
        assert exit_status(results, strict=True) == 1


class TestEmit:
    """Test the CSV tables and the JSON summary."""

    def test_tables_and_summary(self, tmp_path: Path) -> None:
        """One CSV per kind with fixed columns, plus a summary."""
        outcome = _outcome(
            VerificationReport("hl", 1.0, 0.5, 0.0),
            skipped=(Skipped("riesz", "instance too large for direct Riesz"),),
        )
        results = {"c": Result(value=outcome), "d": Result(error="bad shape spec: hexagon")}
        paths = emit_report(results, tmp_path, 2, timings=True)
        assert sorted(p.name for p in paths) == ["hl.csv", "riesz.csv", SUMMARY_FILE]

        hl = pd.read_csv(tmp_path / "hl.csv", keep_default_na=False)
        assert list(hl.columns) == COLUMNS
        assert hl.loc[0, "margin"] == pytest.approx(0.5)
        assert str(hl.loc[0, "pass"]).lower() == "true"
        riesz = pd.read_csv(tmp_path / "riesz.csv", keep_default_na=False)
        assert riesz["pass"].tolist() == ["skipped"]

        summary = json.loads((tmp_path / SUMMARY_FILE).read_text())
        assert summary["exit_status"] == 2
        assert summary["cases"] == 2
        assert summary["errors"] == {"d": "bad shape spec: hexagon"}
        assert summary["checks"]["hl"]["passed"] == 1
        assert summary["checks"]["hl"]["worst_margin"] == pytest.approx(0.5)
        assert summary["checks"]["riesz"]["skipped"] == 1
        assert summary["checks"]["riesz"]["worst_margin"] is None
        assert "c" in summary["seconds"]

    def test_no_timings_by_default(self, tmp_path: Path) -> None:
        """Wall-clock times are opt-in."""
        emit_report({"c": Result(value=_outcome())}, tmp_path, 0)
        assert "seconds" not in json.loads((tmp_path / SUMMARY_FILE).read_text())


class TestMain:
    """Test the command line end to end on small grids."""

    CASE = ["--shape", "interval -1 1", "--h", "0.03125", "--function", "bump", "-q"]

    def test_gen(self, tmp_path: Path) -> None:
        """gen writes a readable fixture."""
        out = tmp_path / "fixtures" / "bump.grid"
        assert cli.main(["gen", *self.CASE, "--out", str(out)]) == 0
        u = read_grid_function(out)
        assert np.allclose(u.values, gen_fixture("bump", u.grid).values, rtol=0.0, atol=1e-15)

    def test_verify(self, tmp_path: Path) -> None:
        """verify writes one table per requested check and exits 0."""
        status = cli.main(["verify", *self.CASE, "--checks", "hl", "--out", str(tmp_path)])
        assert status == 0
        assert (tmp_path / "hl.csv").exists()
        assert json.loads((tmp_path / SUMMARY_FILE).read_text())["exit_status"] == 0

    def test_verify_bad_shape(self, tmp_path: Path) -> None:
        """A case that cannot be built exits 2 and is named in the summary."""
        argv = ["verify", "--shape", "hexagon", "--checks", "hl", "--out", str(tmp_path), "-q"]
        assert cli.main(argv) == 2
        assert "cli" in json.loads((tmp_path / SUMMARY_FILE).read_text())["errors"]

    def test_symmetrize(self, tmp_path: Path) -> None:
        """symmetrize writes the rearrangement and the Schwarz symmetrization."""
        assert cli.main(["symmetrize", *self.CASE, "--out", str(tmp_path)]) == 0
        assert (tmp_path / "rearrangement.csv").exists()
        assert (tmp_path / "schwarz.grid").exists()

    def test_unreadable_suite(self, tmp_path: Path) -> None:
        """Configuration errors exit 2 before any case runs."""
        config = tmp_path / "suite.ini"
        config.write_text("[case a]\nshape = disk 1\n[case a]\nshape = disk 1\n")
        argv = ["suite", "--config", str(config), "--out", str(tmp_path / "r"), "-q"]
        assert cli.main(argv) == 2
        assert not (tmp_path / "r").exists()

    def test_missing_suite_file(self, tmp_path: Path) -> None:
        """A missing suite file is an I/O error."""
        assert cli.main(["suite", "--config", str(tmp_path / "nope.ini"), "-q"]) == 2

    def test_bundled_suite_passes(self, tmp_path: Path) -> None:
        """The bundled suite exits 0 and its reports do not depend on the job count."""
        serial, parallel = tmp_path / "serial", tmp_path / "parallel"
        assert cli.main(["suite", "--out", str(serial), "-q"]) == 0
        assert cli.main(["suite", "--out", str(parallel), "--jobs", "4", "-q"]) == 0
        names = sorted(p.name for p in serial.iterdir())
        assert names == sorted(p.name for p in parallel.iterdir())
        for name in names:
            assert (serial / name).read_bytes() == (parallel / name).read_bytes()
