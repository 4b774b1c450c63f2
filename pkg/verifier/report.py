"""
Verification reports and the shared case runner.

Every suite turns its cases into ``Check`` objects; ``run_suite`` evaluates them
(optionally in parallel) and collects ``CaseRecord`` rows into a ``Report``.
"""
import json
import logging
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from config import Config
from errors import GridTooLarge, PoleAtPoint, PoleDetected, StabilizationFailure
from utils import run_parallel
from valuedomain import EQUAL, NOT_EQUAL, PROBABLY_EQUAL, BiSeries, EqualityVerdict, values_equal

logger = logging.getLogger(__name__)

SKIPPED = "Skipped"
VERDICTS = (EQUAL, PROBABLY_EQUAL, NOT_EQUAL, SKIPPED)

PROVED = "proved"
CONJECTURAL = "conjectural"
EXPLORATORY = "exploratory"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FALSIFIED = 2
EXIT_INTERNAL = 3


# records
#---------------------------------------------------------------------------------
@dataclass
class CaseRecord:
    """One row of a report. ``witness`` is set only for NotEqual, ``reason`` only for Skipped."""
    word: str
    dual: str
    n: Optional[int]
    verdict: str
    kind: str = PROVED
    check: str = "duality"
    mode: str = "grid"
    witness: Optional[Dict[str, str]] = None
    reason: Optional[str] = None
    ms: float = 0.0

    @property
    def proved(self) -> bool:
        return self.verdict == EQUAL

    def to_dict(self) -> dict:
        data = {
            "word": self.word,
            "dual": self.dual,
            "n": self.n,
            "verdict": self.verdict,
            "kind": self.kind,
            "check": self.check,
            "mode": self.mode,
            "ms": self.ms,
        }
        if self.witness is not None:
            data["witness"] = self.witness
        if self.reason is not None:
            data["reason"] = self.reason
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "CaseRecord":
        return cls(**data)


@dataclass
class Report:
    """Outcome of a suite: the configuration it ran with and one record per case."""
    suite: str
    config: dict
    cases: List[CaseRecord] = field(default_factory=list)

    @property
    def summary(self) -> Dict[str, int]:
        counts = {"total": len(self.cases), "equal": 0, "probable": 0, "failed": 0, "skipped": 0}
        key = {EQUAL: "equal", PROBABLY_EQUAL: "probable", NOT_EQUAL: "failed", SKIPPED: "skipped"}
        for case in self.cases:
            counts[key[case.verdict]] += 1
        counts["unverified"] = len(self.unverified())
        return counts

    def failures(self, kind: Optional[str] = None) -> List[CaseRecord]:
        return [c for c in self.cases if c.verdict == NOT_EQUAL and (kind is None or c.kind == kind)]

    def unverified(self) -> List[CaseRecord]:
        """Proved cases that were skipped and so never checked."""
        return [c for c in self.cases if c.verdict == SKIPPED and c.kind == PROVED]

    @property
    def exit_code(self) -> int:
        """3 for a failed or skipped proved case, 2 for a falsification candidate, else 0."""
        if self.failures(PROVED) or self.unverified():
            return EXIT_INTERNAL
        if self.failures(CONJECTURAL):
            return EXIT_FALSIFIED
        return EXIT_OK

    def extend(self, other: "Report"):
        self.cases.extend(other.cases)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "config": self.config,
            "cases": [case.to_dict() for case in self.cases],
            "summary": self.summary,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        return cls(data["suite"], data["config"], [CaseRecord.from_dict(c) for c in data["cases"]])

#---------------------------------------------------------------------------------

# comparisons
#---------------------------------------------------------------------------------
def compare(lhs, rhs, config: Config, mode: Optional[str] = None) -> EqualityVerdict:
    """
    values_equal with the configured backend. A grid over budget falls back to modp.
    """
    mode = mode or config.mode
    options = dict(seed=config.seed, trials=config.trials, prime=config.prime, grid_budget=config.grid_budget)
    try:
        return values_equal(lhs, rhs, mode=mode, **options)
    except GridTooLarge as exc:
        logger.info("%s; falling back to modp", exc)
        return values_equal(lhs, rhs, mode="modp", **options)


def compare_series(lhs: BiSeries, rhs: BiSeries) -> EqualityVerdict:
    """Coefficientwise equality of truncated series; the witness names the first differing coefficient."""
    for i, (left_row, right_row) in enumerate(zip(lhs.rows, rhs.rows)):
        for j, (a, b) in enumerate(zip(left_row, right_row)):
            if a != b:
                witness = {"q": str(i), "z": str(j), "lhs": str(a), "rhs": str(b)}
                return EqualityVerdict(NOT_EQUAL, "series", witness, 1)
    return EqualityVerdict(EQUAL, "series", None, 1)


def compare_float(lhs: float, rhs: float, tolerance: float) -> EqualityVerdict:
    """A numeric agreement within ``tolerance``; never a proof."""
    gap = abs(lhs - rhs)
    if gap <= tolerance:
        return EqualityVerdict(PROBABLY_EQUAL, "quadrature", None, 1)
    witness = {"lhs": repr(lhs), "rhs": repr(rhs), "gap": repr(gap), "tolerance": repr(tolerance)}
    return EqualityVerdict(NOT_EQUAL, "quadrature", witness, 1)

#---------------------------------------------------------------------------------

# running cases
#---------------------------------------------------------------------------------
@dataclass
class Check:
    """A deferred comparison: ``run`` returns an EqualityVerdict."""
    word: str
    dual: str
    n: Optional[int]
    run: Callable[[], EqualityVerdict]
    kind: str = PROVED
    check: str = "duality"


def execute(check: Check) -> CaseRecord:
    start = time.perf_counter()
    try:
        verdict = check.run()
    except (PoleAtPoint, PoleDetected, StabilizationFailure) as exc:
        logger.warning("skipping %s %s: %s", check.check, check.word, exc)
        return CaseRecord(check.word, check.dual, check.n, SKIPPED, check.kind, check.check,
                          mode="-", reason=str(exc), ms=_elapsed(start))
    return CaseRecord(check.word, check.dual, check.n, verdict.status, check.kind, check.check,
                      verdict.mode, verdict.witness, ms=_elapsed(start))


def _elapsed(start: float) -> float:
    return round((time.perf_counter() - start) * 1000.0, 3)


def run_suite(suite: str, checks: List[Check], config: Config) -> Report:
    """Evaluate ``checks`` on ``config.threads`` workers; cases keep their enumeration order."""
    logger.info("suite %s: %d cases", suite, len(checks))
    report = Report(suite, config.as_dict(), run_parallel(execute, checks, config.threads))
    logger.info("suite %s summary: %s", suite, report.summary)
    for case in report.failures():
        logger.warning("%s case %s (%s) NotEqual at %s", case.kind, case.word, case.check, case.witness)
    for case in report.unverified():
        logger.warning("proved case %s (%s) was not checked: %s", case.word, case.check, case.reason)
    return report
