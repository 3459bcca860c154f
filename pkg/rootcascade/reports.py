"""
Structured pass/fail results for the verification suites.

Each suite records named clauses. A clause fails when its body raises
TheoremViolationError, and the witness attached to that error is kept on the
report so the failing input can be replayed.

"""

from contextlib import contextmanager
from enum import StrEnum
from fractions import Fraction
from time import monotonic_ns
from typing import Any, Iterator

from pydantic import BaseModel, Field, computed_field

from rootcascade.logging import LOGGER


class TheoremViolationError(Exception):
    """
    Raised when a computed object contradicts a statement that must hold for
    every root system. Carries a JSON-safe witness of the offending input.

    """

    def __init__(self, message: str, witness: dict[str, Any] | None = None):
        super().__init__(message)
        self.message = message
        self.witness = jsonable(witness or {})


class CheckStatus(StrEnum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


class ClauseResult(BaseModel):
    name: str
    status: CheckStatus
    detail: str | None = None
    witness: dict[str, Any] | None = None

    model_config = {
        "frozen": True,
    }


class CheckResult(BaseModel):
    id: str
    title: str
    clauses: list[ClauseResult]
    duration_seconds: float = Field(default=0.0, exclude=True)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def status(self) -> CheckStatus:
        if any(clause.status == CheckStatus.FAIL for clause in self.clauses):
            return CheckStatus.FAIL
        if self.clauses and all(
            clause.status == CheckStatus.SKIPPED for clause in self.clauses
        ):
            return CheckStatus.SKIPPED
        return CheckStatus.PASS

    @property
    def passed(self) -> bool:
        return self.status != CheckStatus.FAIL

    def clause(self, name: str) -> ClauseResult:
        for clause in self.clauses:
            if clause.name == name:
                return clause
        raise KeyError(f"Check {self.id} has no clause {name!r}")


class VerificationReport(BaseModel):
    type: str
    seed: int
    checks: list[CheckResult]

    @computed_field(alias="pass")  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


class ClauseRecorder:
    """
    Collects clause outcomes for one check.

    ```python {{sticky: True}}
    recorder = ClauseRecorder("t1", "Cascade is a maximal strongly orthogonal set")
    with recorder.clause("strongly_orthogonal"):
        ensure(all_pairs_ok, "pair is not strongly orthogonal", pair=[...])
    recorder.skip("maximum_cardinality", "rank above 4")
    report = recorder.result()
    ```
    """

    def __init__(self, check_id: str, title: str):
        self.check_id = check_id
        self.title = title
        self.clauses: list[ClauseResult] = []
        self.start = monotonic_ns()

    @contextmanager
    def clause(self, name: str, detail: str | None = None) -> Iterator[None]:
        try:
            yield
        except TheoremViolationError as exc:
            LOGGER.warning(f"{self.check_id}/{name} failed: {exc.message}")
            self.clauses.append(
                ClauseResult(
                    name=name,
                    status=CheckStatus.FAIL,
                    detail=exc.message,
                    witness=exc.witness,
                )
            )
        else:
            self.clauses.append(
                ClauseResult(name=name, status=CheckStatus.PASS, detail=detail)
            )

    def skip(self, name: str, reason: str):
        self.clauses.append(
            ClauseResult(name=name, status=CheckStatus.SKIPPED, detail=reason)
        )

    def result(self) -> CheckResult:
        return CheckResult(
            id=self.check_id,
            title=self.title,
            clauses=self.clauses,
            duration_seconds=(monotonic_ns() - self.start) / 1e9,
        )


def ensure(condition: bool, message: str, **witness: Any):
    if not condition:
        raise TheoremViolationError(message, witness)


def jsonable(value: Any) -> Any:
    """
    Rationals become "p/q" strings and tuples become lists; floats never
    appear in a witness.

    """
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, bool | int | str) or value is None:
        return value
    if isinstance(value, dict):
        return {str(key): jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [jsonable(item) for item in items]
    return str(value)
