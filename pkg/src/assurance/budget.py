"""Error-budget accounting and the persistent budget ledger.

Budget arithmetic runs on integer tenths of a minute, so totals like
``(1 - 0.999) * 90 days = 129.6 min`` are exact.
"""

import json
from dataclasses import dataclass
from datetime import datetime, timezone
from decimal import ROUND_HALF_EVEN, Decimal
from pathlib import Path
from typing import Any, Literal

from filelock import FileLock
from pydantic import BaseModel, ConfigDict, Field

from tools.logger import get_logger

logger = get_logger(__name__)

TENTHS_PER_DAY = 24 * 60 * 10


def to_tenths(minutes: float | Decimal) -> int:
    """Minutes as integer tenths of a minute."""
    return int((Decimal(str(minutes)) * 10).to_integral_value(rounding=ROUND_HALF_EVEN))


def from_tenths(tenths: int) -> float:
    return float(Decimal(tenths) / 10)


class SloPolicy(BaseModel):
    """Availability objective over a period and the downtime spent so far."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    availability_target: float = Field(gt=0, le=1)
    period_days: int = Field(gt=0)
    consumed_minutes: float = Field(0.0, ge=0)


@dataclass(frozen=True)
class ErrorBudget:
    total_minutes: float
    consumed_minutes: float
    remaining_minutes: float
    remaining_fraction: float

    @property
    def exhausted(self) -> bool:
        return self.remaining_minutes == 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "total_minutes": self.total_minutes,
            "consumed_minutes": self.consumed_minutes,
            "remaining_minutes": self.remaining_minutes,
            "remaining_fraction": round(self.remaining_fraction, 6),
            "exhausted": self.exhausted,
        }


def error_budget(policy: SloPolicy) -> ErrorBudget:
    """Total, remaining and remaining fraction of the budget.

    ``total = (1 - target) * period * 24 * 60`` minutes; remaining clamps at 0
    and the fraction is 0 when there is no budget at all.

    Example:
        >>> error_budget(SloPolicy(availability_target=0.999, period_days=90)).total_minutes
        129.6
    """
    allowed = Decimal(1) - Decimal(str(policy.availability_target))
    total = int((allowed * policy.period_days * TENTHS_PER_DAY).to_integral_value(rounding=ROUND_HALF_EVEN))
    consumed = to_tenths(policy.consumed_minutes)
    remaining = max(0, total - consumed)
    fraction = remaining / total if total else 0.0
    return ErrorBudget(from_tenths(total), from_tenths(consumed), from_tenths(remaining), fraction)


def record_incident(policy: SloPolicy, downtime_minutes: float) -> SloPolicy:
    """Return ``policy`` with the downtime of one more incident consumed.

    Raises:
        ValueError: negative downtime
    """
    if downtime_minutes < 0:
        raise ValueError(f"downtime must be non-negative, got {downtime_minutes}")
    consumed = to_tenths(policy.consumed_minutes) + to_tenths(downtime_minutes)
    return policy.model_copy(update={"consumed_minutes": from_tenths(consumed)})


class LedgerEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["incident", "set"]
    recorded_at: str
    minutes: float | None = None
    note: str = ""
    target: float | None = None
    period_days: int | None = None


class LedgerFile(BaseModel):
    """On-disk ledger: ``{target, period_days, consumed_minutes, history[]}``."""

    model_config = ConfigDict(extra="forbid")

    target: float = Field(gt=0, le=1)
    period_days: int = Field(gt=0)
    consumed_minutes: float = Field(0.0, ge=0)
    history: list[LedgerEntry] = Field(default_factory=list)

    @property
    def policy(self) -> SloPolicy:
        return SloPolicy(
            availability_target=self.target,
            period_days=self.period_days,
            consumed_minutes=self.consumed_minutes,
        )


class LedgerMissingError(FileNotFoundError):
    """No ledger file exists yet."""


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds").replace("+00:00", "Z")


class BudgetLedger:
    """Budget ledger file with single-writer updates.

    Every mutation reads, updates and rewrites the file while holding
    ``<path>.lock``.

    Args:
        path: Ledger JSON file
    """

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = FileLock(str(self.path) + ".lock")

    def exists(self) -> bool:
        return self.path.is_file()

    def _read(self) -> LedgerFile:
        if not self.exists():
            raise LedgerMissingError(f"no budget ledger at {self.path}; create one with 'oxlab budget set'")
        return LedgerFile.model_validate(json.loads(self.path.read_text(encoding="utf-8")))

    def _write(self, ledger: LedgerFile) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        tmp = self.path.with_suffix(self.path.suffix + ".tmp")
        tmp.write_text(json.dumps(ledger.model_dump(exclude_none=True), indent=2) + "\n", encoding="utf-8")
        tmp.replace(self.path)

    def load(self) -> LedgerFile:
        with self._lock:
            return self._read()

    def set_policy(self, target: float, period_days: int) -> LedgerFile:
        """Create the ledger or change its objective, keeping consumed downtime and history."""
        with self._lock:
            if self.exists():
                current = self._read()
                consumed, history = current.consumed_minutes, list(current.history)
            else:
                consumed, history = 0.0, []
            history.append(LedgerEntry(kind="set", recorded_at=_now(), target=target, period_days=period_days))
            ledger = LedgerFile(target=target, period_days=period_days, consumed_minutes=consumed, history=history)
            self._write(ledger)
        logger.info(f"Budget policy set: target={target}, period={period_days}d")
        return ledger

    def record(self, downtime_minutes: float, note: str = "") -> LedgerFile:
        """Consume downtime and persist it.

        Raises:
            ValueError: negative downtime
            LedgerMissingError: no ledger yet
        """
        with self._lock:
            current = self._read()
            policy = record_incident(current.policy, downtime_minutes)
            entry = LedgerEntry(kind="incident", recorded_at=_now(), minutes=downtime_minutes, note=note)
            ledger = current.model_copy(
                update={"consumed_minutes": policy.consumed_minutes, "history": [*current.history, entry]}
            )
            self._write(ledger)
        logger.info(f"Recorded {downtime_minutes} min of downtime ({note or 'no note'})")
        return ledger

    def budget(self) -> ErrorBudget:
        return error_budget(self.load().policy)
