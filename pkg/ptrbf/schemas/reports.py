from __future__ import annotations

from enum import Enum

from pydantic import BaseModel, Field


class CellStatus(str, Enum):
    completed = "completed"
    skipped = "skipped"
    failed = "failed"


class CellResult(BaseModel):
    architecture: str
    scheme: str
    run: int
    status: CellStatus
    reason: str = ""
    final_train_mse_db: float | None = None
    final_val_mse_db: float | None = None
    epochs_to_threshold: int | None = None


class SchemeSummary(BaseModel):
    architecture: str
    scheme: str
    runs: int
    final_train_mse_db: float | None = None
    final_val_mse_db: float | None = None
    steady_state_db: float | None = None
    epochs_to_threshold: int | None = None
    mean_train_curve_db: list[float] = Field(default_factory=list)
    mean_val_curve_db: list[float] = Field(default_factory=list)


class ComparisonReport(BaseModel):
    config_hash: str
    threshold_db: float
    summaries: list[SchemeSummary] = Field(default_factory=list)
    cells: list[CellResult] = Field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(cell.status == CellStatus.failed for cell in self.cells)

    def summary_for(self, architecture: str, scheme: str) -> SchemeSummary | None:
        for summary in self.summaries:
            if summary.architecture == architecture and summary.scheme == scheme:
                return summary
        return None


class MomentRow(BaseModel):
    quantity: str
    closed_form_re: float
    closed_form_im: float
    monte_carlo_re: float
    monte_carlo_im: float
    samples: int
    deviation: float
    tolerance: float
    stderr: float
    passed: bool
