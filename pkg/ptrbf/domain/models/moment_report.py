from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class MomentReport:
    quantity: str
    closed_form: complex | float
    monte_carlo: complex | float
    samples: int
    deviation: float
    tolerance: float
    stderr: float = 0.0

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance


@dataclass(frozen=True)
class ConventionCheck:
    """Monte-Carlo estimate compared against both readings of sigma_gamma^4."""

    quantity: str
    monte_carlo: float
    closed_total: float
    closed_component: float

    @property
    def ratio_total(self) -> float:
        return self.monte_carlo / self.closed_total if self.closed_total else float("inf")

    @property
    def ratio_component(self) -> float:
        return self.monte_carlo / self.closed_component if self.closed_component else float("inf")

    @property
    def matched(self) -> str:
        off_total = abs(self.ratio_total - 1.0)
        off_component = abs(self.ratio_component - 1.0)
        return "total" if off_total <= off_component else "component"


@dataclass(frozen=True)
class MomentEstimate:
    mean_v: MomentReport
    var_v: MomentReport
    var_y: MomentReport
    checks: tuple[ConventionCheck, ...] = ()

    @property
    def reports(self) -> tuple[MomentReport, MomentReport, MomentReport]:
        return (self.mean_v, self.var_v, self.var_y)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)
