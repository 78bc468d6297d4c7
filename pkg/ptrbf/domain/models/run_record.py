from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class RunRecord:
    train_mse_db: list[float] = field(default_factory=list)
    val_mse_db: list[float] = field(default_factory=list)
    wall_time_s: float = 0.0
    config_hash: str = ""
    seed: int | None = None

    @property
    def epochs(self) -> int:
        return len(self.train_mse_db)

    def same_curves(self, other: RunRecord) -> bool:
        return self.train_mse_db == other.train_mse_db and self.val_mse_db == other.val_mse_db
