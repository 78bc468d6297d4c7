from __future__ import annotations


class PtRbfError(Exception):
    """Base class for every error raised on purpose by the package."""


class ParameterError(PtRbfError, ValueError):
    pass


class DimensionError(PtRbfError, ValueError):
    pass


class DegenerateVarianceError(ParameterError):
    """A center variance component came out as zero (or below the floor)."""


class DegenerateDataError(ParameterError):
    """A dataset has no spread in some component, so it cannot be normalized."""


class UnsupportedSchemeError(PtRbfError):
    pass


class ContractError(PtRbfError):
    pass


class ConfigError(PtRbfError):
    pass


class StorageError(PtRbfError):
    def __init__(self, path: str, message: str) -> None:
        super().__init__(f"{path}: {message}")
        self.path = path
