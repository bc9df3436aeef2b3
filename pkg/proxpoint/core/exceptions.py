"""
Exception domain PROXPOINT.

Service melempar exception ini; lapisan commands menerjemahkannya
ke exit status (ConfigError -> 2, VerificationError -> 1).
"""

from typing import Optional


class ProxpointError(Exception):
    """Base class semua error PROXPOINT."""


class DimensionMismatchError(ProxpointError, ValueError):
    """Dimensi dua objek tidak sama."""


class NonFiniteVectorError(ProxpointError, ValueError):
    """Vector berisi NaN/Inf atau kosong."""


class InvalidSetError(ProxpointError, ValueError):
    """Invariant convex set dilanggar (box terbalik, a = 0, sistem tidak konsisten)."""


class NotMonotoneError(ProxpointError, ValueError):
    """Matriks operator tidak monoton; menyimpan eigenvalue pelanggar."""

    def __init__(self, message: str, eigenvalue: float):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class UnsupportedOperatorError(ProxpointError, ValueError):
    """Varian operator tidak didukung untuk operasi ini."""


class NotAZeroError(ProxpointError, ValueError):
    """Center yang diberikan bukan zero dari operator / irisan."""


class ConvergenceError(ProxpointError, RuntimeError):
    """Budget iterasi habis sebelum toleransi tercapai (misal irisan kosong)."""


class ConfigError(ProxpointError, ValueError):
    """Config tidak valid; `path` menunjuk field yang bermasalah."""

    def __init__(self, message: str, path: Optional[str] = None):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


class AssumptionError(ConfigError):
    """Asumsi teorema (lambda^2 > 3 gamma_bar^2) tidak terpenuhi."""


class VerificationError(ProxpointError, AssertionError):
    """Asersi bound gagal; `index` adalah iterasi pelanggar."""

    def __init__(self, message: str, index: Optional[int] = None):
        super().__init__(message)
        self.index = index
