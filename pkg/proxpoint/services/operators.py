"""
Operator monoton maksimal dengan oracle resolvent, min-norm element,
dan zero set eksak.

Varian:
- LinearOperator: T(x) = {Ax}, A + A^T PSD
- NormalConeOperator: T = N_S
- QuadraticSubdifferential: T = grad(1/2 x^T Q x + c^T x)
- L1Subdifferential: T = subdiff(w ||.||_1)
- ShiftedOperator: T(x) = base(x) - b, base Linear/Quadratic

Resolvent J = (I + lambda T)^-1. Untuk varian linear, matriks (I + lambda A)
difaktorisasi sekali per (operator, lambda) lalu dipakai ulang. Cache
resolvent dijaga lock sehingga operator aman dipakai dari beberapa thread.
"""

import logging
import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, Optional

import numpy as np
from scipy.linalg import cho_factor, cho_solve, lu_factor, lu_solve

from ..core.exceptions import (
    DimensionMismatchError,
    NotMonotoneError,
    UnsupportedOperatorError,
)
from .hilbert import as_vector, derive_rng, sample_ball
from .linalg import SVDSystem
from .sets import AffineSubspace, ConvexSet, Singleton, in_normal_cone

logger = logging.getLogger(__name__)

MONOTONE_EIG_TOL = 1e-10
SYMMETRY_TOL = 1e-12
# Jumlah resolvent per operator yang disimpan (schedule geometric membuat lambda baru tiap iterasi)
RESOLVENT_CACHE_SIZE = 32
# Reentrant: resolvent ShiftedOperator meminta resolvent base-nya
_RESOLVENT_LOCK = threading.RLock()


def _square_matrix(M, name: str) -> np.ndarray:
    M = np.array(M, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.size == 0:
        raise DimensionMismatchError(f"{name} harus matriks persegi, dapat shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError(f"{name} berisi NaN/Inf")
    M.setflags(write=False)
    return M


class MonotoneOperator(ABC):
    """Base class operator monoton maksimal di R^n."""

    is_single_valued: bool = True

    @property
    @abstractmethod
    def dim(self) -> int:
        """Dimensi ambient."""

    @abstractmethod
    def _make_resolver(self, lam: float) -> Callable[[np.ndarray], np.ndarray]:
        """Membuat fungsi x -> J_{lam T}(x) (faktorisasi dilakukan di sini)."""

    @abstractmethod
    def min_norm_element(self, x: np.ndarray) -> float:
        """d(0, T(x)); +inf jika T(x) kosong."""

    @abstractmethod
    def _build_zero_set(self) -> ConvexSet:
        """T^-1(0) sebagai ConvexSet."""

    @abstractmethod
    def in_graph(self, x: np.ndarray, y: np.ndarray, tol: float) -> bool:
        """Apakah y in T(x) (dengan toleransi)."""

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """T(x) untuk varian single-valued."""
        raise UnsupportedOperatorError(f"{type(self).__name__} set-valued; tidak punya evaluate()")

    @cached_property
    def _zero_set(self) -> ConvexSet:
        return self._build_zero_set()

    @cached_property
    def _resolvent_cache(self) -> Dict[float, "Resolvent"]:
        return {}

    def zero_set(self) -> ConvexSet:
        return self._zero_set

    def resolvent(self, lam: float) -> "Resolvent":
        """
        Resolvent J_{lam T}, dicache per lambda.

        Args:
            lam: proximal parameter (> 0)
        """
        lam = float(lam)
        with _RESOLVENT_LOCK:
            cache = self._resolvent_cache
            if lam not in cache:
                if len(cache) >= RESOLVENT_CACHE_SIZE:
                    cache.pop(next(iter(cache)))
                cache[lam] = Resolvent(self, lam)
            return cache[lam]


@dataclass(frozen=True, eq=False)
class Resolvent:
    """
    J_{lambda T} = (I + lambda T)^-1 dengan faktorisasi tersimpan.
    """

    op: MonotoneOperator
    lam: float
    _solve: Callable[[np.ndarray], np.ndarray] = field(init=False, repr=False)

    def __post_init__(self):
        lam = float(self.lam)
        if not (np.isfinite(lam) and lam > 0):
            raise ValueError(f"lambda harus > 0, dapat {self.lam}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "_solve", self.op._make_resolver(lam))

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self._solve(x)


# ==================== VARIANTS ====================

@dataclass(frozen=True, eq=False)
class LinearOperator(MonotoneOperator):
    A: np.ndarray

    def __post_init__(self):
        A = _square_matrix(self.A, "A")
        eig_min = float(np.linalg.eigvalsh(0.5 * (A + A.T))[0])
        if eig_min < -MONOTONE_EIG_TOL:
            raise NotMonotoneError(
                f"A tidak monoton: eigenvalue terkecil (A+A^T)/2 = {eig_min:.6g}", eigenvalue=eig_min
            )
        object.__setattr__(self, "A", A)

    @property
    def dim(self) -> int:
        return self.A.shape[0]

    def evaluate(self, x):
        return self.A @ x

    def _make_resolver(self, lam):
        factor = lu_factor(np.eye(self.dim) + lam * self.A)
        return lambda x: lu_solve(factor, x)

    def min_norm_element(self, x):
        return float(np.linalg.norm(self.A @ x))

    def _build_zero_set(self):
        return AffineSubspace(self.A, np.zeros(self.dim))

    def in_graph(self, x, y, tol):
        return float(np.linalg.norm(self.A @ x - y)) <= tol


@dataclass(frozen=True, eq=False)
class QuadraticSubdifferential(MonotoneOperator):
    """Gradien f(x) = 1/2 x^T Q x + c^T x."""

    Q: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        Q = _square_matrix(self.Q, "Q")
        c = as_vector(self.c, "c")
        if c.shape[0] != Q.shape[0]:
            raise DimensionMismatchError(f"Q berdimensi {Q.shape[0]}, c berdimensi {c.shape[0]}")
        if float(np.max(np.abs(Q - Q.T))) > SYMMETRY_TOL:
            raise ValueError("Q harus simetris")
        eig_min = float(np.linalg.eigvalsh(Q)[0])
        if eig_min < -MONOTONE_EIG_TOL:
            raise NotMonotoneError(f"Q tidak PSD: eigenvalue terkecil {eig_min:.6g}", eigenvalue=eig_min)
        system = SVDSystem(Q, -c)
        if not system.is_consistent():
            raise ValueError(f"-c tidak berada di range(Q) (residual {system.residual():.3e}); f tidak punya minimizer")
        object.__setattr__(self, "Q", Q)
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    @property
    def dim(self) -> int:
        return self.Q.shape[0]

    def evaluate(self, x):
        return self.Q @ x + self.c

    def _make_resolver(self, lam):
        # I + lam Q simetris definit positif
        factor = cho_factor(np.eye(self.dim) + lam * self.Q)
        c = self.c
        return lambda x: cho_solve(factor, x - lam * c)

    def min_norm_element(self, x):
        return float(np.linalg.norm(self.Q @ x + self.c))

    def _build_zero_set(self):
        return AffineSubspace(self.Q, -self.c)

    def in_graph(self, x, y, tol):
        return float(np.linalg.norm(self.Q @ x + self.c - y)) <= tol


@dataclass(frozen=True, eq=False)
class L1Subdifferential(MonotoneOperator):
    """Subdifferential w * ||.||_1 di R^n."""

    w: float
    n: int

    is_single_valued = False

    def __post_init__(self):
        w = float(self.w)
        if not (np.isfinite(w) and w > 0):
            raise ValueError(f"w harus > 0, dapat {self.w}")
        if int(self.n) < 1:
            raise ValueError("dimensi harus >= 1")
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "n", int(self.n))

    @property
    def dim(self) -> int:
        return self.n

    def _make_resolver(self, lam):
        threshold = lam * self.w
        # soft-thresholding
        return lambda x: np.sign(x) * np.maximum(np.abs(x) - threshold, 0.0)

    def min_norm_element(self, x):
        return float(self.w * np.sqrt(np.count_nonzero(x)))

    def _build_zero_set(self):
        return Singleton(np.zeros(self.n))

    def in_graph(self, x, y, tol):
        nonzero = x != 0
        on_support = np.abs(y[nonzero] - self.w * np.sign(x[nonzero]))
        off_support = np.abs(y[~nonzero]) - self.w
        return bool(np.all(on_support <= tol) and np.all(off_support <= tol))


@dataclass(frozen=True, eq=False)
class NormalConeOperator(MonotoneOperator):
    """N_S; resolvent = proyeksi ke S untuk semua lambda."""

    S: ConvexSet

    is_single_valued = False

    @property
    def dim(self) -> int:
        return self.S.dim

    def _make_resolver(self, lam):
        return self.S.project

    def min_norm_element(self, x):
        # d(0, kosong) = +inf di luar S
        return 0.0 if self.S.contains(x) else float("inf")

    def _build_zero_set(self):
        return self.S

    def in_graph(self, x, y, tol):
        if not self.S.contains(x):
            return False
        return in_normal_cone(self.S, x, y, 200)


@dataclass(frozen=True, eq=False)
class ShiftedOperator(MonotoneOperator):
    """T(x) = base(x) - b; base harus Linear atau Quadratic agar zero set tetap affine."""

    base: MonotoneOperator
    b: np.ndarray

    def __post_init__(self):
        if not isinstance(self.base, (LinearOperator, QuadraticSubdifferential)):
            raise UnsupportedOperatorError(
                f"shifted hanya mendukung base linear/quadratic, dapat {type(self.base).__name__}"
            )
        b = as_vector(self.b, "b")
        if b.shape[0] != self.base.dim:
            raise DimensionMismatchError(f"base berdimensi {self.base.dim}, b berdimensi {b.shape[0]}")
        b.setflags(write=False)
        object.__setattr__(self, "b", b)
        # Zero set harus ada: base(x) = b konsisten
        matrix, rhs = self._zero_system()
        system = SVDSystem(matrix, rhs)
        if not system.is_consistent():
            raise ValueError(f"base(x) = b tidak punya solusi (residual {system.residual():.3e})")

    def _zero_system(self):
        if isinstance(self.base, LinearOperator):
            return self.base.A, self.b
        return self.base.Q, self.b - self.base.c

    @property
    def dim(self) -> int:
        return self.base.dim

    def evaluate(self, x):
        return self.base.evaluate(x) - self.b

    def _make_resolver(self, lam):
        base_resolve = self.base._make_resolver(lam)
        shift = lam * self.b
        return lambda x: base_resolve(x + shift)

    def min_norm_element(self, x):
        return float(np.linalg.norm(self.evaluate(x)))

    def _build_zero_set(self):
        matrix, rhs = self._zero_system()
        return AffineSubspace(matrix, rhs)

    def in_graph(self, x, y, tol):
        return self.base.in_graph(x, y + self.b, tol)


# ==================== OPERATIONS ====================

def _checked(T: MonotoneOperator, x) -> np.ndarray:
    x = as_vector(x)
    if x.shape[0] != T.dim:
        raise DimensionMismatchError(f"{type(T).__name__} berdimensi {T.dim}, x berdimensi {x.shape[0]}")
    return x


def resolve(R: Resolvent, x) -> np.ndarray:
    """
    Menghitung J_{lambda T}(x), yaitu y unik dengan x in y + lambda T(y).

    Raises:
        DimensionMismatchError: Jika dimensi x tidak cocok
    """
    return R(_checked(R.op, x))


def min_norm_element(T: MonotoneOperator, x) -> float:
    """d(0, T(x)), dengan konvensi d(0, kosong) = +inf."""
    return T.min_norm_element(_checked(T, x))


def zero_set(T: MonotoneOperator) -> ConvexSet:
    """T^-1(0) sebagai ConvexSet."""
    return T.zero_set()


def zero_distance(T: MonotoneOperator, x) -> float:
    """d(x, T^-1(0))."""
    return T.zero_set().distance(_checked(T, x))


def graph_point(T: MonotoneOperator, u: np.ndarray, lam: float = 1.0):
    """
    Titik graf (x, y) dengan y in T(x), dari parametrisasi resolvent:
    x = J(u), y = (u - J(u)) / lam.
    """
    x = T.resolvent(lam)(u)
    return x, (u - x) / lam


def check_monotone(T: MonotoneOperator, n_pairs: int = 1000, seed: int = 0, scale: float = 10.0) -> float:
    """
    Sampled monotonicity: min <x1 - x0, y1 - y0> atas pasangan acak.

    Varian single-valued memakai evaluate(); varian set-valued memakai
    titik graf dari resolvent.

    Returns:
        Nilai inner product terkecil (>= -1e-10 berarti lolos)
    """
    rng = derive_rng(seed)
    points = sample_ball(rng, np.zeros(T.dim), scale, 2 * n_pairs)
    worst = float("inf")
    for k in range(n_pairs):
        u0, u1 = points[2 * k], points[2 * k + 1]
        if T.is_single_valued:
            x0, x1 = u0, u1
            y0, y1 = T.evaluate(x0), T.evaluate(x1)
        else:
            x0, y0 = graph_point(T, u0)
            x1, y1 = graph_point(T, u1)
        worst = min(worst, float(np.dot(x1 - x0, y1 - y0)))
    return worst


def check_firmly_nonexpansive(R: Resolvent, n_pairs: int = 1000, seed: int = 0, scale: float = 10.0) -> float:
    """
    Margin terburuk ketaksamaan firm non-expansiveness:
    ||x-y||^2 - ||Jx-Jy||^2 - ||(x-Jx)-(y-Jy)||^2.

    Returns:
        Margin minimum (>= -1e-10 berarti lolos)
    """
    rng = derive_rng(seed, 1)
    points = sample_ball(rng, np.zeros(R.op.dim), scale, 2 * n_pairs)
    worst = float("inf")
    for k in range(n_pairs):
        x, y = points[2 * k], points[2 * k + 1]
        Jx, Jy = R(x), R(y)
        lhs = float(np.sum((Jx - Jy) ** 2) + np.sum(((x - Jx) - (y - Jy)) ** 2))
        worst = min(worst, float(np.sum((x - y) ** 2)) - lhs)
    return worst


def resolvent_inclusion_gap(R: Resolvent, x) -> Optional[float]:
    """
    ||(x - Jx) - lambda T(Jx)|| untuk varian single-valued; None untuk set-valued.
    """
    x = _checked(R.op, x)
    if not R.op.is_single_valued:
        return None
    Jx = R(x)
    return float(np.linalg.norm((x - Jx) - R.lam * R.op.evaluate(Jx)))
