"""
Closed convex set dengan oracle proyeksi eksak.

Varian: Box, Halfspace, Hyperplane, Ball, AffineSubspace, Singleton, FullSpace.
Semua set immutable setelah dibuat. Jarak ke irisan beberapa set dihitung
dengan Dykstra (konvergen ke proyeksi, bukan sekadar titik di irisan).
"""

import itertools
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from ..core.config import get_settings
from ..core.exceptions import ConvergenceError, DimensionMismatchError, InvalidSetError
from .hilbert import as_vector, check_same_dim
from .linalg import SVDSystem

logger = logging.getLogger(__name__)

# Box dengan dimensi <= ini: semua titik sudut ikut jadi saksi normal cone
MAX_CORNER_DIM = 10


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class ConvexSet(ABC):
    """
    Base class closed convex set (nonempty).

    Subclass wajib mengimplementasikan `dim`, `project`, dan `witness_points`.
    """

    @property
    @abstractmethod
    def dim(self) -> int:
        """Dimensi ambient."""

    @abstractmethod
    def project(self, x: np.ndarray) -> np.ndarray:
        """Titik terdekat di set (tanpa validasi dimensi)."""

    @abstractmethod
    def witness_points(self, z: np.ndarray, v: np.ndarray, count: int, rng: np.random.Generator) -> np.ndarray:
        """
        Titik-titik s di set untuk tes normal cone di z.

        Untuk varian polyhedral, titik saksi mencakup semua titik ekstrem atau
        arah rekresi sehingga tesnya eksak.
        """

    @property
    def is_affine(self) -> bool:
        return False

    def affine_system(self) -> tuple:
        """Pasangan (M, c) dengan set = {x : Mx = c}; hanya untuk varian affine."""
        raise InvalidSetError(f"{type(self).__name__} bukan affine set")

    def distance(self, x: np.ndarray) -> float:
        return float(np.linalg.norm(x - self.project(x)))

    def contains(self, x: np.ndarray, tol: Optional[float] = None) -> bool:
        tol = get_settings().membership_tol if tol is None else tol
        return self.distance(x) <= tol * (1.0 + float(np.linalg.norm(x)))


def _orthogonal_complement(a: np.ndarray) -> np.ndarray:
    """Basis ortonormal (kolom) dari {u : <a, u> = 0}."""
    return SVDSystem(a[np.newaxis, :]).null_basis


def _direction_witnesses(z: np.ndarray, basis: np.ndarray, count: int, rng: np.random.Generator) -> List[np.ndarray]:
    # z +- t*u untuk tiap kolom basis, plus kombinasi acak
    scale = 1.0 + float(np.linalg.norm(z))
    witnesses = []
    for j in range(basis.shape[1]):
        witnesses.append(z + scale * basis[:, j])
        witnesses.append(z - scale * basis[:, j])
    if basis.shape[1]:
        for _ in range(count):
            witnesses.append(z + scale * basis @ rng.standard_normal(basis.shape[1]))
    return witnesses


@dataclass(frozen=True, eq=False)
class Box(ConvexSet):
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = as_vector(self.lower, "lower")
        upper = as_vector(self.upper, "upper")
        check_same_dim(lower, upper, "lower, upper")
        if np.any(lower > upper):
            raise InvalidSetError("box: lower harus <= upper per komponen")
        object.__setattr__(self, "lower", _frozen(lower))
        object.__setattr__(self, "upper", _frozen(upper))

    @property
    def dim(self) -> int:
        return self.lower.shape[0]

    def project(self, x):
        return np.clip(x, self.lower, self.upper)

    def witness_points(self, z, v, count, rng):
        # Support point: maximizer <v, s> di box
        support = np.where(v > 0, self.upper, np.where(v < 0, self.lower, z))
        witnesses = [support]
        if self.dim <= MAX_CORNER_DIM:
            for pick in itertools.product((0, 1), repeat=self.dim):
                witnesses.append(np.where(np.array(pick, dtype=bool), self.upper, self.lower))
        width = self.upper - self.lower
        for _ in range(count):
            witnesses.append(self.lower + rng.random(self.dim) * width)
        return np.array(witnesses)


@dataclass(frozen=True, eq=False)
class Halfspace(ConvexSet):
    """{x : <a, x> <= b}"""

    a: np.ndarray
    b: float

    def __post_init__(self):
        a = as_vector(self.a, "a")
        if not np.any(a):
            raise InvalidSetError("halfspace: a tidak boleh vector nol")
        object.__setattr__(self, "a", _frozen(a))
        object.__setattr__(self, "b", float(self.b))

    @property
    def dim(self) -> int:
        return self.a.shape[0]

    def project(self, x):
        excess = float(np.dot(self.a, x)) - self.b
        if excess <= 0.0:
            return x.copy()
        return x - (excess / float(np.dot(self.a, self.a))) * self.a

    def witness_points(self, z, v, count, rng):
        scale = 1.0 + float(np.linalg.norm(z))
        a_hat = self.a / np.linalg.norm(self.a)
        # Titik boundary terdekat dan satu langkah ke interior
        boundary = z + ((self.b - float(np.dot(self.a, z))) / float(np.dot(self.a, self.a))) * self.a
        witnesses = [boundary, z - scale * a_hat]
        witnesses += _direction_witnesses(boundary, _orthogonal_complement(self.a), count, rng)
        for _ in range(count):
            witnesses.append(z - scale * abs(rng.standard_normal()) * a_hat)
        return np.array(witnesses)


@dataclass(frozen=True, eq=False)
class Hyperplane(ConvexSet):
    """{x : <a, x> = b}"""

    a: np.ndarray
    b: float

    def __post_init__(self):
        a = as_vector(self.a, "a")
        if not np.any(a):
            raise InvalidSetError("hyperplane: a tidak boleh vector nol")
        object.__setattr__(self, "a", _frozen(a))
        object.__setattr__(self, "b", float(self.b))

    @property
    def dim(self) -> int:
        return self.a.shape[0]

    @property
    def is_affine(self) -> bool:
        return True

    def affine_system(self):
        return self.a[np.newaxis, :], np.array([self.b])

    def project(self, x):
        excess = float(np.dot(self.a, x)) - self.b
        return x - (excess / float(np.dot(self.a, self.a))) * self.a

    def witness_points(self, z, v, count, rng):
        return np.array([z] + _direction_witnesses(z, _orthogonal_complement(self.a), count, rng))


@dataclass(frozen=True, eq=False)
class Ball(ConvexSet):
    center: np.ndarray
    radius: float

    def __post_init__(self):
        center = as_vector(self.center, "center")
        radius = float(self.radius)
        if not np.isfinite(radius) or radius < 0:
            raise InvalidSetError("ball: radius harus >= 0 dan finite")
        object.__setattr__(self, "center", _frozen(center))
        object.__setattr__(self, "radius", radius)

    @property
    def dim(self) -> int:
        return self.center.shape[0]

    def project(self, x):
        offset = x - self.center
        length = float(np.linalg.norm(offset))
        if length <= self.radius:
            return x.copy()
        return self.center + (self.radius / length) * offset

    def witness_points(self, z, v, count, rng):
        witnesses = [self.center.copy()]
        v_norm = float(np.linalg.norm(v))
        if v_norm > 0:
            witnesses.append(self.center + (self.radius / v_norm) * v)
        for _ in range(count):
            u = rng.standard_normal(self.dim)
            u /= max(float(np.linalg.norm(u)), 1e-300)
            witnesses.append(self.center + self.radius * u)
            witnesses.append(self.center + self.radius * rng.random() * u)
        return np.array(witnesses)


@dataclass(frozen=True, eq=False)
class AffineSubspace(ConvexSet):
    """{x : Ax = b}, A berukuran m x n"""

    A: np.ndarray
    b: np.ndarray
    _system: SVDSystem = field(init=False, repr=False)

    def __post_init__(self):
        A = np.atleast_2d(np.array(self.A, dtype=np.float64))
        if A.ndim != 2 or A.size == 0 or not np.all(np.isfinite(A)):
            raise InvalidSetError("affine: A harus matriks 2-D finite")
        b = as_vector(self.b, "b")
        if b.shape[0] != A.shape[0]:
            raise DimensionMismatchError(f"affine: A punya {A.shape[0]} baris, b punya {b.shape[0]} komponen")
        system = SVDSystem(A, b)
        if not system.is_consistent():
            raise InvalidSetError(f"affine: sistem Ax=b tidak konsisten (residual {system.residual():.3e})")
        object.__setattr__(self, "A", _frozen(A))
        object.__setattr__(self, "b", _frozen(b))
        object.__setattr__(self, "_system", system)

    @property
    def dim(self) -> int:
        return self.A.shape[1]

    @property
    def is_affine(self) -> bool:
        return True

    def affine_system(self):
        return self.A, self.b

    def project(self, x):
        return self._system.project(x)

    def witness_points(self, z, v, count, rng):
        return np.array([z] + _direction_witnesses(z, self._system.null_basis, count, rng))


@dataclass(frozen=True, eq=False)
class Singleton(ConvexSet):
    p: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "p", _frozen(as_vector(self.p, "p")))

    @property
    def dim(self) -> int:
        return self.p.shape[0]

    @property
    def is_affine(self) -> bool:
        return True

    def affine_system(self):
        return np.eye(self.dim), self.p

    def project(self, x):
        return self.p.copy()

    def witness_points(self, z, v, count, rng):
        return self.p[np.newaxis, :].copy()


@dataclass(frozen=True, eq=False)
class FullSpace(ConvexSet):
    n: int

    def __post_init__(self):
        if int(self.n) < 1:
            raise InvalidSetError("full space: dimensi harus >= 1")
        object.__setattr__(self, "n", int(self.n))

    @property
    def dim(self) -> int:
        return self.n

    @property
    def is_affine(self) -> bool:
        return True

    def affine_system(self):
        return np.zeros((0, self.n)), np.zeros(0)

    def project(self, x):
        return x.copy()

    def witness_points(self, z, v, count, rng):
        return np.array([z] + _direction_witnesses(z, np.eye(self.n), count, rng))


# ==================== OPERATIONS ====================

def _checked(S: ConvexSet, x) -> np.ndarray:
    x = as_vector(x)
    if x.shape[0] != S.dim:
        raise DimensionMismatchError(f"{type(S).__name__} berdimensi {S.dim}, x berdimensi {x.shape[0]}")
    return x


def project(S: ConvexSet, x) -> np.ndarray:
    """
    Proyeksi P_S(x): titik unik di S yang terdekat ke x.

    Raises:
        DimensionMismatchError: Jika dimensi x tidak sama dengan set
    """
    return S.project(_checked(S, x))


def set_distance(S: ConvexSet, x) -> float:
    """d(x, S) = ||x - P_S(x)||."""
    return S.distance(_checked(S, x))


def in_normal_cone(S: ConvexSet, z, v, witness_count: int, seed: int = 0) -> bool:
    """
    Tes falsifikasi v in N_S(z).

    Mengambil titik saksi s di S lalu mengecek <v, s - z> <= tol * (1 + ||v||).
    True berarti "tidak terbantah", False berarti ada s yang melanggar.

    Args:
        S: convex set
        z: titik di S
        v: kandidat normal vector
        witness_count: jumlah titik saksi acak (>= 1), di luar titik struktural
        seed: seed generator titik saksi

    Raises:
        InvalidSetError: Jika z tidak berada di S
    """
    z = _checked(S, z)
    v = _checked(S, v)
    if witness_count < 1:
        raise ValueError("witness_count harus >= 1")
    if not S.contains(z):
        raise InvalidSetError(f"z tidak berada di {type(S).__name__} (jarak {S.distance(z):.3e})")

    tol = get_settings().membership_tol * (1.0 + float(np.linalg.norm(v)))
    witnesses = S.witness_points(z, v, witness_count, np.random.default_rng(seed))
    worst = float(np.max((witnesses - z[np.newaxis, :]) @ v))
    return worst <= tol


@dataclass(frozen=True)
class DykstraConfig:
    """Parameter Dykstra; tolerance = max_i d(y, S_i) yang diterima."""

    max_sweeps: int = 10000
    tolerance: float = 1e-12

    def __post_init__(self):
        if self.max_sweeps < 1:
            raise ValueError("max_sweeps harus >= 1")
        if not self.tolerance > 0:
            raise ValueError("tolerance harus > 0")

    @classmethod
    def from_settings(cls) -> "DykstraConfig":
        settings = get_settings()
        return cls(max_sweeps=settings.dykstra_max_sweeps, tolerance=settings.dykstra_tolerance)


class SetIntersection:
    """
    Irisan beberapa convex set dengan oracle proyeksi & jarak.

    Jika semua set affine, sistem gabungan di-SVD sekali dan dipakai
    sebagai closed form. cross_check=True menjalankan Dykstra juga sebagai
    pembanding di setiap proyeksi; hanya dipakai oleh dykstra_project,
    oracle jarak di loop estimator / trial memakai closed form saja.
    """

    def __init__(self, sets: Sequence[ConvexSet], cfg: Optional[DykstraConfig] = None, cross_check: bool = False):
        if not sets:
            raise ValueError("daftar set tidak boleh kosong")
        dims = {S.dim for S in sets}
        if len(dims) != 1:
            raise DimensionMismatchError(f"dimensi set tidak seragam: {sorted(dims)}")
        self.sets = list(sets)
        self.cfg = cfg or DykstraConfig.from_settings()
        self.cross_check = cross_check
        self._affine: Optional[SVDSystem] = None

        if all(S.is_affine for S in self.sets):
            blocks = [S.affine_system() for S in self.sets]
            matrix = np.vstack([M for M, _ in blocks] + [np.zeros((0, self.dim))])
            rhs = np.concatenate([c for _, c in blocks])
            if matrix.shape[0] == 0:
                matrix, rhs = np.zeros((1, self.dim)), np.zeros(1)
            system = SVDSystem(matrix, rhs)
            if not system.is_consistent():
                raise ConvergenceError(f"irisan affine kosong (residual least-squares {system.residual():.3e})")
            self._affine = system

    @property
    def dim(self) -> int:
        return self.sets[0].dim

    def infeasibility(self, y: np.ndarray) -> float:
        """max_i d(y, S_i)."""
        return max(S.distance(y) for S in self.sets)

    def dykstra(self, x: np.ndarray) -> np.ndarray:
        """
        Algoritma Dykstra siklik.

        Raises:
            ConvergenceError: Jika max_sweeps habis sebelum toleransi tercapai
        """
        y = x.copy()
        increments = [np.zeros_like(x) for _ in self.sets]
        tol = self.cfg.tolerance
        for sweep in range(1, self.cfg.max_sweeps + 1):
            y_prev = y
            for i, S in enumerate(self.sets):
                shifted = y + increments[i]
                y = S.project(shifted)
                increments[i] = shifted - y
            change = float(np.linalg.norm(y - y_prev))
            if self.infeasibility(y) <= tol and change <= tol * (1.0 + float(np.linalg.norm(y))):
                logger.debug(f"Dykstra konvergen dalam {sweep} sweep")
                return y
        raise ConvergenceError(
            f"Dykstra tidak konvergen dalam {self.cfg.max_sweeps} sweep "
            f"(infeasibility {self.infeasibility(y):.3e}); irisan mungkin kosong"
        )

    def project(self, x: np.ndarray) -> np.ndarray:
        if self._affine is None:
            return self.dykstra(x)

        closed_form = self._affine.project(x)
        if self.cross_check:
            try:
                y = self.dykstra(x)
                gap = float(np.linalg.norm(y - closed_form))
                if gap > 1e-8 * (1.0 + float(np.linalg.norm(x))):
                    logger.warning(f"Dykstra vs closed form affine berbeda {gap:.3e}; pakai closed form")
            except ConvergenceError as e:
                logger.warning(f"Cross-check Dykstra gagal ({e}); pakai closed form")
        return closed_form

    def distance(self, x: np.ndarray) -> float:
        return float(np.linalg.norm(x - self.project(x)))

    def contains(self, x: np.ndarray, tol: float) -> bool:
        return self.distance(x) <= tol


def dykstra_project(sets: Sequence[ConvexSet], x, cfg: Optional[DykstraConfig] = None) -> np.ndarray:
    """
    Proyeksi x ke irisan sets (Dykstra).

    Untuk koleksi yang seluruhnya affine, hasil dicek silang dengan
    closed form least-squares gabungan.

    Args:
        sets: daftar convex set (irisan diasumsikan tidak kosong)
        x: titik awal
        cfg: DykstraConfig (default dari Settings)

    Returns:
        Titik y dengan max_i d(y, S_i) <= cfg.tolerance

    Raises:
        ConvergenceError: Budget sweep habis (irisan kosong / ill-conditioned)
    """
    intersection = SetIntersection(sets, cfg, cross_check=True)
    x = as_vector(x)
    if x.shape[0] != intersection.dim:
        raise DimensionMismatchError(f"set berdimensi {intersection.dim}, x berdimensi {x.shape[0]}")
    return intersection.project(x)
