"""
Primitif ruang inner-product berdimensi hingga (R^n).

Vector direpresentasikan sebagai numpy array float64 1-D.
Semua fungsi di sini pure dan aman dipakai bersamaan.
"""

from typing import Sequence, Union

import numpy as np

from ..core.exceptions import DimensionMismatchError, NonFiniteVectorError

VectorLike = Union[np.ndarray, Sequence[float]]


def as_vector(x: VectorLike, name: str = "x") -> np.ndarray:
    """
    Mengubah input menjadi Vector yang valid.

    Args:
        x: list/tuple/array angka
        name: nama argumen (untuk pesan error)

    Returns:
        Salinan float64 1-D

    Raises:
        NonFiniteVectorError: Jika kosong, bukan 1-D, atau ada NaN/Inf
    """
    arr = np.array(x, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise NonFiniteVectorError(f"{name} harus vector 1-D dengan dim >= 1, dapat shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteVectorError(f"{name} berisi NaN/Inf")
    return arr


def check_same_dim(x: np.ndarray, y: np.ndarray, names: str = "x, y") -> None:
    """
    Memastikan dua vector berdimensi sama.

    Raises:
        DimensionMismatchError: Jika dimensi berbeda
    """
    if x.shape != y.shape:
        raise DimensionMismatchError(f"dimensi tidak sama ({names}): {x.shape[0]} vs {y.shape[0]}")


def inner(x: VectorLike, y: VectorLike) -> float:
    """
    Inner product Euclidean sum_i x_i y_i.

    Raises:
        DimensionMismatchError: Jika dimensi berbeda
    """
    x = as_vector(x, "x")
    y = as_vector(y, "y")
    check_same_dim(x, y)
    return float(np.dot(x, y))


def norm(x: VectorLike) -> float:
    """Norm Euclidean sqrt(<x, x>)."""
    return float(np.linalg.norm(as_vector(x)))


def dist(x: VectorLike, y: VectorLike) -> float:
    """
    Jarak titik ke titik, norm(x - y).

    Raises:
        DimensionMismatchError: Jika dimensi berbeda
    """
    x = as_vector(x, "x")
    y = as_vector(y, "y")
    check_same_dim(x, y)
    return float(np.linalg.norm(x - y))


def sample_ball(rng: np.random.Generator, center: np.ndarray, radius: float, n_samples: int) -> np.ndarray:
    """
    Sampling uniform di bola center + radius * B.

    Arah = Gaussian yang dinormalisasi, panjang = radius * u^(1/n).

    Args:
        rng: Generator numpy yang sudah di-seed
        center: pusat bola
        radius: jari-jari (> 0)
        n_samples: jumlah titik

    Returns:
        Array shape (n_samples, n)
    """
    n = center.shape[0]
    directions = rng.standard_normal((n_samples, n))
    lengths = np.linalg.norm(directions, axis=1)
    # Gaussian nol persis praktis tidak mungkin, tapi hindari pembagian 0
    lengths[lengths == 0.0] = 1.0
    directions /= lengths[:, np.newaxis]
    scale = radius * rng.random(n_samples) ** (1.0 / n)
    return center[np.newaxis, :] + directions * scale[:, np.newaxis]


def derive_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """
    Generator independen untuk (seed, stream).

    Trial ke-t memakai derive_rng(seed, t) sehingga tiap trial
    reproducible terlepas dari urutan eksekusi.
    """
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(stream)]))
