"""
Estimasi modulus metric subregularity dan rumus rate konvergensi.

Estimator berbasis sampling selalu memberi batas bawah modulus lokal:
rasio d(x, zero set) / residual dihitung di titik acak pada bola
center + radius * B, lalu diambil maksimumnya.
"""

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..core.config import get_settings
from ..core.exceptions import DimensionMismatchError, NotAZeroError, UnsupportedOperatorError
from .hilbert import as_vector, derive_rng, sample_ball
from .linalg import SVDSystem
from .operators import LinearOperator, MonotoneOperator, QuadraticSubdifferential, ShiftedOperator
from .sets import ConvexSet, DykstraConfig, SetIntersection

logger = logging.getLogger(__name__)

CENTER_TOL = 1e-8


@dataclass
class RegularityEstimate:
    """Hasil estimasi modulus beserta sertifikat sampling-nya."""

    modulus: float
    center: np.ndarray
    radius: float
    samples_used: int
    samples_skipped: int

    def to_dict(self) -> dict:
        return {
            "modulus": self.modulus if math.isfinite(self.modulus) else None,
            "center": [float(c) for c in self.center],
            "radius": self.radius,
            "samples_used": self.samples_used,
            "samples_skipped": self.samples_skipped,
        }


@dataclass
class RateReport:
    """Rate teoretis multi-operator beserta status asumsi lambda^2 > 3 gamma_bar^2."""

    rate: float
    assumption_ok: bool
    inputs: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def _validate_sampling(radius: float, n_samples: int) -> None:
    if not radius > 0:
        raise ValueError(f"radius harus > 0, dapat {radius}")
    if n_samples < 1:
        raise ValueError(f"n_samples harus >= 1, dapat {n_samples}")


RatioParts = Callable[[np.ndarray], Tuple[float, float]]


def _sample_ratios(
    center: np.ndarray, radius: float, n_samples: int, seed: int, ratio_parts: RatioParts
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Loop sampling bersama: ratio_parts(x) -> (pembilang, penyebut).

    Returns:
        (jarak tiap sampel ke center, rasio tiap sampel); rasio NaN untuk
        sampel dengan penyebut tidak finite atau <= ratio_cutoff
    """
    cutoff = get_settings().ratio_cutoff
    points = sample_ball(derive_rng(seed), center, radius, n_samples)
    offsets = np.linalg.norm(points - center[np.newaxis, :], axis=1)
    ratios = np.full(n_samples, np.nan)
    for j, x in enumerate(points):
        numerator, denominator = ratio_parts(x)
        if math.isfinite(denominator) and denominator > cutoff:
            ratios[j] = numerator / denominator
    return offsets, ratios


def _summarize(center: np.ndarray, radius: float, ratios: np.ndarray, n_samples: int) -> RegularityEstimate:
    used = ratios[~np.isnan(ratios)]
    return RegularityEstimate(
        modulus=float(np.max(used)) if used.size else 0.0,
        center=center.copy(),
        radius=float(radius),
        samples_used=int(used.size),
        samples_skipped=n_samples - int(used.size),
    )


def _max_ratio(
    center: np.ndarray, radius: float, n_samples: int, seed: int, ratio_parts: RatioParts
) -> RegularityEstimate:
    _, ratios = _sample_ratios(center, radius, n_samples, seed, ratio_parts)
    return _summarize(center, radius, ratios, n_samples)


def _nested_profile(
    center: np.ndarray, radii: Sequence[float], n_samples: int, seed: int, ratio_parts: RatioParts
) -> List[RegularityEstimate]:
    """
    Satu stream sampel di bola radius terbesar, disaring per radius.

    Sampel radius kecil adalah subset sampel radius besar sehingga modulus
    tidak turun saat radius naik. Sampel di luar radius dihitung skipped.
    """
    radii = sorted({float(r) for r in radii})
    if not radii:
        raise ValueError("radii tidak boleh kosong")
    for r in radii:
        _validate_sampling(r, n_samples)
    offsets, ratios = _sample_ratios(center, radii[-1], n_samples, seed, ratio_parts)

    profile = []
    for r in radii:
        inside = offsets <= r * (1.0 + 1e-12)
        profile.append(_summarize(center, r, np.where(inside, ratios, np.nan), n_samples))
    return profile


def _subregularity_parts(T: MonotoneOperator, center: np.ndarray) -> RatioParts:
    Z = T.zero_set()
    gap = Z.distance(center)
    if gap > CENTER_TOL:
        raise NotAZeroError(f"center bukan zero dari operator (jarak {gap:.3e})")
    return lambda x: (Z.distance(x), T.min_norm_element(x))



def estimate_subregularity_modulus(
    T: MonotoneOperator, center, radius: float, n_samples: int, seed: int
) -> RegularityEstimate:
    """
    Estimasi modulus subregularity T di center untuk 0.

    Rasio d(x, T^-1(0)) / d(0, T(x)) dimaksimalkan atas sampel uniform di
    bola center + radius * B. Deterministik untuk seed yang sama.

    Args:
        T: operator monoton
        center: titik di T^-1(0)
        radius: radius lingkungan sampling (delta)
        n_samples: jumlah sampel
        seed: seed generator

    Returns:
        RegularityEstimate

    Raises:
        NotAZeroError: Jika center bukan zero dari T
    """
    center = as_vector(center, "center")
    _validate_sampling(radius, n_samples)
    estimate = _max_ratio(center, radius, n_samples, seed, _subregularity_parts(T, center))
    logger.debug(f"gamma estimate {estimate.modulus:.6g} ({estimate.samples_used} sampel dipakai)")
    return estimate


def estimate_subregularity_profile(
    T: MonotoneOperator, center, radii: Sequence[float], n_samples: int, seed: int
) -> List[RegularityEstimate]:
    """
    Estimasi modulus subregularity untuk beberapa radius sekaligus.

    Entry radius terbesar identik dengan estimate_subregularity_modulus
    pada radius itu; modulus tidak turun sepanjang radius naik.

    Returns:
        List RegularityEstimate terurut naik menurut radius
    """
    center = as_vector(center, "center")
    return _nested_profile(center, radii, n_samples, seed, _subregularity_parts(T, center))


def spectral_modulus(T: MonotoneOperator) -> float:
    """
    Modulus subregularity eksak untuk operator affine: 1 / sigma_min+.

    Raises:
        UnsupportedOperatorError: Jika T bukan Linear/Quadratic (atau shifted-nya)
    """
    base = T.base if isinstance(T, ShiftedOperator) else T
    if isinstance(base, LinearOperator):
        matrix = base.A
    elif isinstance(base, QuadraticSubdifferential):
        matrix = base.Q
    else:
        raise UnsupportedOperatorError(f"spectral modulus tidak tersedia untuk {type(T).__name__}")
    sigma = SVDSystem(matrix).sigma_min_positive
    # A = 0: zero set = seluruh ruang, modulus 0
    return 0.0 if math.isinf(sigma) else 1.0 / sigma


def product_residual(zero_sets: Sequence[ConvexSet], x) -> float:
    """
    d(0, Phi(x)) = sqrt(sum_i d(x, S_i)^2) di ruang produk.
    """
    x = as_vector(x)
    total = 0.0
    for S in zero_sets:
        if S.dim != x.shape[0]:
            raise DimensionMismatchError(f"set berdimensi {S.dim}, x berdimensi {x.shape[0]}")
        total += S.distance(x) ** 2
    return math.sqrt(total)


def _intersection_with_center(
    zero_sets: Sequence[ConvexSet], center: np.ndarray, cfg: Optional[DykstraConfig]
) -> SetIntersection:
    intersection = SetIntersection(zero_sets, cfg)
    if center.shape[0] != intersection.dim:
        raise DimensionMismatchError(f"set berdimensi {intersection.dim}, center berdimensi {center.shape[0]}")
    gap = intersection.infeasibility(center)
    if gap > CENTER_TOL:
        raise NotAZeroError(f"center tidak berada di irisan (jarak maksimum {gap:.3e})")
    return intersection


def estimate_kappa(
    zero_sets: Sequence[ConvexSet],
    center,
    radius: float,
    n_samples: int,
    seed: int,
    cfg: Optional[DykstraConfig] = None,
) -> RegularityEstimate:
    """
    Estimasi modulus subregularity mapping produk Phi(x) = [S_1 - x, ..., S_m - x].

    Rasio = d(x, irisan S_i) / sqrt(sum_i d(x, S_i)^2); jarak ke irisan
    dihitung dengan Dykstra.

    Raises:
        NotAZeroError: Jika center tidak berada di irisan
        ConvergenceError: Jika Dykstra tidak konvergen
    """
    center = as_vector(center, "center")
    _validate_sampling(radius, n_samples)
    estimate = _max_ratio(center, radius, n_samples, seed, _kappa_parts(zero_sets, center, cfg))
    logger.debug(f"kappa estimate {estimate.modulus:.6g} untuk m={len(zero_sets)}")
    return estimate


def estimate_kappa_profile(
    zero_sets: Sequence[ConvexSet],
    center,
    radii: Sequence[float],
    n_samples: int,
    seed: int,
    cfg: Optional[DykstraConfig] = None,
) -> List[RegularityEstimate]:
    """Seperti estimate_subregularity_profile, untuk kappa."""
    center = as_vector(center, "center")
    return _nested_profile(center, radii, n_samples, seed, _kappa_parts(zero_sets, center, cfg))


def _kappa_parts(zero_sets: Sequence[ConvexSet], center: np.ndarray, cfg: Optional[DykstraConfig]) -> RatioParts:
    intersection = _intersection_with_center(zero_sets, center, cfg)
    return lambda x: (intersection.distance(x), product_residual(zero_sets, x))


def estimate_metric_inequality(
    zero_sets: Sequence[ConvexSet],
    center,
    radius: float,
    n_samples: int,
    seed: int,
    cfg: Optional[DykstraConfig] = None,
) -> RegularityEstimate:
    """
    Estimasi konstanta beta pada d(x, irisan S_i) <= beta * max_i d(x, S_i).

    Dengan seed yang sama berlaku kappa <= beta <= sqrt(m) * kappa.
    """
    center = as_vector(center, "center")
    _validate_sampling(radius, n_samples)
    intersection = _intersection_with_center(zero_sets, center, cfg)

    def parts(x):
        return intersection.distance(x), max(S.distance(x) for S in zero_sets)

    return _max_ratio(center, radius, n_samples, seed, parts)


def theoretical_rate_single(gamma_bar: float, lam: float) -> float:
    """
    Rate kontraksi kuadrat jarak proximal point klasik:
    gamma_bar^2 / (lambda^2 + gamma_bar^2).

    Raises:
        ValueError: Jika gamma_bar atau lambda tidak positif
    """
    if not (gamma_bar > 0 and lam > 0):
        raise ValueError(f"gamma_bar dan lambda harus > 0, dapat {gamma_bar}, {lam}")
    return gamma_bar**2 / (lam**2 + gamma_bar**2)


def theoretical_rate_multi(m: int, kappa_bar: float, gamma_bar: float, lam: float) -> RateReport:
    """
    Rate ekspektasi kontraksi proximal point acak untuk m operator:
    1 - 1/(m kappa^2) + 2/(m kappa^2) * sqrt(rate_single).

    Args:
        m: jumlah operator (>= 1)
        kappa_bar: batas atas modulus Phi
        gamma_bar: batas atas modulus tiap operator
        lam: proximal parameter

    Returns:
        RateReport (assumption_ok = lambda^2 > 3 gamma_bar^2)
    """
    if m < 1:
        raise ValueError(f"m harus >= 1, dapat {m}")
    if not kappa_bar > 0:
        raise ValueError(f"kappa_bar harus > 0, dapat {kappa_bar}")
    single = theoretical_rate_single(gamma_bar, lam)
    weight = 1.0 / (m * kappa_bar**2)
    rate = 1.0 - weight + 2.0 * weight * math.sqrt(single)
    return RateReport(
        rate=rate,
        assumption_ok=lam**2 > 3.0 * gamma_bar**2,
        inputs={"m": m, "kappa_bar": kappa_bar, "gamma_bar": gamma_bar, "lambda": lam},
    )
