"""
Tiga iterasi proximal point: klasik, acak, dan barycentric.

Semua run menghasilkan Trace per iterasi (jarak ke zero set, rasio
kontraksi kuadrat, residual, indeks operator yang dipilih).
Stopping rule memakai jarak ke zero set, bukan residual.
"""

import csv
import io
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..core.config import get_settings
from ..core.exceptions import DimensionMismatchError
from .hilbert import as_vector, derive_rng
from .operators import MonotoneOperator
from .regularity import theoretical_rate_single
from .sets import DykstraConfig, SetIntersection

logger = logging.getLogger(__name__)

TRACE_HEADER = ["k", "lambda", "dist", "ratio_sq", "residual", "chosen_index"]

CONVERGED = "converged"
BUDGET_EXHAUSTED = "budget_exhausted"


# ==================== CONFIG TYPES ====================

@dataclass(frozen=True)
class LambdaSchedule:
    """
    Jadwal proximal parameter.

    - constant: lambda_k = lambda0
    - geometric: lambda_k = lambda0 * factor^k (factor > 1, konvergensi superlinear)
    """

    kind: str
    lambda0: float
    factor: float = 1.0

    def __post_init__(self):
        if self.kind not in ("constant", "geometric"):
            raise ValueError(f"jenis schedule tidak dikenal: {self.kind}")
        if not (math.isfinite(self.lambda0) and self.lambda0 > 0):
            raise ValueError(f"lambda harus > 0, dapat {self.lambda0}")
        if self.kind == "geometric" and not self.factor > 1:
            raise ValueError(f"factor geometric harus > 1, dapat {self.factor}")

    @classmethod
    def constant(cls, lam: float) -> "LambdaSchedule":
        return cls("constant", float(lam))

    @classmethod
    def geometric(cls, lambda0: float, factor: float) -> "LambdaSchedule":
        return cls("geometric", float(lambda0), float(factor))

    @property
    def is_constant(self) -> bool:
        return self.kind == "constant"

    def value(self, k: int) -> float:
        if self.is_constant:
            return self.lambda0
        return self.lambda0 * self.factor**k


@dataclass(frozen=True)
class RunConfig:
    schedule: LambdaSchedule
    max_iters: int = 1000
    residual_tol: float = 1e-10
    seed: int = 0

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError(f"max_iters harus >= 1, dapat {self.max_iters}")
        if not self.residual_tol > 0:
            raise ValueError(f"residual_tol harus > 0, dapat {self.residual_tol}")
        if self.seed < 0:
            raise ValueError(f"seed harus >= 0, dapat {self.seed}")


# ==================== TRACE ====================

@dataclass
class TraceRecord:
    k: int
    lam: float
    x: np.ndarray
    dist: float
    ratio_sq: Optional[float] = None
    residual: Optional[float] = None
    chosen_index: Optional[int] = None


@dataclass
class Trace:
    """Rekaman per iterasi sebuah run, kontigu dari k = 0."""

    records: List[TraceRecord] = field(default_factory=list)
    status: str = BUDGET_EXHAUSTED

    @property
    def iterations(self) -> int:
        """Jumlah langkah yang benar-benar diambil."""
        return len(self.records) - 1

    @property
    def final_dist(self) -> float:
        return self.records[-1].dist

    @property
    def final_x(self) -> np.ndarray:
        return self.records[-1].x

    def dists(self) -> np.ndarray:
        return np.array([r.dist for r in self.records])

    def ratios(self) -> List[Optional[float]]:
        return [r.ratio_sq for r in self.records]

    def chosen_indices(self) -> List[Optional[int]]:
        return [r.chosen_index for r in self.records]

    def to_csv(self) -> str:
        """CSV dengan header k,lambda,dist,ratio_sq,residual,chosen_index (kosong jika tidak terdefinisi)."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(TRACE_HEADER)
        for r in self.records:
            writer.writerow([r.k, _fmt(r.lam), _fmt(r.dist), _fmt(r.ratio_sq), _fmt(r.residual),
                             "" if r.chosen_index is None else r.chosen_index])
        return buffer.getvalue()

    def to_dict(self, include_iterates: bool = False) -> dict:
        rows = []
        for r in self.records:
            row = {
                "k": r.k,
                "lambda": r.lam,
                "dist": r.dist,
                "ratio_sq": r.ratio_sq,
                "residual": r.residual,
                "chosen_index": r.chosen_index,
            }
            if include_iterates:
                row["x"] = [float(c) for c in r.x]
            rows.append(row)
        return {"status": self.status, "iterations": self.iterations, "records": rows}


def _fmt(value: Optional[float]) -> str:
    # repr float = round-trip eksak
    return "" if value is None else repr(float(value))


# ==================== CORE LOOP ====================

# step(x, lam) -> (x_next, residual, chosen_index)
StepFn = Callable[[np.ndarray, float], Tuple[np.ndarray, float, Optional[int]]]


def _iterate(step: StepFn, distance: Callable[[np.ndarray], float], x0: np.ndarray, cfg: RunConfig) -> Trace:
    floor = get_settings().trace_floor
    trace = Trace()
    x = x0
    d = distance(x)
    for k in range(cfg.max_iters + 1):
        lam = cfg.schedule.value(k)
        if d <= cfg.residual_tol:
            trace.records.append(TraceRecord(k=k, lam=lam, x=x, dist=d))
            trace.status = CONVERGED
            break
        if k == cfg.max_iters:
            trace.records.append(TraceRecord(k=k, lam=lam, x=x, dist=d))
            break
        x_next, residual, index = step(x, lam)
        d_next = distance(x_next)
        ratio = d_next**2 / d**2 if d > floor else None
        trace.records.append(
            TraceRecord(k=k, lam=lam, x=x, dist=d, ratio_sq=ratio, residual=residual, chosen_index=index)
        )
        logger.debug(f"k={k} lambda={lam:.4g} dist={d:.6e} -> {d_next:.6e}")
        x, d = x_next, d_next
    logger.info(f"Run selesai: status={trace.status}, iterasi={trace.iterations}, dist akhir={trace.final_dist:.3e}")
    return trace


def _check_ops(ops: Sequence[MonotoneOperator], x0) -> np.ndarray:
    if not ops:
        raise ValueError("daftar operator tidak boleh kosong")
    x0 = as_vector(x0, "x0")
    for i, op in enumerate(ops):
        if op.dim != x0.shape[0]:
            raise DimensionMismatchError(f"operator {i} berdimensi {op.dim}, x0 berdimensi {x0.shape[0]}")
    return x0


def common_zero_set(ops: Sequence[MonotoneOperator], cfg: Optional[DykstraConfig] = None) -> SetIntersection:
    """Irisan zero set semua operator (oracle jarak via Dykstra)."""
    return SetIntersection([op.zero_set() for op in ops], cfg)


# ==================== ALGORITHMS ====================

def run_proximal_point(T: MonotoneOperator, x0, cfg: RunConfig) -> Trace:
    """
    Proximal point klasik x_{k+1} = J_{lambda_k T}(x_k).

    Args:
        T: operator monoton
        x0: titik awal
        cfg: RunConfig (schedule, max_iters, residual_tol)

    Returns:
        Trace dengan dist_k = d(x_k, T^-1(0))
    """
    x0 = _check_ops([T], x0)
    Z = T.zero_set()

    def step(x, lam):
        y = T.resolvent(lam)(x)
        return y, float(np.linalg.norm(x - y)) / lam, None

    return _iterate(step, Z.distance, x0, cfg)


def run_randomized_proximal(
    ops: Sequence[MonotoneOperator],
    x0,
    cfg: RunConfig,
    trial: int = 0,
    dykstra: Optional[DykstraConfig] = None,
) -> Trace:
    """
    Proximal point acak: tiap iterasi memilih i uniform dari {0..m-1}
    lalu x_{k+1} = J_{lambda_k T_i}(x_k).

    Generator = derive_rng(cfg.seed, trial); seed dan trial yang sama
    menghasilkan trace identik bit-per-bit.

    Raises:
        ConvergenceError: Jika irisan zero set kosong
    """
    x0 = _check_ops(ops, x0)
    common = common_zero_set(ops, dykstra)
    rng = derive_rng(cfg.seed, trial)
    m = len(ops)

    def step(x, lam):
        i = int(rng.integers(m))
        y = ops[i].resolvent(lam)(x)
        return y, float(np.linalg.norm(x - y)) / lam, i

    return _iterate(step, common.distance, x0, cfg)


def barycentric_map(ops: Sequence[MonotoneOperator], x: np.ndarray, lam: float) -> np.ndarray:
    """
    (1/m) sum_i J_{lambda T_i}(x), dijumlah urut indeks (left fold).
    """
    total = ops[0].resolvent(lam)(x)
    for op in ops[1:]:
        total = total + op.resolvent(lam)(x)
    return total / len(ops)


def fixed_point_residual(ops: Sequence[MonotoneOperator], x, lam: float) -> float:
    """||x - barycentric_map(x)||; nol persis di common zero."""
    x = _check_ops(ops, x)
    return float(np.linalg.norm(x - barycentric_map(ops, x, lam)))


def run_barycentric_proximal(
    ops: Sequence[MonotoneOperator], x0, cfg: RunConfig, dykstra: Optional[DykstraConfig] = None
) -> Trace:
    """
    Barycentric proximal method x_{k+1} = (1/m) sum_i J_{lambda_k T_i}(x_k).

    Deterministik; seed tidak dipakai. Untuk normal cone ini adalah
    averaged projections.
    """
    x0 = _check_ops(ops, x0)
    common = common_zero_set(ops, dykstra)

    def step(x, lam):
        y = barycentric_map(ops, x, lam)
        return y, float(np.linalg.norm(x - y)) / lam, None

    return _iterate(step, common.distance, x0, cfg)


def find_common_zero(ops: Sequence[MonotoneOperator], x0, dykstra: Optional[DykstraConfig] = None) -> np.ndarray:
    """
    Proyeksi x0 ke irisan zero set (titik common zero terdekat).

    Raises:
        ConvergenceError: Jika irisan kosong
    """
    x0 = _check_ops(ops, x0)
    return common_zero_set(ops, dykstra).project(x0)


def branch_decrease_gap(
    ops: Sequence[MonotoneOperator],
    x: np.ndarray,
    lam: float,
    gamma_bar: float,
    common: SetIntersection,
) -> List[float]:
    """
    Margin ketaksamaan per cabang:
    d(J_i x, C)^2 <= d(x, C)^2 - (1 - 2 sqrt(rho)) d(x, Z_i)^2,
    dengan C irisan zero set, Z_i zero set T_i, rho = rate tunggal.

    Returns:
        List margin (kanan - kiri) per operator; negatif berarti dilanggar
    """
    shrink = 1.0 - 2.0 * math.sqrt(theoretical_rate_single(gamma_bar, lam))
    d_common_sq = common.distance(x) ** 2
    margins = []
    for op in ops:
        y = op.resolvent(lam)(x)
        rhs = d_common_sq - shrink * op.zero_set().distance(x) ** 2
        margins.append(rhs - common.distance(y) ** 2)
    return margins
