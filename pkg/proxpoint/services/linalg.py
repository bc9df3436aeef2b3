"""
Utilitas SVD untuk sistem linear Ax = b.

Dipakai untuk proyeksi ke affine subspace, null space, dan modulus
spektral. Keputusan rank selalu eksplisit: singular value di bawah
rank_cutoff * sigma_max dianggap nol.
"""

from typing import Optional

import numpy as np

from ..core.config import get_settings


class SVDSystem:
    """
    Wrapper SVD untuk matriks A (m x n) plus right-hand side b.

    Menyimpan pseudo-inverse, rank, dan basis null space sehingga
    proyeksi ke {x : Ax = b} bisa dipakai berulang tanpa SVD ulang.
    """

    def __init__(self, matrix: np.ndarray, rhs: Optional[np.ndarray] = None, rank_cutoff: Optional[float] = None):
        matrix = np.atleast_2d(np.asarray(matrix, dtype=np.float64))
        self.matrix = matrix
        self.rhs = np.zeros(matrix.shape[0]) if rhs is None else np.asarray(rhs, dtype=np.float64)
        self.rank_cutoff = get_settings().rank_cutoff if rank_cutoff is None else rank_cutoff

        self.U, self.s, self.Vh = np.linalg.svd(matrix, full_matrices=True)
        sigma_max = self.s[0] if self.s.size else 0.0
        keep = self.s > self.rank_cutoff * sigma_max if sigma_max > 0 else np.zeros_like(self.s, dtype=bool)
        self.rank = int(np.count_nonzero(keep))

        # Pseudo-inverse hanya dari singular value yang lolos cutoff
        U_r = self.U[:, : self.rank]
        s_r = self.s[: self.rank]
        V_r = self.Vh[: self.rank, :].T
        self.pinv = V_r @ np.diag(1.0 / s_r) @ U_r.T if self.rank else np.zeros(matrix.shape[::-1])
        self.null_basis = self.Vh[self.rank :, :].T  # kolom = basis ortonormal null(A)

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]

    @property
    def sigma_min_positive(self) -> float:
        """Singular value positif terkecil (di atas cutoff); inf jika A = 0."""
        if self.rank == 0:
            return float("inf")
        return float(self.s[self.rank - 1])

    def particular_solution(self) -> np.ndarray:
        """Solusi least-squares dengan norm minimum A^+ b."""
        return self.pinv @ self.rhs

    def residual(self) -> float:
        """Residual least-squares ||A A^+ b - b||."""
        return float(np.linalg.norm(self.matrix @ self.particular_solution() - self.rhs))

    def is_consistent(self, tol: Optional[float] = None) -> bool:
        """Sistem Ax = b konsisten jika residual <= tol * (1 + ||b||)."""
        tol = get_settings().membership_tol if tol is None else tol
        return self.residual() <= tol * (1.0 + float(np.linalg.norm(self.rhs)))

    def project(self, x: np.ndarray) -> np.ndarray:
        """Proyeksi x ke {y : Ay = b}: x - A^+ (Ax - b)."""
        return x - self.pinv @ (self.matrix @ x - self.rhs)
