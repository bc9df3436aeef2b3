"""
Konfigurasi PROXPOINT.
Semua toleransi numerik dan default run disimpan di sini.

Nilai bisa di-override lewat environment variable dengan prefix PROXPOINT_
atau lewat file .env, contoh:
    PROXPOINT_LOG_LEVEL=DEBUG
    PROXPOINT_DYKSTRA_MAX_SWEEPS=20000
"""

from functools import lru_cache

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# Load environment variables dari file .env (jika ada)
load_dotenv()


class Settings(BaseSettings):
    """
    Settings aplikasi, dibaca sekali lalu dicache.
    """

    model_config = SettingsConfigDict(env_prefix="PROXPOINT_", extra="ignore")

    # Logging & output
    log_level: str = "INFO"
    output_dir: str = "results"

    # Default run (di-echo ke report)
    default_max_iters: int = Field(1000, ge=1)
    default_residual_tol: float = Field(1e-10, gt=0)

    # Toleransi numerik
    membership_tol: float = Field(1e-10, gt=0)   # relatif: tol * (1 + ||x||)
    rank_cutoff: float = Field(1e-10, gt=0)      # relatif terhadap sigma_max
    ratio_cutoff: float = Field(1e-12, gt=0)     # penyebut minimum rasio modulus
    trace_floor: float = Field(1e-14, gt=0)      # ratio_sq dihilangkan di bawah ini

    # Dykstra
    dykstra_max_sweeps: int = Field(10000, ge=1)
    dykstra_tolerance: float = Field(1e-12, gt=0)

    # Verifikasi statistik
    min_trials_per_step: int = Field(30, ge=1)


@lru_cache
def get_settings() -> Settings:
    """
    Mengambil Settings (dicache).

    Returns:
        Settings aktif
    """
    return Settings()
