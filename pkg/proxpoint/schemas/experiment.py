from typing import Annotated, List, Literal, Optional

from pydantic import BaseModel, Field, PrivateAttr, model_validator

from ..core.config import get_settings
from ..services.algorithms import LambdaSchedule, RunConfig
from .operators import OperatorSchema

# ==================== EXPERIMENT CONFIG ====================


class ScheduleSchema(BaseModel):
    """
    Jadwal lambda.
    constant: {"kind": "constant", "lambda": 1.0}
    geometric: {"kind": "geometric", "lambda": 1.0, "factor": 2.0}
    """
    kind: Literal["constant", "geometric"] = "constant"
    lambda_: float = Field(..., alias="lambda", gt=0)
    factor: Optional[float] = Field(None, gt=1)

    model_config = {"populate_by_name": True}

    @model_validator(mode="after")
    def _factor_for_geometric(self):
        if self.kind == "geometric" and self.factor is None:
            raise ValueError("schedule geometric membutuhkan factor > 1")
        return self

    def to_domain(self) -> LambdaSchedule:
        if self.kind == "geometric":
            return LambdaSchedule.geometric(self.lambda_, self.factor)
        return LambdaSchedule.constant(self.lambda_)


class ProblemSchema(BaseModel):
    operators: List[OperatorSchema] = Field(..., min_length=1)
    x0: List[float] = Field(..., min_length=1)
    center: Optional[List[float]] = None    # default: common zero terdekat ke x0


class EstimationSchema(BaseModel):
    radius: float = Field(..., gt=0)
    n_samples: int = Field(..., ge=1)
    # Opsional: profil modulus per radius dari satu stream sampel
    radii: Optional[List[Annotated[float, Field(gt=0)]]] = Field(None, min_length=1)


class VerificationSchema(BaseModel):
    gamma_bar: float = Field(..., gt=0)
    kappa_bar: Optional[float] = Field(None, gt=0)   # wajib untuk multi-operator
    n_trials: int = Field(1000, ge=1)


class ExperimentConfig(BaseModel):
    """
    Config lengkap satu eksperimen.
    Default (max_iters, residual_tol) diambil dari Settings dan ikut di-echo ke report.
    """
    problem: ProblemSchema
    algorithm: Literal["proximal", "randomized", "barycentric"] = "proximal"
    schedule: ScheduleSchema
    max_iters: int = Field(default_factory=lambda: get_settings().default_max_iters, ge=1)
    residual_tol: float = Field(default_factory=lambda: get_settings().default_residual_tol, gt=0)
    seed: int = Field(0, ge=0)
    estimation: Optional[EstimationSchema] = None
    verification: Optional[VerificationSchema] = None

    # Objek domain hasil build (diisi oleh parse_config)
    _operators: list = PrivateAttr(default_factory=list)

    @model_validator(mode="after")
    def _dimensions_consistent(self):
        dim = len(self.problem.x0)
        for i, op in enumerate(self.problem.operators):
            if op.dim != dim:
                raise ValueError(
                    f"dimensi tidak konsisten: problem.operators[{i}] berdimensi {op.dim}, "
                    f"problem.x0 berdimensi {dim}"
                )
        if self.problem.center is not None and len(self.problem.center) != dim:
            raise ValueError(
                f"dimensi tidak konsisten: problem.center berdimensi {len(self.problem.center)}, "
                f"problem.x0 berdimensi {dim}"
            )
        return self

    @property
    def operators(self) -> list:
        return self._operators

    def run_config(self) -> RunConfig:
        return RunConfig(
            schedule=self.schedule.to_domain(),
            max_iters=self.max_iters,
            residual_tol=self.residual_tol,
            seed=self.seed,
        )

    def to_json_dict(self) -> dict:
        """Config efektif (default ikut) untuk di-echo ke report."""
        return self.model_dump(mode="json", by_alias=True, exclude_none=True)
