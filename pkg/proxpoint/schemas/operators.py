from typing import Annotated, List, Literal, Union

from pydantic import BaseModel, Field

from ..services import operators as domain
from .sets import SetSchema

# ==================== OPERATOR SCHEMAS ====================
# Encoding JSON operator monoton, contoh:
#   {"type": "linear", "A": [[0, -1], [1, 0]]}
#   {"type": "normal_cone", "set": {...}}


class LinearSchema(BaseModel):
    """T(x) = Ax, A + A^T harus PSD."""
    type: Literal["linear"]
    A: List[List[float]]

    @property
    def dim(self) -> int:
        return len(self.A)

    def to_domain(self) -> domain.LinearOperator:
        return domain.LinearOperator(self.A)


class NormalConeSchema(BaseModel):
    """T = N_S."""
    type: Literal["normal_cone"]
    set: SetSchema

    @property
    def dim(self) -> int:
        return self.set.dim

    def to_domain(self) -> domain.NormalConeOperator:
        return domain.NormalConeOperator(self.set.to_domain())


class QuadraticSchema(BaseModel):
    """Gradien 1/2 x^T Q x + c^T x."""
    type: Literal["quadratic"]
    Q: List[List[float]]
    c: List[float]

    @property
    def dim(self) -> int:
        return len(self.Q)

    def to_domain(self) -> domain.QuadraticSubdifferential:
        return domain.QuadraticSubdifferential(self.Q, self.c)


class L1Schema(BaseModel):
    """Subdifferential w * ||.||_1."""
    type: Literal["l1"]
    w: float = Field(..., gt=0)
    dim_: int = Field(..., alias="dim", ge=1)

    model_config = {"populate_by_name": True}

    @property
    def dim(self) -> int:
        return self.dim_

    def to_domain(self) -> domain.L1Subdifferential:
        return domain.L1Subdifferential(self.w, self.dim_)


class ShiftedSchema(BaseModel):
    """T(x) = base(x) - b, base linear/quadratic."""
    type: Literal["shifted"]
    base: "OperatorSchema"
    b: List[float]

    @property
    def dim(self) -> int:
        return self.base.dim

    def to_domain(self) -> domain.ShiftedOperator:
        return domain.ShiftedOperator(self.base.to_domain(), self.b)


OperatorSchema = Annotated[
    Union[LinearSchema, NormalConeSchema, QuadraticSchema, L1Schema, ShiftedSchema],
    Field(discriminator="type"),
]

ShiftedSchema.model_rebuild()
