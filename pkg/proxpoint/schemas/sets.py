from typing import Annotated, List, Literal, Union

from pydantic import BaseModel, Field

from ..services import sets as domain

# ==================== SET SCHEMAS ====================
# Encoding JSON convex set, contoh: {"type": "halfspace", "a": [1, 1], "b": 0}


class BoxSchema(BaseModel):
    """Box [lower, upper] per komponen."""
    type: Literal["box"]
    lower: List[float]
    upper: List[float]

    @property
    def dim(self) -> int:
        return len(self.lower)

    def to_domain(self) -> domain.Box:
        return domain.Box(self.lower, self.upper)


class HalfspaceSchema(BaseModel):
    """{x : <a, x> <= b}"""
    type: Literal["halfspace"]
    a: List[float]
    b: float

    @property
    def dim(self) -> int:
        return len(self.a)

    def to_domain(self) -> domain.Halfspace:
        return domain.Halfspace(self.a, self.b)


class HyperplaneSchema(BaseModel):
    """{x : <a, x> = b}"""
    type: Literal["hyperplane"]
    a: List[float]
    b: float

    @property
    def dim(self) -> int:
        return len(self.a)

    def to_domain(self) -> domain.Hyperplane:
        return domain.Hyperplane(self.a, self.b)


class BallSchema(BaseModel):
    type: Literal["ball"]
    center: List[float]
    radius: float = Field(..., ge=0)

    @property
    def dim(self) -> int:
        return len(self.center)

    def to_domain(self) -> domain.Ball:
        return domain.Ball(self.center, self.radius)


class AffineSchema(BaseModel):
    """{x : Ax = b}"""
    type: Literal["affine"]
    A: List[List[float]]
    b: List[float]

    @property
    def dim(self) -> int:
        return len(self.A[0]) if self.A else 0

    def to_domain(self) -> domain.AffineSubspace:
        return domain.AffineSubspace(self.A, self.b)


class SingletonSchema(BaseModel):
    type: Literal["singleton"]
    p: List[float]

    @property
    def dim(self) -> int:
        return len(self.p)

    def to_domain(self) -> domain.Singleton:
        return domain.Singleton(self.p)


class FullSpaceSchema(BaseModel):
    type: Literal["full_space"]
    dim_: int = Field(..., alias="dim", ge=1)

    model_config = {"populate_by_name": True}

    @property
    def dim(self) -> int:
        return self.dim_

    def to_domain(self) -> domain.FullSpace:
        return domain.FullSpace(self.dim_)


SetSchema = Annotated[
    Union[BoxSchema, HalfspaceSchema, HyperplaneSchema, BallSchema, AffineSchema, SingletonSchema, FullSpaceSchema],
    Field(discriminator="type"),
]
