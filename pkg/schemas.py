# schemas.py
from __future__ import annotations

import json
from fractions import Fraction
from typing import List, Optional

from pydantic import BaseModel, Field, StrictInt, ValidationError, field_validator

from combinatorics import MultiPartition
from errors import InvalidInputError
from polynomial import ParamSpec, parse_rational


# ======================
# Input Model: multipartition
# ======================
class MultiPartitionIn(BaseModel):
    """
    JSON form of a multipartition: an array of arrays of positive integers,
    each weakly decreasing, e.g. [[4,1],[],[2,1]].
    """

    components: List[List[StrictInt]] = Field(..., min_length=1)

    @field_validator("components")
    @classmethod
    def _check_components(cls, comps: List[List[int]]) -> List[List[int]]:
        for s, parts in enumerate(comps):
            if any(p <= 0 for p in parts):
                raise ValueError(f"component {s} has non-positive entries: {parts}")
            if any(a < b for a, b in zip(parts, parts[1:])):
                raise ValueError(f"component {s} is not weakly decreasing: {parts}")
        return comps

    def to_multipartition(self) -> MultiPartition:
        return MultiPartition.of(self.components)


def _first_error(e: ValidationError) -> str:
    err = e.errors()[0]
    return str(err.get("msg", e))


def parse_multipartition(text: str) -> MultiPartition:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"malformed multipartition JSON: {e.msg} at position {e.pos}") from e
    if not isinstance(data, list):
        raise InvalidInputError("multipartition JSON must be an array of arrays")
    try:
        return MultiPartitionIn(components=data).to_multipartition()
    except ValidationError as e:
        raise InvalidInputError(f"invalid multipartition: {_first_error(e)}") from e


# ======================
# Input Model: parameter specialization
# ======================
class ParamSpecIn(BaseModel):
    """Exact parameters as strings: integers or p/q, all nonzero."""

    q: str
    Q: Optional[List[str]] = None

    @field_validator("q")
    @classmethod
    def _check_q(cls, v: str) -> str:
        if parse_rational(v) == 0:
            raise ValueError("q must be nonzero")
        return v

    @field_validator("Q")
    @classmethod
    def _check_Q(cls, v: Optional[List[str]]) -> Optional[List[str]]:
        if v is None:
            return v
        for s, item in enumerate(v):
            if parse_rational(item) == 0:
                raise ValueError(f"Q{s} must be nonzero")
        return v

    def to_spec(self, d: int) -> ParamSpec:
        if self.Q is None:
            if d != 1:
                raise InvalidInputError(f"--Q needs {d} comma-separated values")
            Q_vals: tuple[Fraction, ...] = (Fraction(1),)
        else:
            if len(self.Q) != d:
                raise InvalidInputError(f"--Q has {len(self.Q)} values, expected d={d}")
            Q_vals = tuple(parse_rational(v) for v in self.Q)
        return ParamSpec(parse_rational(self.q), Q_vals)


def parse_param_spec(q: str, Q: Optional[str], d: int) -> ParamSpec:
    Q_list = [item for item in Q.split(",")] if Q is not None else None
    try:
        model = ParamSpecIn(q=q, Q=Q_list)
    except ValidationError as e:
        raise InvalidInputError(f"invalid parameters: {_first_error(e)}") from e
    return model.to_spec(d)
