"""
JSON payloads emitted by the command line. Field order is fixed by the model
definitions and golden files pin the exact bytes, so reorder with care.

Roots are keyed by their comma-separated simple-root coordinates ("1,2") and
rationals are exact strings ("-1/4"); no floats are ever emitted.

"""

from fractions import Fraction
from typing import Mapping, Sequence

from pydantic import BaseModel, Field

from rootcascade.rootsys import Root, format_root


class CascadePayload(BaseModel):
    type: str
    m: int
    roots: list[list[int]]
    parents: list[int | None]


class TermPayload(BaseModel):
    exps: dict[str, int]
    coeff: str


class InvariantPayload(BaseModel):
    weight_fw: list[int]
    degree: int
    cascade_coeffs: list[int]
    terms: list[TermPayload]


class GeneratorSetPayload(BaseModel):
    type: str
    m: int
    max_degree: int
    generators: list[InvariantPayload]


class NilVectorPayload(BaseModel):
    coeffs: dict[str, str]


class LipsmanWolfPayload(BaseModel):
    type: str
    lambda_fw: list[int]
    lambda_star_fw: list[int]
    lambda_plus_star_fw: list[int]
    dimension: int
    codegree: int
    cascade_coeffs: list[int]
    proportionality: str | None
    passed: bool = Field(alias="pass")

    model_config = {
        "populate_by_name": True,
    }


def rational(value: Fraction | int) -> str:
    return str(Fraction(value))


def integral(values: Sequence[Fraction | int]) -> list[int]:
    result: list[int] = []
    for value in values:
        value = Fraction(value)
        if value.denominator != 1:
            raise ValueError(f"Expected an integer coordinate, got {value}")
        result.append(int(value))
    return result


def root_keyed(values: Mapping[Root, Fraction]) -> dict[str, str]:
    return {format_root(root): rational(value) for root, value in values.items()}


def dump(payload: BaseModel) -> str:
    return payload.model_dump_json(by_alias=True)
