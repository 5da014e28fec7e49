# Copyright 2026 cppforge contributors.
# This Software is subject to the terms of the XMOS Public Licence: Version 1.
""" Settings shared by the library and the command line front end """

from __future__ import annotations

import functools
from typing import List, Literal, Optional

import pydantic
import pydantic_settings

DEFAULT_CAP = 2**16
DEFAULT_SEARCH_CAP = 11
DEFAULT_ARITH_CAP = 2**20
DEFAULT_EXPAND_LIMIT = 2**14

COMMANDS = ("verify", "construct", "search", "kernel-check", "grid")
CONSTRUCTIONS = ("norm-lift", "trace-simple", "trace-general", "trace-binomial",
                 "binary-monomial", "monomial", "trace-perm")
SWEEPS = ("norm-lift", "trace-simple", "trace-general", "trace-binomial",
          "monomial", "binary-monomial", "kernel-binomial", "trace-perm", "search")


class ForgeSettings(pydantic_settings.BaseSettings):
    """Caps read from CPPFORGE_* environment variables.

    expand_limit bounds the degree up to which lifted polynomials are
    expanded densely; above it only the composite form is evaluated.
    """
    model_config = pydantic_settings.SettingsConfigDict(env_prefix="CPPFORGE_", extra="ignore")

    cap: int = pydantic.Field(default=DEFAULT_CAP, gt=1)
    search_cap: int = pydantic.Field(default=DEFAULT_SEARCH_CAP, gt=1)
    arith_cap: int = pydantic.Field(default=DEFAULT_ARITH_CAP, gt=1)
    expand_limit: int = pydantic.Field(default=DEFAULT_EXPAND_LIMIT, gt=1)


@functools.lru_cache(maxsize=1)
def get_settings() -> ForgeSettings:
    return ForgeSettings()


def exhaustive_cap(override: Optional[int] = None) -> int:
    if override is not None:
        return override
    return get_settings().cap


class RunConfig(pydantic.BaseModel):
    """One command line invocation after flags, config file and environment are merged."""
    model_config = pydantic.ConfigDict(extra="forbid")

    command: Literal["verify", "construct", "search", "kernel-check", "grid"]
    target: Optional[str] = None    # construction or sweep name

    p: Optional[int] = pydantic.Field(default=None, ge=2)
    r: int = pydantic.Field(default=1, ge=1)
    n: Optional[int] = pydantic.Field(default=None, ge=1)
    mod: Optional[List[int]] = None
    tmod: Optional[List[List[int]]] = None

    poly: Optional[List[int]] = None
    h: Optional[List[int]] = None
    L: Optional[str] = None     # "L=[(i,a_i),...]"
    k: Optional[int] = pydantic.Field(default=None, ge=1)
    a: Optional[int] = pydantic.Field(default=None, ge=0)
    c: Optional[int] = pydantic.Field(default=None, ge=0)
    theta: Optional[int] = pydantic.Field(default=None, ge=0)
    s: Optional[int] = pydantic.Field(default=None, ge=0)
    e: Optional[int] = pydantic.Field(default=None, ge=1)
    t: Optional[int] = pydantic.Field(default=None, ge=1)
    alpha: Optional[int] = pydantic.Field(default=None, ge=0)
    lambda_kind: Optional[Literal["trace", "norm"]] = None
    all_translates: bool = False

    max_order: int = pydantic.Field(default=4096, ge=2)
    seed: int = 0
    random_count: int = pydantic.Field(default=100, ge=0)
    format: Literal["json", "csv", "text"] = "json"
    out: Optional[str] = None
    cap: Optional[int] = pydantic.Field(default=None, gt=1)
    reproducible: bool = False
    verbose: bool = False

    @pydantic.model_validator(mode="after")
    def _check_command(self):
        if self.command == "construct" and self.target not in CONSTRUCTIONS:
            raise ValueError(f"construction must be one of {', '.join(CONSTRUCTIONS)}")
        if self.command == "grid" and self.target not in SWEEPS:
            raise ValueError(f"sweep must be one of {', '.join(SWEEPS)}")
        needs_field = self.command in ("verify", "search", "kernel-check") or (
            self.command == "construct" and self.target != "binary-monomial")
        if needs_field and self.p is None:
            raise ValueError(f"{self.command} needs --p")
        if self.command == "verify" and self.poly is None:
            raise ValueError("verify needs --poly")
        if self.command == "construct" and self.target != "binary-monomial" and self.n is None:
            raise ValueError(f"construct {self.target} needs --n")
        if self.command == "kernel-check" and (self.n is None or (self.k is None and self.L is None)):
            raise ValueError("kernel-check needs --n and either --k or --L")
        return self

    def effective_cap(self) -> int:
        return exhaustive_cap(self.cap)
