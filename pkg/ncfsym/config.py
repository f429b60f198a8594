"""
Capacity limits for explicit-table computations.

All caps have documented defaults and can be overridden through optional
``NCFSYM_*`` environment variables or per call.
"""

import logging
import os
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .errors import CapacityError, ConfigurationError

logger = logging.getLogger(__name__)

ENV_PREFIX = "NCFSYM_"

# upper bounds of the caps that --max-n sets
MAX_PERMUTATION_BOUND = 12
MAX_ENUMERATION_BOUND = 8


class Limits(BaseModel):
    """Capacity caps, one per family of exponential-cost operations"""

    model_config = ConfigDict(frozen=True)

    max_table_vars: int = Field(24, ge=1, le=24, description="explicit truth tables")
    max_oracle_vars: int = Field(16, ge=1, le=24, description="pairwise/partition/canalyzing oracle")
    max_ncf_bf_vars: int = Field(12, ge=1, le=24, description="recursive NCF oracle")
    max_permutation_vars: int = Field(8, ge=1, le=MAX_PERMUTATION_BOUND, description="strong asymmetry search")
    max_enumeration_vars: int = Field(6, ge=2, le=MAX_ENUMERATION_BOUND, description="exhaustive NCF enumeration")

    @model_validator(mode="after")
    def _oracle_within_tables(self):
        if self.max_oracle_vars > self.max_table_vars:
            raise ValueError("max_oracle_vars cannot exceed max_table_vars")
        return self

    @classmethod
    def from_env(cls, environ=None) -> "Limits":
        """
        Build limits from ``NCFSYM_MAX_*`` variables; unset ones keep defaults

        Args:
            environ: mapping to read instead of ``os.environ``

        Returns:
            Limits instance
        """
        environ = os.environ if environ is None else environ
        overrides = {}
        for name in cls.model_fields:
            key = ENV_PREFIX + name.upper()
            if key in environ:
                overrides[name] = environ[key]
        try:
            limits = cls(**overrides)
        except ValidationError as e:
            raise ConfigurationError(f"Invalid limits from environment: {e}") from e
        if overrides:
            logger.info(f"Capacity limits overridden from environment: {overrides}")
        return limits

    def with_cap(self, max_n: int) -> "Limits":
        """
        Return a copy whose enumeration and permutation caps are ``max_n``

        Each cap is clamped to its own upper bound, so a large ``max_n``
        only raises the caps as far as they can go.
        """
        enumeration = min(max_n, MAX_ENUMERATION_BOUND)
        permutation = min(max_n, MAX_PERMUTATION_BOUND)
        if (enumeration, permutation) != (max_n, max_n):
            logger.info(f"--max-n {max_n} clamped to enumeration {enumeration}, permutation {permutation}")
        try:
            return Limits(**{
                **self.model_dump(),
                "max_enumeration_vars": enumeration,
                "max_permutation_vars": permutation,
            })
        except ValidationError as e:
            raise ConfigurationError(f"Invalid --max-n {max_n}: {e}") from e

    def check(self, field: str, n: int, what: str) -> None:
        """Raise CapacityError if ``n`` exceeds the named cap"""
        cap = getattr(self, field)
        if n > cap:
            raise CapacityError(f"{what} supports n <= {cap}, got n={n}")


_default_limits: Optional[Limits] = None


def get_limits() -> Limits:
    """Process-wide default limits, read from the environment on first use"""
    global _default_limits
    if _default_limits is None:
        _default_limits = Limits.from_env()
    return _default_limits


def resolve(limits: Optional[Limits]) -> Limits:
    return limits if limits is not None else get_limits()
