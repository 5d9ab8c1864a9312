"""Environment-driven settings.

Every key is read from a ``FACETFOREST__*`` variable (the thread count keeps the
shorter ``FACETFOREST_THREADS`` name used by the command line documentation).
"""
import os
from dataclasses import dataclass, replace
from functools import lru_cache

from .logging import logger

DEFAULT_MAX_SUBCOMPLEX_FACETS = 20
DEFAULT_KOSZUL_MAX_VARS = 8
DEFAULT_KOSZUL_MAX_GENS = 6
DEFAULT_KOSZUL_BOX_ROUNDS = 3
DEFAULT_MAX_ENUMERATION_VERTICES = 6


@dataclass(frozen=True)
class Settings:
    threads: int = 1
    max_subcomplex_facets: int = DEFAULT_MAX_SUBCOMPLEX_FACETS
    koszul_max_vars: int = DEFAULT_KOSZUL_MAX_VARS
    koszul_max_gens: int = DEFAULT_KOSZUL_MAX_GENS
    koszul_box_rounds: int = DEFAULT_KOSZUL_BOX_ROUNDS
    max_enumeration_vertices: int = DEFAULT_MAX_ENUMERATION_VERTICES

    def override(self, **changes) -> "Settings":
        """Return a copy with the non-None entries of ``changes`` applied."""
        changes = {key: value for key, value in changes.items() if value is not None}
        updated = replace(self, **changes)
        if updated.koszul_max_vars > DEFAULT_KOSZUL_MAX_VARS:
            logger.warning(
                f"Koszul variable cap raised to {updated.koszul_max_vars}; "
                "degree boxes grow exponentially in the number of variables"
            )
        if updated.koszul_max_gens > DEFAULT_KOSZUL_MAX_GENS:
            logger.warning(
                f"Koszul generator cap raised to {updated.koszul_max_gens}; "
                "Koszul stages grow as binomial(q, i)"
            )
        return updated


def _int_from_env(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer value {raw!r} for {name}")
        return default
    if value < 1:
        logger.warning(f"Ignoring non-positive value {value} for {name}")
        return default
    return value


@lru_cache(maxsize=None)
def get_settings() -> Settings:
    """Settings read from the process environment (cached for the process)."""
    settings = Settings(
        threads=_int_from_env("FACETFOREST_THREADS", 1),
        max_subcomplex_facets=_int_from_env(
            "FACETFOREST__MAX_SUBCOMPLEX_FACETS", DEFAULT_MAX_SUBCOMPLEX_FACETS
        ),
        koszul_max_vars=_int_from_env("FACETFOREST__KOSZUL_MAX_VARS", DEFAULT_KOSZUL_MAX_VARS),
        koszul_max_gens=_int_from_env("FACETFOREST__KOSZUL_MAX_GENS", DEFAULT_KOSZUL_MAX_GENS),
        koszul_box_rounds=_int_from_env(
            "FACETFOREST__KOSZUL_BOX_ROUNDS", DEFAULT_KOSZUL_BOX_ROUNDS
        ),
        max_enumeration_vertices=_int_from_env(
            "FACETFOREST__MAX_ENUMERATION_VERTICES", DEFAULT_MAX_ENUMERATION_VERTICES
        ),
    )
    return settings.override()
