"""Size caps for the exhaustive searches.

Every search takes an explicit ``limit`` argument; when it is omitted the
default below is used, unless ``THINKIT_SIZE_CAP`` is set in the environment,
in which case that value overrides all vertex-count caps.
"""

import os

from .errors import SizeCapExceeded

ENV_VAR = "THINKIT_SIZE_CAP"

THINNESS_LIMIT = 10
ORDER_SEARCH_LIMIT = 16
NON_BETWEENNESS_LIMIT = 8
WIDTH_LIMIT = 8
ISOPERIMETRIC_LIMIT = 16
PRODUCT_LIMIT = 64
# Candidate assignments enumerated by the brute-force oracles.
ORACLE_LIMIT = 1 << 20
MAX_CLIQUES_LIMIT = 100_000


def vertex_cap(default: int) -> int:
    value = os.environ.get(ENV_VAR)
    if value:
        try:
            return int(value)
        except ValueError:
            pass
    return default


def check_cap(what: str, size: int, limit: int | None, default: int) -> None:
    cap = vertex_cap(default) if limit is None else limit
    if size > cap:
        raise SizeCapExceeded(what, size, cap)
