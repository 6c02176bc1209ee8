"""Shared exception types.

ValidationError signals malformed or inconsistent input (CLI exit code 2),
BudgetExceeded signals a refusal to materialize something too large
(CLI exit code 3).  Both carry a plain human-readable message.
"""


class ValidationError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


# Default size limits.  Gluing constructions refuse to materialize more top
# cells than CELL_BUDGET; covering enumerations switch to sampled checks once
# the configuration space exceeds OMEGA_BUDGET; conjugacy closures abort after
# CLOSURE_BUDGET stored permutations.
CELL_BUDGET = 200_000
OMEGA_BUDGET = 1_000_000
CLOSURE_BUDGET = 1_000_000
