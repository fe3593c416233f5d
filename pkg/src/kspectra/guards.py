"""Resource guard rails shared by the enumeration kernels."""

import os
from contextlib import contextmanager
from dataclasses import dataclass, replace


class ResourceError(RuntimeError):
    """Raised instead of running a search that exceeds the configured budget."""


@dataclass(frozen=True)
class Limits:
    max_size: int = 32
    max_search: int = 10**8
    max_family: int = 2**16


def _from_env():
    raw = os.environ.get("CS_MAX_BUDGET")
    if not raw:
        return Limits()
    try:
        budget = int(raw)
    except ValueError:
        raise ValueError(f"CS_MAX_BUDGET must be an integer, got {raw!r}") from None
    return Limits(max_search=budget)


_limits = _from_env()


def limits():
    return _limits


@contextmanager
def configured(**overrides):
    """Temporarily override guard values, e.g. ``with configured(max_size=8): ...``."""
    global _limits
    saved = _limits
    _limits = replace(_limits, **overrides)
    try:
        yield _limits
    finally:
        _limits = saved


def check_size(n, what="algebra"):
    if n > _limits.max_size:
        raise ResourceError(f"{what} of size {n} exceeds max_size={_limits.max_size}")


class SearchCounter:
    """Counts search nodes and trips the guard once the budget is spent."""

    __slots__ = ("count", "limit", "what")

    def __init__(self, what):
        self.count = 0
        self.limit = _limits.max_search
        self.what = what

    def tick(self, k=1):
        self.count += k
        if self.count > self.limit:
            raise ResourceError(f"{self.what}: search exceeded {self.limit} nodes")
