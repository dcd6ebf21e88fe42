"""Windowed numeric images of operators that have no closed-form output.

The Hilbert and Hausdorff operators (and the generic kernel operator)
produce values shell by shell from truncated m-fold sums.  Their output
is a `ShellImage`: values over a declared shell window, a per-shell
additive error bound from kernel truncation, and one-term geometric
majorants for the two tails.  Norm operations accept a ShellImage next
to a ShellFunction and propagate the bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .context import NEG_INF, Number, PadicContext
from .errors import ParameterError


@dataclass(frozen=True)
class ShellImage:
    """Operator output evaluated on shells lo..hi with explicit tail bounds.

    ``tail_hi = (coeff, expo)`` certifies value(k) <= coeff * p^(k*expo)
    for k > hi; ``tail_lo`` likewise for k < lo.  ``None`` means the value
    is exactly zero beyond that edge.
    """

    lo: int
    hi: int
    values: tuple[float, ...]
    errors: tuple[float, ...] = ()
    tail_lo: Optional[tuple[float, Number]] = None
    tail_hi: Optional[tuple[float, Number]] = None

    def __post_init__(self) -> None:
        if self.hi - self.lo + 1 != len(self.values):
            raise ParameterError("window size does not match number of values")
        if self.errors and len(self.errors) != len(self.values):
            raise ParameterError("errors must match values length")

    def value(self, k: int) -> float:
        if self.lo <= k <= self.hi:
            return self.values[k - self.lo]
        return 0.0

    def error(self, k: int) -> float:
        if not self.errors:
            return 0.0
        if self.lo <= k <= self.hi:
            return self.errors[k - self.lo]
        return 0.0

    def shells(self) -> range:
        return range(self.lo, self.hi + 1)
