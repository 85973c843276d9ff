from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple


@dataclass(frozen=True)
class CheckReport:
    """Verdict of an exhaustive pair scan.

    ``witness`` is the first violating pair in scan order (as point indices, or
    raw points for windowed families). ``margin`` is RHS - LHS at the tightest
    pair, i.e. the smallest slack seen; ``tightest`` names that pair and
    ``lhs``/``rhs`` give its two sides. Continuity checks leave the numeric
    fields as ``None``.
    """

    holds: bool
    witness: Optional[Tuple] = None
    margin: Optional[float] = None
    pairs_checked: int = 0
    tightest: Optional[Tuple] = None
    lhs: Optional[float] = None
    rhs: Optional[float] = None

    def __bool__(self) -> bool:
        return self.holds
