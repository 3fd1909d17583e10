from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Optional


@dataclass(frozen=True)
class TestResult:
    """Outcome of one hypothesis test.

    `statistic` is t for the t-tests and W for Shapiro–Wilk, which has no df.
    """

    __test__ = False  # keep pytest from collecting this as a test class

    statistic: float
    p_value: float
    df: Optional[float]
    method_tag: str
    n: Optional[int] = None

    def rejects(self, alpha: float) -> bool:
        return self.p_value < alpha

    def to_dict(self) -> Dict[str, Any]:
        return {
            "method_tag": self.method_tag,
            "statistic": self.statistic,
            "p_value": self.p_value,
            "df": self.df,
            "n": self.n,
        }
