from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Undefined:
    """Marker for a metric value that cannot be computed, with the reason why"""
    reason: str

    def __bool__(self) -> bool:
        return False


MetricValue = Union[float, Undefined]


def is_defined(value: MetricValue) -> bool:
    return not isinstance(value, Undefined)


def safe_ratio(numerator: float, denominator: float, reason: str) -> MetricValue:
    """
    Divides two quantities, returning Undefined instead of failing on a zero denominator

    Args:
        numerator: Dividend
        denominator: Divisor
        reason: Explanation stored in the marker when the divisor is zero

    Returns:
        MetricValue: float quotient or Undefined(reason)
    """
    if denominator == 0:
        return Undefined(reason)
    return float(numerator) / float(denominator)


def complement(value: MetricValue) -> MetricValue:
    """1 - value, propagating Undefined"""
    if isinstance(value, Undefined):
        return value
    return 1.0 - value
