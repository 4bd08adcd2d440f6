"""Closed-form privacy metrics for the secretary schemes.

Guessing the type behind one secretary is modelled as two independent
guesses: the number of types ``k`` (uniform on ``1..n``) and then the
secretary's job among ``k`` types (or ``k * l`` groups in the advanced
scheme where every type has ``l`` instances).
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from typing import Dict, Optional

from secretaries.errors import DomainError

logger = logging.getLogger(__name__)


def _positive_int(name: str, value: object) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise DomainError(f"{name} must be a positive integer, got {value!r}")
    return value


def _positive(name: str, value: object) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not value > 0:
        raise DomainError(f"{name} must be positive, got {value!r}")
    return value


@dataclass(frozen=True)
class NetworkParams:
    """``n`` snodes per user, ``k`` types, ``l`` instances per type, ``c`` connections per type, ``m`` users."""

    n: int
    k: int
    l: int = 1
    c: float = 1.0
    m: int = 1

    def __post_init__(self) -> None:
        for name in ("n", "k", "l", "m"):
            _positive_int(name, getattr(self, name))
        _positive("c", self.c)
        if self.k > self.n:
            raise DomainError(f"k={self.k} exceeds n={self.n}")
        if self.k * self.l > self.n:
            logger.warning("k*l=%d exceeds n=%d; some groups cannot get a secretary", self.k * self.l, self.n)

    @property
    def k_effective(self) -> int:
        return self.k * self.l

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


def guess_prob_naive(n: int, k: int) -> float:
    _positive_int("n", n)
    _positive_int("k", k)
    if k > n:
        raise DomainError(f"k={k} exceeds n={n}")
    return 1.0 / (k * n)


def guess_prob_advanced(n: int, k: int, l: int) -> float:
    _positive_int("l", l)
    guess_prob_naive(n, k)
    return 1.0 / (k * l * n)


def effective_types(k: int, l: int) -> int:
    return _positive_int("k", k) * _positive_int("l", l)


def expected_load(c: float, k: int, n: int) -> float:
    """Mean connections per secretary, ``p = c * k / n``."""
    _positive("c", c)
    _positive_int("k", k)
    _positive_int("n", n)
    return c * k / n


def total_snodes(n: int, m: int) -> int:
    return n * m


def analytic_report(params: Optional[NetworkParams]) -> Optional[Dict[str, float]]:
    if params is None:
        return None
    return {
        "p_naive": guess_prob_naive(params.n, params.k),
        "p_advanced": guess_prob_advanced(params.n, params.k, params.l),
        "p_load": expected_load(params.c, params.k, params.n),
        "total_snodes": total_snodes(params.n, params.m),
        "k_effective": params.k_effective,
    }
