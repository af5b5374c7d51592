import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Mapping, Optional

from wildram.errors import InfiniteMultiplicity, NonzeroConstant, PreconditionViolation
from wildram.rings.fp import CoefficientRing
from wildram.series.truncated import (
    AtLeast, Finite, Order, TruncatedSeries, series_compose, series_order, series_sub,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WildSeries:
    """
    f(0) = 0, f'(0) = 1 を満たす冪級数（Nottingham 群の元）
    q = mult(f) − 1 は初回アクセス時にキャッシュする
    """
    series: TruncatedSeries

    def __post_init__(self):
        s = self.series
        ring = s.ring
        if s.prec < 1:
            raise PreconditionViolation("a wild series needs prec >= 1")
        if not ring.is_zero(s.coeffs[0]):
            raise PreconditionViolation("f(0) must be 0")
        if not ring.is_zero(ring.sub(s.coeffs[1], ring.one)):
            raise PreconditionViolation("f'(0) must be 1")

    @classmethod
    def from_terms(cls, ring: CoefficientRing, prec: int, terms: Mapping[int, Any]) -> "WildSeries":
        """z + Σ terms[d]·z^d（d >= 2）"""
        if any(d < 2 for d in terms):
            raise PreconditionViolation("perturbation degrees must be >= 2")
        values = dict(terms)
        values[1] = ring.one
        return cls(TruncatedSeries.from_terms(ring, prec, values))

    @property
    def ring(self) -> CoefficientRing:
        return self.series.ring

    @property
    def prec(self) -> int:
        return self.series.prec

    @property
    def p(self) -> int:
        return self.series.ring.p

    def displacement(self) -> TruncatedSeries:
        """f − z"""
        return series_sub(self.series, TruncatedSeries.identity(self.ring, self.prec))

    @cached_property
    def q(self) -> Optional[int]:
        order = series_order(self.displacement())
        if isinstance(order, Finite):
            return order.value - 1
        return None

    def require_q(self) -> int:
        if self.q is None:
            raise InfiniteMultiplicity(f"f = z modulo z^{self.prec + 1}")
        return self.q

    def a(self, j: int) -> Any:
        """f = z(1 + Σ a_j z^j) の a_j（z^{j+1} の係数）"""
        return self.series.coeff(j + 1)

    def truncate(self, prec: int) -> "WildSeries":
        return WildSeries(self.series.truncate(prec))

    def compose(self, other: "WildSeries") -> "WildSeries":
        return WildSeries(series_compose(self.series, other.series))

    def render(self) -> str:
        return self.series.render()


def multiplicity(f: WildSeries) -> Order:
    """mult(f) = ord_z(f − z)。f ≡ z のときは AtLeast(prec+2)"""
    order = series_order(f.displacement())
    if isinstance(order, AtLeast):
        return AtLeast(f.prec + 2)
    return order


def iterate(f: WildSeries, n: int) -> WildSeries:
    """f の n 回合成（合成についての二進累乗）"""
    if n < 0:
        raise PreconditionViolation(f"iteration count must be nonnegative, got {n}")
    result: Optional[TruncatedSeries] = None
    base = f.series
    while n:
        if n & 1:
            result = base if result is None else series_compose(result, base)
        n >>= 1
        if n:
            base = series_compose(base, base)
    if result is None:
        return WildSeries(TruncatedSeries.identity(f.ring, f.prec))
    return WildSeries(result)


def delta_operator(f: WildSeries, m: int, base: Optional[TruncatedSeries] = None) -> TruncatedSeries:
    """Δ_0 = base、Δ_m(z) = Δ_{m−1}(f(z)) − Δ_{m−1}(z)"""
    if m < 0:
        raise PreconditionViolation(f"m must be nonnegative, got {m}")
    delta = base if base is not None else TruncatedSeries.identity(f.ring, f.prec)
    if not f.ring.is_zero(delta.coeffs[0]):
        raise NonzeroConstant("Δ_0 must vanish at 0")
    for _ in range(m):
        delta = series_sub(series_compose(delta, f.series), delta)
    return delta


def required_precision(q: int, p: int, n_max: int) -> int:
    """n_max までの i_n と δ_n を確定させるのに十分な精度"""
    if q < 1:
        raise PreconditionViolation(f"q must be >= 1, got {q}")
    geometric = sum(p ** k for k in range(n_max))
    return q * geometric + q * p ** n_max + 2 * q + 2

