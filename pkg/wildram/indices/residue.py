import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional

from wildram.dynamics.ramification import lower_ramification
from wildram.dynamics.wild import WildSeries
from wildram.errors import EvenCharacteristic, InsufficientPrecision, NotDivisible, NotInvertible
from wildram.indices.lambda_set import LambdaSet, lambda_set
from wildram.rings.fp import CoefficientRing, multinomial_mod_p
from wildram.series.truncated import (
    TruncatedSeries, series_derivative, series_mul, series_pow, series_reciprocal,
)

logger = logging.getLogger(__name__)


def _require_coefficients(f: WildSeries, q: int, ell: int) -> None:
    if f.prec < q + ell + 1:
        raise InsufficientPrecision(f"pind for ell={ell} needs prec >= {q + ell + 1}, have {f.prec}")


def pind_laurent(f: WildSeries, j: int) -> Any:
    """
    z^{q−ℓ_j}/(z − f(z)) のローラン展開における 1/z の係数
    z − f = −a_q z^{q+1}(1 + u) と書き、−a_q^{-1}·[z^{ℓ_j}](1+u)^{-1} を返す
    """
    q = f.require_q()
    ell = lambda_set(q, f.p).ell(j)
    _require_coefficients(f, q, ell)
    ring = f.ring
    inv_lead = ring.inverse(f.a(q))
    unit = TruncatedSeries.from_coeffs(ring, ell, [ring.mul(f.a(q + i), inv_lead) for i in range(ell + 1)])
    inverse = series_reciprocal(unit)
    return ring.neg(ring.mul(inv_lead, inverse.coeffs[ell]))


def residue_index(f: WildSeries) -> Any:
    """ind(f) = 1/(z − f(z)) の留数（ℓ_r = q の pind）"""
    q = f.require_q()
    return pind_laurent(f, lambda_set(q, f.p).r)


def partitions(total: int, largest: Optional[int] = None) -> Iterator[Dict[int, int]]:
    """total の分割を {部分の大きさ: 個数} で列挙する"""
    if largest is None:
        largest = total
    if total == 0:
        yield {}
        return
    for part in range(min(total, largest), 0, -1):
        for count in range(total // part, 0, -1):
            for rest in partitions(total - part * count, part - 1):
                found = dict(rest)
                found[part] = count
                yield found


def pind_closed(f: WildSeries, j: int) -> Any:
    """
    閉じた式による pind_j:
    −a_q^{−(ℓ+1)} Σ_μ (−1)^{ℓ−μ_0}·multinomial(ℓ−μ_0; μ_1..μ_ℓ)·Π a_{q+i}^{μ_i}
    （|μ| = ‖μ‖ = ℓ、μ は ℓ の分割から決まる）
    """
    q = f.require_q()
    p = f.p
    ell = lambda_set(q, p).ell(j)
    _require_coefficients(f, q, ell)
    ring = f.ring
    lead = f.a(q)
    total = ring.zero
    for parts in partitions(ell):
        counts = [parts.get(i, 0) for i in range(1, ell + 1)]
        k = sum(counts)
        mu0 = ell - k
        coefficient = multinomial_mod_p(k, counts, p).value
        if not coefficient:
            continue
        if k % 2:
            coefficient = -coefficient
        term = ring.mul(ring.from_int(coefficient), ring.pow(lead, mu0))
        for i, mu in parts.items():
            term = ring.mul(term, ring.pow(f.a(q + i), mu))
            if ring.is_zero(term):
                break
        total = ring.add(total, term)
    return ring.neg(ring.mul(ring.pow(ring.inverse(lead), ell + 1), total))


def iterative_residue(f: WildSeries) -> Any:
    """resit(f) = mult(f)/2 − ind(f)"""
    if f.p == 2:
        raise EvenCharacteristic("the iterative residue needs 1/2")
    ring = f.ring
    q = f.require_q()
    half_mult = ring.mul(ring.from_int(q + 1), ring.inverse(ring.from_int(2)))
    return ring.sub(half_mult, residue_index(f))


@dataclass(frozen=True)
class SmallestIndex:
    """pind_j ≠ 0 となる最小の j、または r まで全て 0"""
    j: Optional[int]
    r: int

    @property
    def found(self) -> bool:
        return self.j is not None

    def __str__(self) -> str:
        return f"Some({self.j})" if self.j is not None else f"NoneUpTo({self.r})"


def smallest_index_j(f: WildSeries) -> SmallestIndex:
    q = f.require_q()
    lam = lambda_set(q, f.p)
    for j in range(1, lam.r + 1):
        if not f.ring.is_zero(pind_laurent(f, j)):
            return SmallestIndex(j, lam.r)
    return SmallestIndex(None, lam.r)


def delta_coefficient(f: WildSeries, n: int) -> Any:
    """f^{p^n} の z^{i_n+1} の係数 δ_n（δ_0 = a_q）"""
    q = f.require_q()
    if n == 0:
        return f.a(q)
    level = lower_ramification(f, n).levels[n]
    if not level.exact:
        raise InsufficientPrecision(f"i_{n} is {level.i} at prec {f.prec}")
    return level.delta


def expected_delta(ring: CoefficientRing, n: int, alpha: Any, pind_1: Any) -> Any:
    """pind_1 ≠ 0 のときの δ_n = (−1)^n α^{(p^{n+1}−1)/(p−1)} pind_1^{(p^n−1)/(p−1)}"""
    p = ring.p
    value = ring.mul(ring.pow(alpha, (p ** (n + 1) - 1) // (p - 1)), ring.pow(pind_1, (p ** n - 1) // (p - 1)))
    return ring.neg(value) if n % 2 else value


def residue_of_form(h: TruncatedSeries, d: int, N: int) -> Any:
    """z^d·h'(z)/h(z)^{N+1} のローラン展開における 1/z の係数"""
    ring = h.ring
    if d < 1 or d % ring.p:
        raise NotDivisible(f"d = {d} is not a positive multiple of p = {ring.p}")
    if h.prec < 1 or not ring.is_zero(h.coeffs[0]) or not ring.is_unit(h.coeffs[1]):
        raise NotInvertible("need h(0) = 0 and h'(0) a unit")
    target = N - d
    if target < 0:
        return ring.zero
    if target > h.prec - 1:
        raise InsufficientPrecision(f"residue needs prec >= {target + 1}, have {h.prec}")
    # h = z·H として [z^{N−d}] h'·H^{−(N+1)}
    reduced = TruncatedSeries(ring, target, h.coeffs[1:target + 2])
    derivative = series_derivative(h.truncate(target + 1))
    form = series_mul(derivative, series_pow(series_reciprocal(reduced), N + 1))
    return form.coeffs[target]


@dataclass
class IndexReport:
    """q、Λ(q,F_p)、pind_1..pind_r、resit、最小の j"""
    q: int
    lam: LambdaSet
    ring: CoefficientRing
    pind: List[Any] = field(default_factory=list)
    closed_agrees: bool = True
    resit: Optional[Any] = None
    smallest: Optional[SmallestIndex] = None

    @property
    def ind(self) -> Optional[Any]:
        """ind(f) = pind_r（r まで計算したときだけ）"""
        return self.pind[-1] if len(self.pind) == self.lam.r else None

    def to_dict(self) -> Dict[str, Any]:
        render = self.ring.render
        return {
            'q': self.q,
            'ell': list(self.lam.elements),
            'pind': {str(j): render(v) for j, v in enumerate(self.pind, start=1)},
            'ind': render(self.ind) if self.ind is not None else None,
            'closed_formula_agrees': self.closed_agrees,
            'resit': render(self.resit) if self.resit is not None else None,
            'smallest_j': str(self.smallest) if self.smallest is not None else None,
        }


def index_report(f: WildSeries, upto: Optional[int] = None) -> IndexReport:
    """pind_j（j <= upto、既定は r）と関連する不変量をまとめる"""
    q = f.require_q()
    lam = lambda_set(q, f.p)
    report = IndexReport(q=q, lam=lam, ring=f.ring)
    last = lam.r if upto is None else min(upto, lam.r)
    for j in range(1, last + 1):
        value = pind_laurent(f, j)
        report.pind.append(value)
        if pind_closed(f, j) != value:
            report.closed_agrees = False
            logger.warning(f"Closed formula disagrees with the Laurent expansion at j={j}")
    if last == lam.r:
        if f.p != 2:
            report.resit = iterative_residue(f)
        first = next((j for j, v in enumerate(report.pind, start=1) if not f.ring.is_zero(v)), None)
        report.smallest = SmallestIndex(first, lam.r)
    return report
