import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Optional, Tuple

from sympy.polys.domains import GF
from sympy.polys.orderings import lex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyRing, ring

from wildram.errors import DivisionFailure, IndexVanishes, PreconditionViolation, ShapeViolation
from wildram.indices.lambda_set import lambda_set
from wildram.indices.residue import pind_closed
from wildram.rings.fp import check_prime
from wildram.rings.mpoly import MPoly
from wildram.rings.unipoly import FpUniPoly, RationalFunction, rat_valuation, t_coefficients, t_ring
from wildram.valuation.newton import NewtonPolygon, ValuedPoly, newton_polygon

logger = logging.getLogger(__name__)

Z = 0


def _check_wild(f: ValuedPoly) -> int:
    """f = z(1 + a z^q + ⋯) の形を確かめて q を返す"""
    if f.degree < 2 or not f.coeff(0).is_zero():
        raise ShapeViolation("expected f(0) = 0 and a nonlinear polynomial")
    one = RationalFunction.constant(f.p, 1)
    if f.coeff(1) != one:
        raise ShapeViolation("expected f'(0) = 1")
    for i in range(2, f.degree + 1):
        if not f.coeff(i).is_zero():
            return i - 1
    raise ShapeViolation("f = z has no multiplicity")


@dataclass
class FixedPointReport:
    """(f(z) − z)/z^{q+1} の根の付値と、正の付値が v(a) 以下であることの確認"""
    q: int
    v_a: int
    polygon: NewtonPolygon
    passed: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return {
            'q': self.q,
            'v_a': self.v_a,
            'polygon': self.polygon.to_dict(),
            'pass': self.passed,
        }


def fixed_point_valuations(f: ValuedPoly) -> FixedPointReport:
    q = _check_wild(f)
    a = f.coeff(q + 1)
    v_a = rat_valuation(a)
    shifted = ValuedPoly(f.p, f.coeffs[q + 1:])
    polygon = newton_polygon(shifted)
    passed = all(v <= v_a for v in polygon.positive_root_valuations())
    if not passed:
        logger.warning(f"Fixed point valuation above v(a) = {v_a}: {polygon.positive_root_valuations()}")
    return FixedPointReport(q=q, v_a=v_a, polygon=polygon, passed=passed)


@lru_cache(maxsize=None)
def zt_ring(p: int) -> PolyRing:
    """F_p[z, t]（z > t の辞書式順序）"""
    check_prime(p)
    return ring("z,t", GF(p, symmetric=False), lex)[0]


def _as_bivariate(f: ValuedPoly) -> MPoly:
    """F_p[t] 係数の多項式を F_p[z, t] の元にする"""
    terms = {}
    for i, c in enumerate(f.coeffs):
        if c.is_zero():
            continue
        if not c.is_polynomial():
            raise ShapeViolation(f"coefficient of z^{i} is not a polynomial in t")
        for k, value in enumerate(t_coefficients(c.as_polynomial())):
            if value:
                terms[(i, k)] = value
    return zt_ring(f.p).from_dict(terms)


def _z_coefficients(P: MPoly) -> List[FpUniPoly]:
    """z の冪ごとに t の多項式へまとめる"""
    p = P.ring.domain.mod
    grouped: Dict[int, Dict[Tuple[int], int]] = {}
    for (i, k), c in P.items():
        grouped.setdefault(i, {})[(k,)] = int(c) % p
    degree = max(grouped) if grouped else -1
    return [t_ring(p).from_dict(grouped.get(i, {})) for i in range(degree + 1)]


def iterate_polynomial(f: ValuedPoly, n: int) -> MPoly:
    """f^n を F_p[z, t] で正確に計算する"""
    base = _as_bivariate(f)
    z = base.ring.gens[Z]
    result = z
    for _ in range(n):
        result = base.compose(z, result)
    return result


def _exact_quotient(numerator: MPoly, divisor: MPoly) -> MPoly:
    """F_p[z, t] での割り算（割り切れなければ DivisionFailure）"""
    try:
        return numerator.exquo(divisor)
    except ExactQuotientFailed:
        raise DivisionFailure("f(z) - z does not divide f^p(z) - z")


@dataclass
class PeriodicBoundReport:
    """周期 p の点の付値の上界 v(a) + v(pind_1)/p と、δ_0, δ_1 の付値の照合"""
    q: int
    ell: int
    v_a: int
    v_pind: int
    bound: Fraction
    polygon: NewtonPolygon
    i_1: int
    delta_0: str
    delta_1: str
    violations: List[str] = field(default_factory=list)
    delta_check: Optional[bool] = None

    @property
    def passed(self) -> bool:
        return not self.violations and self.delta_check is not False

    def to_dict(self) -> Dict[str, Any]:
        return {
            'q': self.q,
            'ell': self.ell,
            'v_a': self.v_a,
            'v_pind_1': self.v_pind,
            'bound': str(self.bound),
            'polygon': self.polygon.to_dict(),
            'i_1': self.i_1,
            'delta_0': self.delta_0,
            'delta_1': self.delta_1,
            'delta_check': self.delta_check,
            'violations': self.violations,
            'pass': self.passed,
        }


def periodic_point_bound(f: ValuedPoly) -> PeriodicBoundReport:
    """
    Q = (f^p(z) − z)/(f(z) − z) のニュートン多角形で、正の根の付値 λ が
    λ <= v(a) + v(pind_1(f))/p を満たすことを確かめる
    """
    q = _check_wild(f)
    p = f.p
    if q < p + 1 or q % p == 0:
        raise PreconditionViolation(f"need q >= p+1 and p not dividing q (q={q}, p={p})")
    ell = lambda_set(q, p).ell(1)
    wild = f.as_wild(max(f.degree, q + ell + 1))
    pind = pind_closed(wild, 1)
    if pind.is_zero():
        raise IndexVanishes("pind_1(f) = 0, the bound is trivial")
    a = f.coeff(q + 1)
    v_a, v_pind = rat_valuation(a), rat_valuation(pind)
    bound = v_a + Fraction(v_pind, p)
    logger.info(f"Periodic point bound: q={q}, v(a)={v_a}, v(pind_1)={v_pind}, bound={bound}")

    z = zt_ring(p).gens[Z]
    displacement = _as_bivariate(f) - z
    power = iterate_polynomial(f, p) - z
    numerator = _z_coefficients(power)
    Q = ValuedPoly.from_polys(p, _z_coefficients(_exact_quotient(power, displacement)))
    polygon = newton_polygon(Q)

    report = PeriodicBoundReport(
        q=q, ell=ell, v_a=v_a, v_pind=v_pind, bound=bound, polygon=polygon,
        i_1=0, delta_0=str(a.reduced()), delta_1="",
    )
    for value in polygon.positive_root_valuations():
        if value > bound:
            report.violations.append(f"root valuation {value} exceeds {bound}")
            logger.warning(f"Periodic point of valuation {value} above the bound {bound} (may lie in an extension)")

    order = next(i for i, c in enumerate(numerator) if c)
    report.i_1 = order - 1
    delta_1 = RationalFunction.from_poly(numerator[order])
    report.delta_1 = str(delta_1)
    if report.i_1 == q * p + ell:
        report.delta_check = rat_valuation(delta_1) - v_a == p * v_a + v_pind
    return report
