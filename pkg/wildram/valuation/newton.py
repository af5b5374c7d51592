from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from wildram.dynamics.wild import WildSeries
from wildram.errors import ZeroPolynomial
from wildram.rings.unipoly import FpUniPoly, RationalFunction, RationalFunctionField, rat_valuation
from wildram.series.truncated import TruncatedSeries


@dataclass(frozen=True)
class ValuedPoly:
    """
    F_p(t) 係数の多項式 c_0 + c_1 z + ⋯ + c_d z^d
    係数 i の付値は rat_valuation(c_i)（ゼロなら +∞ として None）
    """
    p: int
    coeffs: Tuple[RationalFunction, ...]

    def __post_init__(self):
        values = list(self.coeffs)
        while values and values[-1].is_zero():
            values.pop()
        object.__setattr__(self, 'coeffs', tuple(values))

    @classmethod
    def from_polys(cls, p: int, coeffs: Sequence[FpUniPoly]) -> "ValuedPoly":
        return cls(p, tuple(RationalFunction.from_poly(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> RationalFunction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return RationalFunction.constant(self.p, 0)

    def valuation(self, i: int) -> Optional[int]:
        c = self.coeff(i)
        return None if c.is_zero() else rat_valuation(c)

    def order(self) -> int:
        """最小の非零係数の次数"""
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return i
        raise ZeroPolynomial("order of the zero polynomial")

    def displacement(self) -> "ValuedPoly":
        """f(z) − z"""
        coeffs = list(self.coeffs) + [RationalFunction.constant(self.p, 0)] * max(0, 2 - len(self.coeffs))
        coeffs[1] = coeffs[1] - RationalFunction.constant(self.p, 1)
        return ValuedPoly(self.p, tuple(coeffs))

    def as_wild(self, prec: Optional[int] = None) -> WildSeries:
        """z^{prec+1} を法とした F_p(t) 上の級数として見る"""
        field_ = RationalFunctionField(self.p)
        prec = self.degree if prec is None else prec
        return WildSeries(TruncatedSeries.from_coeffs(field_, prec, self.coeffs))

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            power = "" if i == 0 else ("*z" if i == 1 else f"*z^{i}")
            parts.append(f"({c.reduced()}){power}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class Segment:
    """下側凸包の辺（根の付値 = −傾き、重複度 = 辺の幅）"""
    start: Tuple[int, int]
    end: Tuple[int, int]

    @property
    def slope(self) -> Fraction:
        return Fraction(self.end[1] - self.start[1], self.end[0] - self.start[0])

    @property
    def root_valuation(self) -> Fraction:
        return -self.slope

    @property
    def multiplicity(self) -> int:
        return self.end[0] - self.start[0]


@dataclass
class NewtonPolygon:
    """点 (i, v(c_i)) の下側凸包。z = 0 の根は zero_roots に別に数える"""
    vertices: List[Tuple[int, int]] = field(default_factory=list)
    zero_roots: int = 0

    @property
    def segments(self) -> List[Segment]:
        return [Segment(a, b) for a, b in zip(self.vertices, self.vertices[1:])]

    def root_valuations(self) -> List[Tuple[Fraction, int]]:
        return [(s.root_valuation, s.multiplicity) for s in self.segments]

    def positive_root_valuations(self) -> List[Fraction]:
        return [s.root_valuation for s in self.segments if s.root_valuation > 0]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'vertices': [list(v) for v in self.vertices],
            'segments': [[str(v), m] for v, m in self.root_valuations()],
            'zero_roots': self.zero_roots,
        }


def _cross(o: Tuple[int, int], a: Tuple[int, int], b: Tuple[int, int]) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(P: ValuedPoly) -> NewtonPolygon:
    """有限付値の点に対するモノトーンチェーンで下側凸包を作る"""
    if P.is_zero():
        raise ZeroPolynomial("Newton polygon of the zero polynomial")
    points = [(i, P.valuation(i)) for i in range(P.degree + 1) if P.valuation(i) is not None]
    hull: List[Tuple[int, int]] = []
    for point in points:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], point) <= 0:
            hull.pop()
        hull.append(point)
    return NewtonPolygon(vertices=hull, zero_roots=points[0][0])


def weierstrass_degree(P: ValuedPoly) -> Optional[int]:
    """
    t を法とした還元の位数（全係数の付値が 0 以上で最小値が 0 のとき）
    凸包上で付値 0 の最も左の頂点の x 座標に等しい
    """
    polygon = newton_polygon(P)
    if min(v for _, v in polygon.vertices) != 0:
        return None
    return next(i for i, v in polygon.vertices if v == 0)
