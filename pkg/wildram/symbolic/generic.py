from dataclasses import dataclass
from enum import Enum
from typing import Dict, Sequence

from wildram.dynamics.wild import WildSeries
from wildram.errors import PreconditionViolation
from wildram.indices.lambda_set import lambda_set
from wildram.rings.fp import FpField, check_prime
from wildram.rings.mpoly import MPoly, MPolyRing
from wildram.series.truncated import TruncatedSeries, specialize


class GenericShape(Enum):
    """z(1 + x_0 z^q + x_1 z^{q+ℓ} + 末尾) の末尾の始まり方"""
    MAIN_LEMMA = "main_lemma"
    DELTA_SHORT = "delta_short"


@dataclass(frozen=True)
class GenericSeries:
    """
    係数が F_p[x_0, x_1, ...] の多項式である一般形の級数
    tail は末尾の変数の個数（z^{tail_start} から z^{prec} まで1次数に1つ）
    """
    series: TruncatedSeries
    p: int
    q: int
    ell: int
    shape: GenericShape
    tail: int

    @property
    def ring(self) -> MPolyRing:
        return self.series.ring

    @property
    def prec(self) -> int:
        return self.series.prec

    def wild(self) -> WildSeries:
        return WildSeries(self.series)

    def tail_start(self) -> int:
        return tail_start(self.q, self.ell, self.p, self.shape)


def tail_start(q: int, ell: int, p: int, shape: GenericShape) -> int:
    """x_2 が乗る z の次数"""
    if shape is GenericShape.MAIN_LEMMA:
        return q + 2 * ell + 2
    return q + ell + p + 2


def _check_shape(p: int, q: int, ell: int, shape: GenericShape) -> None:
    if q % p == 0:
        raise PreconditionViolation(f"p = {p} divides q = {q}")
    if shape is GenericShape.MAIN_LEMMA:
        if ell < 1 or (ell - q) % p:
            raise PreconditionViolation(f"ell = {ell} must be positive and congruent to q mod p")
        if not (ell <= p - 1 or 2 * ell + 1 <= q):
            raise PreconditionViolation(f"need ell <= p-1 or 2ell+1 <= q (ell={ell}, q={q})")
    elif ell not in lambda_set(q, p).elements:
        raise PreconditionViolation(f"ell = {ell} is not in Lambda({q}, F_{p})")


def build_generic(p: int, q: int, ell: int, shape: GenericShape, prec: int) -> GenericSeries:
    check_prime(p)
    _check_shape(p, q, ell, shape)
    if prec < q + 1:
        raise PreconditionViolation(f"prec {prec} is below q+1 = {q + 1}")
    start = tail_start(q, ell, p, shape)
    tail = max(0, prec - start + 1)
    ring = MPolyRing(p, 2 + tail)
    terms: Dict[int, MPoly] = {1: ring.one, q + 1: ring.gen(0), q + ell + 1: ring.gen(1)}
    for i in range(tail):
        terms[start + i] = ring.gen(2 + i)
    return GenericSeries(TruncatedSeries.from_terms(ring, prec, terms), p, q, ell, shape, tail)


def specialize_generic(series: TruncatedSeries, values: Sequence[int]) -> TruncatedSeries:
    """x_i に values[i] を代入した F_p 上の級数（環準同型）"""
    ring = series.ring
    field = FpField(ring.p)
    if len(values) < ring.nvars:
        raise PreconditionViolation(f"need {ring.nvars} values, got {len(values)}")
    return specialize(series, field, lambda c: ring.evaluate(c, values))
