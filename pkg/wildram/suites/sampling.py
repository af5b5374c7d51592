"""
決定的な乱数による標本生成

乱数は SplitMix64（64 ビット）:
    state += 0x9E3779B97F4A7C15
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z ^ (z >> 31)
すべて 2^64 を法とする。標本 i の乱数列は (seed, i) だけで決まるので、
ワーカー数や実行順に関係なく同じ標本が得られる。
"""
from typing import Any, Dict, Optional, Sequence

from wildram.dynamics.wild import WildSeries
from wildram.errors import PreconditionViolation
from wildram.indices.lambda_set import lambda_set
from wildram.rings.fp import FpField
from wildram.rings.unipoly import FpUniPoly, uni_poly
from wildram.series.truncated import TruncatedSeries

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """SplitMix64 生成器"""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    @classmethod
    def for_sample(cls, seed: int, index: int) -> "SplitMix64":
        """(seed, index) から標本ごとの独立な乱数列を作る"""
        return cls(mix64((seed & MASK64) ^ mix64((index * GAMMA + GAMMA) & MASK64)))

    def next_u64(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return mix64(self.state)

    def below(self, n: int) -> int:
        """[0, n) の一様乱数（棄却法で偏りをなくす）"""
        if n < 1:
            raise PreconditionViolation(f"empty range [0, {n})")
        limit = (1 << 64) - (1 << 64) % n
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def between(self, low: int, high: int) -> int:
        """[low, high] の一様乱数"""
        return low + self.below(high - low + 1)

    def choice(self, values: Sequence[Any]) -> Any:
        return values[self.below(len(values))]

    def element(self, p: int) -> int:
        return self.below(p)

    def unit(self, p: int) -> int:
        return 1 + self.below(p - 1)


def random_q(rng: SplitMix64, p: int, low: int, high: int) -> int:
    """[low, high] から p で割り切れない q を選ぶ"""
    candidates = [q for q in range(low, high + 1) if q % p]
    if not candidates:
        raise PreconditionViolation(f"no q in [{low}, {high}] prime to {p}")
    return rng.choice(candidates)


def random_wild(rng: SplitMix64, p: int, q: int, prec: int) -> WildSeries:
    """z + a z^{q+1} + ⋯（a ≠ 0、それより上の係数は一様）"""
    terms: Dict[int, int] = {1: 1, q + 1: rng.unit(p)}
    for degree in range(q + 2, prec + 1):
        terms[degree] = rng.element(p)
    return WildSeries.from_terms(FpField(p), prec, {k: v for k, v in terms.items() if k >= 2})


def random_short_form(rng: SplitMix64, p: int, q: int, ell: int, prec: int,
                      beta: Optional[int] = None, alpha: Optional[int] = None) -> WildSeries:
    """
    z(1 + αz^q + βz^{q+ℓ}) に z^{q+ℓ+p+2} 以降の乱数の末尾を足したもの
    β を None にすると F_p から一様に選ぶ
    """
    alpha = rng.unit(p) if alpha is None else alpha % p
    beta = rng.element(p) if beta is None else beta % p
    terms: Dict[int, int] = {q + 1: alpha}
    if beta:
        terms[q + ell + 1] = beta
    for degree in range(q + ell + p + 2, prec + 1):
        terms[degree] = rng.element(p)
    return WildSeries.from_terms(FpField(p), prec, terms)


def random_normal_form(rng: SplitMix64, p: int, q: int, j: int, prec: int, beta_zero: bool) -> WildSeries:
    """ℓ_j について β ≠ 0（beta_zero なら β = 0）の正規形を作る"""
    ell = lambda_set(q, p).ell(j)
    beta = 0 if beta_zero else rng.unit(p)
    return random_short_form(rng, p, q, ell, prec, beta=beta)


def random_coordinate(rng: SplitMix64, p: int, prec: int) -> TruncatedSeries:
    """h(0) = 0、h'(0) ≠ 0 の座標変換"""
    field = FpField(p)
    terms = {1: rng.unit(p)}
    for degree in range(2, prec + 1):
        terms[degree] = rng.element(p)
    return TruncatedSeries.from_terms(field, prec, terms)


def random_t_poly(rng: SplitMix64, p: int, degree: int, nonzero: bool = False) -> FpUniPoly:
    """次数 degree 以下の F_p[t] の元"""
    while True:
        poly = uni_poly(p, [rng.element(p) for _ in range(degree + 1)])
        if not nonzero or poly:
            return poly
