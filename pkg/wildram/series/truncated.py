import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Mapping, Sequence, Tuple, Union

from wildram.errors import (
    InsufficientPrecision, NonUnitConstant, NonzeroConstant, NotInvertible, RingMismatch,
)
from wildram.rings.fp import CoefficientRing, binomial_mod_p

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Finite:
    """確定した値"""
    value: int

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class AtLeast:
    """精度不足で未確定（少なくとも bound）"""
    bound: int

    def __str__(self) -> str:
        return f">={self.bound}"


Order = Union[Finite, AtLeast]


@dataclass(frozen=True)
class TruncatedSeries:
    """
    z^{prec+1} を法として正確に分かっている形式的冪級数
    coeffs はちょうど prec+1 個（z^0..z^prec）
    """
    ring: CoefficientRing
    prec: int
    coeffs: Tuple[Any, ...]

    def __post_init__(self):
        if self.prec < 0:
            raise InsufficientPrecision(f"negative precision {self.prec}")
        if len(self.coeffs) != self.prec + 1:
            raise ValueError(f"expected {self.prec + 1} coefficients, got {len(self.coeffs)}")

    @classmethod
    def from_coeffs(cls, ring: CoefficientRing, prec: int, coeffs: Sequence[Any]) -> "TruncatedSeries":
        values = list(coeffs[:prec + 1])
        values += [ring.zero] * (prec + 1 - len(values))
        return cls(ring, prec, tuple(values))

    @classmethod
    def from_terms(cls, ring: CoefficientRing, prec: int, terms: Mapping[int, Any]) -> "TruncatedSeries":
        values = [ring.zero] * (prec + 1)
        for degree, c in terms.items():
            if degree <= prec:
                values[degree] = ring.add(values[degree], c)
        return cls(ring, prec, tuple(values))

    @classmethod
    def zero(cls, ring: CoefficientRing, prec: int) -> "TruncatedSeries":
        return cls(ring, prec, (ring.zero,) * (prec + 1))

    @classmethod
    def one(cls, ring: CoefficientRing, prec: int) -> "TruncatedSeries":
        return cls.from_terms(ring, prec, {0: ring.one})

    @classmethod
    def identity(cls, ring: CoefficientRing, prec: int) -> "TruncatedSeries":
        return cls.from_terms(ring, prec, {1: ring.one})

    @classmethod
    def monomial(cls, ring: CoefficientRing, prec: int, degree: int, c: Any = None) -> "TruncatedSeries":
        return cls.from_terms(ring, prec, {degree: ring.one if c is None else c})

    def coeff(self, degree: int) -> Any:
        if degree > self.prec:
            raise InsufficientPrecision(f"coefficient of z^{degree} needs prec >= {degree}, have {self.prec}")
        if degree < 0:
            return self.ring.zero
        return self.coeffs[degree]

    def truncate(self, prec: int) -> "TruncatedSeries":
        if prec > self.prec:
            raise InsufficientPrecision(f"cannot raise precision {self.prec} to {prec}")
        return TruncatedSeries(self.ring, prec, self.coeffs[:prec + 1])

    def nonzero_terms(self) -> List[Tuple[int, Any]]:
        return [(k, c) for k, c in enumerate(self.coeffs) if not self.ring.is_zero(c)]

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(c) for c in self.coeffs)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_add(self, other)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_sub(self, other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_mul(self, other)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.ring, self.prec, tuple(self.ring.neg(c) for c in self.coeffs))

    def scale(self, c: Any) -> "TruncatedSeries":
        return TruncatedSeries(self.ring, self.prec, tuple(self.ring.mul(c, x) for x in self.coeffs))

    def render(self) -> str:
        parts = []
        for k, c in self.nonzero_terms():
            text = self.ring.render(c)
            if k == 0:
                parts.append(text)
                continue
            power = "z" if k == 1 else f"z^{k}"
            if text == "1":
                parts.append(power)
            elif "+" in text:
                parts.append(f"({text})*{power}")
            else:
                parts.append(f"{text}*{power}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(z^{self.prec + 1})"

    def to_dict(self) -> Dict[str, Any]:
        return {
            'prec': self.prec,
            'terms': [[k, self.ring.render(c)] for k, c in self.nonzero_terms()],
        }


def _check_ring(f: TruncatedSeries, g: TruncatedSeries) -> None:
    if f.ring != g.ring:
        raise RingMismatch(f"{f.ring} vs {g.ring}")


def series_add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    _check_ring(f, g)
    prec = min(f.prec, g.prec)
    return TruncatedSeries(f.ring, prec, tuple(f.ring.add(a, b) for a, b in zip(f.coeffs[:prec + 1], g.coeffs)))


def series_sub(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    _check_ring(f, g)
    prec = min(f.prec, g.prec)
    return TruncatedSeries(f.ring, prec, tuple(f.ring.sub(a, b) for a, b in zip(f.coeffs[:prec + 1], g.coeffs)))


def _mul_to(f: TruncatedSeries, g: TruncatedSeries, prec: int) -> TruncatedSeries:
    # 呼び出し側が prec の正しさを保証する
    return TruncatedSeries(f.ring, prec, tuple(f.ring.convolve(f.coeffs, g.coeffs, prec)))


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    _check_ring(f, g)
    return _mul_to(f, g, min(f.prec, g.prec))


def series_order(f: TruncatedSeries) -> Order:
    for k, c in enumerate(f.coeffs):
        if not f.ring.is_zero(c):
            return Finite(k)
    return AtLeast(f.prec + 1)


def series_frobenius(f: TruncatedSeries) -> TruncatedSeries:
    """f^p = Σ Frob(c_k) z^{kp}（標数 p）"""
    ring = f.ring
    values = [ring.zero] * (f.prec + 1)
    for k, c in f.nonzero_terms():
        if k * ring.p > f.prec:
            break
        values[k * ring.p] = ring.frobenius(c)
    return TruncatedSeries(ring, f.prec, tuple(values))


def series_pow(f: TruncatedSeries, n: int) -> TruncatedSeries:
    """n の p 進展開ごとに Frobenius を使った冪"""
    if n < 0:
        return series_pow(series_reciprocal(f), -n)
    ring = f.ring
    result = TruncatedSeries.one(ring, f.prec)
    base = f
    while n:
        n, digit = divmod(n, ring.p)
        if digit:
            power = TruncatedSeries.one(ring, f.prec)
            square = base
            while digit:
                if digit & 1:
                    power = series_mul(power, square)
                digit >>= 1
                if digit:
                    square = series_mul(square, square)
            result = series_mul(result, power)
        if n:
            base = series_frobenius(base)
    return result


def _compose_horner(f: TruncatedSeries, g: TruncatedSeries, prec: int) -> TruncatedSeries:
    ring = f.ring
    acc = TruncatedSeries.from_terms(ring, prec, {0: f.coeffs[prec]})
    for k in range(prec - 1, -1, -1):
        acc = _mul_to(acc, g, prec)
        if not ring.is_zero(f.coeffs[k]):
            acc = TruncatedSeries(ring, prec, (ring.add(acc.coeffs[0], f.coeffs[k]),) + acc.coeffs[1:])
    return acc


def _compose_power_walk(f: TruncatedSeries, g: TruncatedSeries, prec: int) -> TruncatedSeries:
    # f の非零項だけを g の冪で足し上げる（g^k の位数 >= k を利用）
    ring = f.ring
    terms = [(k, c) for k, c in f.nonzero_terms() if k <= prec]
    acc = [ring.zero] * (prec + 1)
    if not terms:
        return TruncatedSeries(ring, prec, tuple(acc))
    base = g.truncate(prec)
    jumps: Dict[int, TruncatedSeries] = {1: base}
    current = series_pow(base, terms[0][0])
    previous = terms[0][0]
    for k, c in terms:
        gap = k - previous
        if gap:
            if gap not in jumps:
                jumps[gap] = series_pow(base, gap)
            current = _mul_to(current, jumps[gap], prec)
            previous = k
        for i, x in enumerate(current.coeffs):
            if not ring.is_zero(x):
                acc[i] = ring.add(acc[i], ring.mul(c, x))
    return TruncatedSeries(ring, prec, tuple(acc))


def _compose_taylor(f: TruncatedSeries, g: TruncatedSeries, prec: int, shift: int) -> TruncatedSeries:
    # g = z + e（ord e = shift >= 2）のとき f(z+e) = Σ_j f^{[j]}(z)·e^j（f^{[j]} はハッセ微分）
    ring = f.ring
    e = TruncatedSeries(ring, prec, (ring.zero, ring.sub(g.coeffs[1], ring.one)) + g.coeffs[2:prec + 1])
    acc = list(f.coeffs[:prec + 1])
    power = e
    j = 1
    while j * shift <= prec:
        hasse = [ring.zero] * (prec + 1)
        for k in range(j, prec + 1):
            c = f.coeffs[k]
            if ring.is_zero(c):
                continue
            binom = binomial_mod_p(k, j, ring.p)
            if binom:
                hasse[k - j] = ring.mul(ring.from_int(binom), c)
        # e^j の位数 >= 2j なので hasse の未確定部分は prec を超える
        term = ring.convolve(hasse, power.coeffs, prec)
        acc = [ring.add(a, b) for a, b in zip(acc, term)]
        j += 1
        if j * shift <= prec:
            power = _mul_to(power, e, prec)
    return TruncatedSeries(ring, prec, tuple(acc))


def _taylor_shift(g: TruncatedSeries) -> int:
    """g − z の位数（g'(0) = 1 でなければ 0）"""
    ring = g.ring
    if g.prec < 1 or not ring.is_zero(ring.sub(g.coeffs[1], ring.one)):
        return 0
    for k in range(2, g.prec + 1):
        if not ring.is_zero(g.coeffs[k]):
            return k
    return g.prec + 1


def series_compose(f: TruncatedSeries, g: TruncatedSeries, strategy: str = "auto") -> TruncatedSeries:
    """
    f∘g を z^{min(f.prec, g.prec)+1} を法として計算する
    strategy: "horner" | "power" | "taylor" | "auto"（どれも同じ係数を返す）
    """
    _check_ring(f, g)
    if not f.ring.is_zero(g.coeffs[0]):
        raise NonzeroConstant("inner series must vanish at 0")
    prec = min(f.prec, g.prec)
    f = f.truncate(prec)
    g = g.truncate(prec)
    shift = _taylor_shift(g)
    if strategy == "auto":
        costs = {'horner': prec, 'power': len(f.nonzero_terms())}
        if shift >= 2:
            costs['taylor'] = 2 * (prec // shift)
        strategy = min(costs, key=lambda name: (costs[name], name != 'taylor'))
    if strategy == "taylor":
        if shift < 2:
            raise ValueError("taylor composition needs g = z + O(z^2)")
        if shift > prec:
            return f
        return _compose_taylor(f, g, prec, shift)
    if strategy == "horner":
        return _compose_horner(f, g, prec)
    return _compose_power_walk(f, g, prec)


def series_reciprocal(u: TruncatedSeries) -> TruncatedSeries:
    ring = u.ring
    if not ring.is_unit(u.coeffs[0]):
        raise NonUnitConstant("constant term is not a unit")
    inv0 = ring.inverse(u.coeffs[0])
    out = [inv0]
    nonzero = [(k, c) for k, c in u.nonzero_terms() if k > 0]
    for n in range(1, u.prec + 1):
        acc = ring.zero
        for k, c in nonzero:
            if k > n:
                break
            acc = ring.add(acc, ring.mul(c, out[n - k]))
        out.append(ring.neg(ring.mul(inv0, acc)))
    return TruncatedSeries(ring, u.prec, tuple(out))


def series_derivative(f: TruncatedSeries) -> TruncatedSeries:
    """形式微分（精度は 1 下がる）"""
    ring = f.ring
    if f.prec == 0:
        return TruncatedSeries.zero(ring, 0)
    values = [ring.mul(ring.from_int(k), f.coeffs[k]) for k in range(1, f.prec + 1)]
    return TruncatedSeries(ring, f.prec - 1, tuple(values))


def series_comp_inverse(h: TruncatedSeries) -> TruncatedSeries:
    """ニュートン法による合成逆 h^{-1}"""
    ring = h.ring
    if h.prec < 1 or not ring.is_zero(h.coeffs[0]) or not ring.is_unit(h.coeffs[1]):
        raise NotInvertible("need h(0) = 0 and h'(0) a unit")
    prec = h.prec
    identity = TruncatedSeries.identity(ring, prec)
    g = identity.scale(ring.inverse(h.coeffs[1]))
    dh = series_derivative(h)
    known = 1
    while known < prec:
        error = series_sub(series_compose(h, g), identity)
        slope = series_reciprocal(series_compose(dh, g.truncate(dh.prec)))
        # error の位数 >= 2 なので積は prec まで確定する
        correction = _mul_to(error, TruncatedSeries.from_coeffs(ring, prec, slope.coeffs), prec)
        g = series_sub(g, correction)
        known *= 2
    return g


def specialize(f: TruncatedSeries, ring: CoefficientRing, fn: Callable[[Any], Any]) -> TruncatedSeries:
    """係数ごとに環準同型 fn を適用する"""
    return TruncatedSeries(ring, f.prec, tuple(fn(c) for c in f.coeffs))
