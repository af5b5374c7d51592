from dataclasses import dataclass
from typing import Any, List, Sequence

from sympy import isprime

from wildram.errors import BadPartition, ModulusMismatch, PreconditionViolation, ZeroInverse

MAX_MODULUS = 2 ** 31


def check_prime(p: int) -> int:
    """素数 p（p < 2^31）であることを確認する"""
    if not isinstance(p, int) or isinstance(p, bool):
        raise PreconditionViolation(f"modulus must be an integer, got {p!r}")
    if p >= MAX_MODULUS or not isprime(p):
        raise PreconditionViolation(f"modulus {p} is not a prime below 2^31")
    return p


@dataclass(frozen=True)
class FpElement:
    """素体 F_p の元"""
    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, 'value', self.value % self.p)

    def _coerce(self, other: Any) -> int:
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise ModulusMismatch(f"F_{self.p} and F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FpElement(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FpElement(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FpElement(v - self.value, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FpElement(self.value * v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElement(-self.value, self.p)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self * field_inverse(FpElement(v, self.p))

    def __pow__(self, n: int):
        if n < 0:
            return field_inverse(self) ** (-n)
        return FpElement(pow(self.value, n, self.p), self.p)

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __str__(self) -> str:
        return str(self.value)


def field_inverse(a: FpElement) -> FpElement:
    if a.value == 0:
        raise ZeroInverse(f"0 has no inverse in F_{a.p}")
    return FpElement(pow(a.value, -1, a.p), a.p)


def _small_binomial(n: int, k: int, p: int) -> int:
    # n, k < p
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num = num * (n - i) % p
        den = den * (i + 1) % p
    return num * pow(den, -1, p) % p


def binomial_mod_p(n: int, k: int, p: int) -> int:
    """Lucas の定理による二項係数 mod p"""
    if k < 0 or k > n:
        return 0
    result = 1
    while n or k:
        n, n_digit = divmod(n, p)
        k, k_digit = divmod(k, p)
        if k_digit > n_digit:
            return 0
        result = result * _small_binomial(n_digit, k_digit, p) % p
    return result


def multinomial_mod_p(top: int, parts: Sequence[int], p: int) -> FpElement:
    """top! / Π parts_i! を F_p で計算する（二項係数の積に分解）"""
    if any(part < 0 for part in parts) or sum(parts) != top:
        raise BadPartition(f"parts {list(parts)} do not sum to {top}")
    result = 1
    remaining = top
    for part in parts:
        result = result * binomial_mod_p(remaining, part, p) % p
        if result == 0:
            break
        remaining -= part
    return FpElement(result, p)


class CoefficientRing:
    """
    係数環の記述子
    級数の係数は各環の「生の値」で保持し、演算は記述子が担当する
    """
    p: int

    @property
    def zero(self) -> Any:
        raise NotImplementedError

    @property
    def one(self) -> Any:
        raise NotImplementedError

    def from_int(self, n: int) -> Any:
        raise NotImplementedError

    def add(self, a: Any, b: Any) -> Any:
        return a + b

    def sub(self, a: Any, b: Any) -> Any:
        return a - b

    def neg(self, a: Any) -> Any:
        return -a

    def mul(self, a: Any, b: Any) -> Any:
        return a * b

    def is_zero(self, a: Any) -> bool:
        return a.is_zero()

    def is_unit(self, a: Any) -> bool:
        raise NotImplementedError

    def inverse(self, a: Any) -> Any:
        raise NotImplementedError

    def frobenius(self, a: Any) -> Any:
        return a.frobenius()

    def render(self, a: Any) -> str:
        return str(a)

    def pow(self, a: Any, n: int) -> Any:
        if n < 0:
            return self.pow(self.inverse(a), -n)
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def convolve(self, a: Sequence[Any], b: Sequence[Any], prec: int) -> List[Any]:
        """a·b の z^0..z^prec の係数（ゼロ係数は飛ばす）"""
        size = prec + 1
        out = [self.zero] * size
        left = [(i, c) for i, c in enumerate(a[:size]) if not self.is_zero(c)]
        right = [(j, c) for j, c in enumerate(b[:size]) if not self.is_zero(c)]
        for i, ca in left:
            limit = size - i
            for j, cb in right:
                if j >= limit:
                    break
                out[i + j] = self.add(out[i + j], self.mul(ca, cb))
        return out


@dataclass(frozen=True)
class FpField(CoefficientRing):
    """F_p（生の値は 0 <= v < p の int）"""
    p: int

    def __post_init__(self):
        check_prime(self.p)

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def from_int(self, n: int) -> int:
        return n % self.p

    def element(self, value: int) -> FpElement:
        return FpElement(value, self.p)

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def is_zero(self, a: int) -> bool:
        return a == 0

    def is_unit(self, a: int) -> bool:
        return a != 0

    def inverse(self, a: int) -> int:
        return field_inverse(FpElement(a, self.p)).value

    def frobenius(self, a: int) -> int:
        return a

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return pow(self.inverse(a), -n, self.p)
        return pow(a, n, self.p)

    def convolve(self, a: Sequence[int], b: Sequence[int], prec: int) -> List[int]:
        size = prec + 1
        out = [0] * size
        right = [(j, c) for j, c in enumerate(b[:size]) if c]
        for i, ca in enumerate(a[:size]):
            if not ca:
                continue
            limit = size - i
            for j, cb in right:
                if j >= limit:
                    break
                out[i + j] += ca * cb
        p = self.p
        return [c % p for c in out]
