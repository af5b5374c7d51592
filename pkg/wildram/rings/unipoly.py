from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterable, List

from sympy.polys.domains import GF
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement, PolyRing, ring

from wildram.errors import DivisionFailure, ModulusMismatch, ZeroInverse, ZeroValuation
from wildram.rings.fp import CoefficientRing, check_prime

# F_p[t] の元は sympy の PolyElement をそのまま使う
FpUniPoly = PolyElement


@lru_cache(maxsize=None)
def t_ring(p: int) -> PolyRing:
    """F_p[t]（係数の代表は 0..p-1）"""
    check_prime(p)
    return ring("t", GF(p, symmetric=False), lex)[0]


def modulus(poly: PolyElement) -> int:
    return poly.ring.domain.mod


def uni_poly(p: int, coeffs: Iterable[int]) -> PolyElement:
    """coeffs[i] を t^i の係数とする多項式"""
    return t_ring(p).from_dict({(k,): c % p for k, c in enumerate(coeffs) if c % p})


def t_power(p: int, degree: int, c: int = 1) -> PolyElement:
    return t_ring(p).from_dict({(degree,): c % p})


def t_coefficients(poly: PolyElement) -> List[int]:
    """t^0..t^deg の係数（ゼロ多項式は空リスト）"""
    if not poly:
        return []
    p = modulus(poly)
    out = [0] * (poly.degree() + 1)
    for (k,), c in poly.items():
        out[k] = int(c) % p
    return out


def ord_t(poly: PolyElement) -> int:
    if not poly:
        raise ZeroValuation("ord_t of the zero polynomial")
    return poly.tail_degree()


def poly_gcd(a: PolyElement, b: PolyElement) -> PolyElement:
    """モニックな gcd（gcd(0, 0) = 0）"""
    if not a:
        return b.monic()
    if not b:
        return a.monic()
    return a.gcd(b).monic()


def render_t_poly(poly: PolyElement) -> str:
    """昇べきの順で "2*t+t^2" の形にする"""
    if not poly:
        return "0"
    parts = []
    for i, c in enumerate(t_coefficients(poly)):
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            power = "t" if i == 1 else f"t^{i}"
            parts.append(power if c == 1 else f"{c}*{power}")
    return "+".join(parts)


@dataclass(frozen=True)
class RationalFunction:
    """
    F_p(t) の元 numerator/denominator
    自動では既約化しない（必要なら reduced() を呼ぶ）
    """
    numerator: PolyElement
    denominator: PolyElement

    def __post_init__(self):
        if not self.denominator:
            raise ZeroInverse("rational function with zero denominator")
        if self.numerator.ring != self.denominator.ring:
            raise ModulusMismatch("numerator and denominator over different rings")

    @classmethod
    def from_poly(cls, poly: PolyElement) -> "RationalFunction":
        return cls(poly, poly.ring.one)

    @classmethod
    def constant(cls, p: int, c: int) -> "RationalFunction":
        return cls.from_poly(t_ring(p)(c % p))

    @property
    def p(self) -> int:
        return modulus(self.numerator)

    def is_zero(self) -> bool:
        return not self.numerator

    def is_polynomial(self) -> bool:
        return self.denominator.is_ground

    def as_polynomial(self) -> PolyElement:
        """分母が定数のときの多項式表現"""
        if not self.is_polynomial():
            raise DivisionFailure(f"{self} is not a polynomial")
        return self.numerator.quo_ground(self.denominator.LC)

    def _check(self, other: "RationalFunction") -> None:
        if other.numerator.ring != self.numerator.ring:
            raise ModulusMismatch(f"F_{self.p}(t) and F_{other.p}(t)")

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        self._check(other)
        if self.denominator == other.denominator:
            return RationalFunction(self.numerator + other.numerator, self.denominator)
        return RationalFunction(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        self._check(other)
        return RationalFunction(self.numerator * other.numerator, self.denominator * other.denominator)

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroInverse("0 has no inverse in F_p(t)")
        return RationalFunction(self.denominator, self.numerator)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        return self * other.inverse()

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if other.numerator.ring != self.numerator.ring:
            return False
        return self.numerator * other.denominator == other.numerator * self.denominator

    def __hash__(self) -> int:
        reduced = self.reduced()
        return hash((reduced.numerator, reduced.denominator))

    def reduced(self) -> "RationalFunction":
        """既約化し、分母をモニックにする"""
        if self.is_zero():
            return RationalFunction(self.numerator, self.numerator.ring.one)
        _, num, den = self.numerator.cofactors(self.denominator)
        lead = den.LC
        return RationalFunction(num.quo_ground(lead), den.quo_ground(lead))

    def frobenius(self) -> "RationalFunction":
        # c^p = c in F_p
        p = self.p
        return RationalFunction(self.numerator.inflate([p]), self.denominator.inflate([p]))

    def __str__(self) -> str:
        if self.is_polynomial():
            return render_t_poly(self.as_polynomial())
        return f"({render_t_poly(self.numerator)})/({render_t_poly(self.denominator)})"


def rat_valuation(r: RationalFunction) -> int:
    """t 進付値 v = ord_t(分子) − ord_t(分母)"""
    if r.is_zero():
        raise ZeroValuation("valuation of 0 is +infinity")
    return ord_t(r.numerator) - ord_t(r.denominator)


@dataclass(frozen=True)
class RationalFunctionField(CoefficientRing):
    """F_p(t) を係数環とする記述子"""
    p: int

    def __post_init__(self):
        check_prime(self.p)

    @property
    def zero(self) -> RationalFunction:
        return RationalFunction.constant(self.p, 0)

    @property
    def one(self) -> RationalFunction:
        return RationalFunction.constant(self.p, 1)

    def from_int(self, n: int) -> RationalFunction:
        return RationalFunction.constant(self.p, n)

    def t(self) -> RationalFunction:
        return RationalFunction.from_poly(t_power(self.p, 1))

    def is_unit(self, a: RationalFunction) -> bool:
        return not a.is_zero()

    def inverse(self, a: RationalFunction) -> RationalFunction:
        return a.inverse()

    def render(self, a: RationalFunction) -> str:
        return str(a.reduced())
