from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from sympy.polys.domains import GF
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing, ring

from wildram.errors import NonUnitConstant, PreconditionViolation
from wildram.rings.fp import CoefficientRing, check_prime

# F_p[x_0..x_m] の元は sympy の PolyElement をそのまま使う
MPoly = PolyElement
Exponent = Tuple[int, ...]


@lru_cache(maxsize=None)
def poly_ring(p: int, nvars: int) -> PolyRing:
    """F_p[x_0..x_{nvars-1}]（次数付き辞書式順序、x_0 > x_1 > ⋯）"""
    check_prime(p)
    if nvars < 1:
        raise PreconditionViolation(f"need at least one variable, got {nvars}")
    symbols = ",".join(f"x{i}" for i in range(nvars))
    return ring(symbols, GF(p, symmetric=False), grlex)[0]


def mpoly_mul(P: MPoly, Q: MPoly) -> MPoly:
    return P * Q


def render_mpoly(a: MPoly) -> str:
    """"2*x0^2*x1 + x1" の形（項は次数付き辞書式の降順）"""
    if not a:
        return "0"
    p = a.ring.domain.mod
    parts: List[str] = []
    for e, c in a.terms():
        c = int(c) % p
        factors = [f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(e) if k]
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append("*".join([str(c)] + factors))
    return " + ".join(parts)


@dataclass(frozen=True)
class MPolyRing(CoefficientRing):
    """F_p[x_0..x_{nvars-1}] を係数環とする記述子"""
    p: int
    nvars: int

    def __post_init__(self):
        check_prime(self.p)

    @property
    def ring(self) -> PolyRing:
        return poly_ring(self.p, self.nvars)

    @property
    def zero(self) -> MPoly:
        return self.ring.zero

    @property
    def one(self) -> MPoly:
        return self.ring.one

    def from_int(self, n: int) -> MPoly:
        return self.ring(n % self.p)

    def from_dict(self, terms: Mapping[Exponent, int]) -> MPoly:
        return self.ring.from_dict({e: c % self.p for e, c in terms.items()})

    def gen(self, index: int) -> MPoly:
        return self.ring.gens[index]

    def gens(self) -> List[MPoly]:
        return list(self.ring.gens)

    def monomial(self, c: int, exponent: Iterable[int]) -> MPoly:
        return self.from_dict({tuple(exponent): c})

    def is_zero(self, a: MPoly) -> bool:
        return not a

    def is_unit(self, a: MPoly) -> bool:
        return bool(a) and a.is_ground

    def inverse(self, a: MPoly) -> MPoly:
        if not self.is_unit(a):
            raise NonUnitConstant(f"{self.render(a)} is not a unit of F_{self.p}[x]")
        return self.from_int(pow(int(a.LC) % self.p, -1, self.p))

    def frobenius(self, a: MPoly) -> MPoly:
        # (Σ c·m)^p = Σ c·m^p
        return a.inflate([self.p] * self.nvars)

    def pow(self, a: MPoly, n: int) -> MPoly:
        if n < 0:
            return self.pow(self.inverse(a), -n)
        if n == 0:
            return self.one
        return a ** n

    def scale(self, a: MPoly, c: int) -> MPoly:
        return a * (c % self.p)

    def terms(self, a: MPoly) -> Dict[Exponent, int]:
        return {e: int(c) % self.p for e, c in a.items()}

    def evaluate(self, a: MPoly, values: Sequence[int]) -> int:
        """x_i に F_p の値を代入する"""
        if len(values) < self.nvars:
            raise PreconditionViolation(f"need {self.nvars} values, got {len(values)}")
        return int(a(*values[:self.nvars])) % self.p

    def substitute(self, a: MPoly, values: Mapping[int, MPoly]) -> MPoly:
        """x_i を多項式 values[i] で置き換える（指定のない変数はそのまま）"""
        if not values:
            return a
        return a.compose([(self.gen(i), g) for i, g in sorted(values.items())])

    def embed(self, a: MPoly, nvars: int) -> MPoly:
        """変数を末尾に追加した環へ埋め込む"""
        target = poly_ring(self.p, nvars)
        if not a:
            return target.zero
        return a.set_ring(target)

    def render(self, a: MPoly) -> str:
        return render_mpoly(a)
