from dataclasses import dataclass
from typing import Tuple

from wildram.errors import PreconditionViolation


@dataclass(frozen=True)
class LambdaSet:
    """
    Λ(q, F_p) = {ℓ ∈ 0..q : ℓ ≡ q (mod p)} を昇順に並べたもの
    ℓ_j = ℓ_1 + (j−1)p、最後の元は q
    """
    q: int
    p: int
    elements: Tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.elements)

    def ell(self, j: int) -> int:
        """ℓ_j（1始まり）"""
        if not 1 <= j <= self.r:
            raise PreconditionViolation(f"j must lie in 1..{self.r}, got {j}")
        return self.elements[j - 1]

    def theorem_range(self) -> range:
        """分岐数の判定に使える j（ℓ_j < q）"""
        return range(1, -(-self.q // self.p))

    def to_dict(self):
        return {'q': self.q, 'p': self.p, 'elements': list(self.elements)}


def lambda_set(q: int, p: int) -> LambdaSet:
    if q < 1:
        raise PreconditionViolation(f"q must be >= 1, got {q}")
    return LambdaSet(q, p, tuple(range(q % p, q + 1, p)))


def geometric_sum(p: int, n: int) -> int:
    """1 + p + ⋯ + p^{n−1}"""
    return sum(p ** k for k in range(n))


def omega(q: int, ell_j: int, p: int, n: int) -> int:
    """予測される i_n = ℓ_j(1 + p + ⋯ + p^{n−1}) + q·p^n"""
    if n < 0:
        raise PreconditionViolation(f"n must be nonnegative, got {n}")
    return ell_j * geometric_sum(p, n) + q * p ** n
