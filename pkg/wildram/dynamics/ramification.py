import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from wildram.dynamics.wild import WildSeries, iterate
from wildram.indices.lambda_set import geometric_sum, omega
from wildram.rings.fp import CoefficientRing
from wildram.series.truncated import AtLeast, Finite, Order, series_order

logger = logging.getLogger(__name__)


@dataclass
class RamificationLevel:
    """1レベル分の下分岐数 i_n と δ_n"""
    n: int
    i: Order
    delta: Optional[Any] = None

    @property
    def exact(self) -> bool:
        return isinstance(self.i, Finite)


@dataclass
class RamificationProfile:
    """i_0..i_N と δ_0..δ_N（精度不足のレベルは AtLeast）"""
    p: int
    q: int
    prec: int
    ring: CoefficientRing
    levels: List[RamificationLevel] = field(default_factory=list)

    def finite_values(self) -> List[Optional[int]]:
        return [level.i.value if level.exact else None for level in self.levels]

    def i(self, n: int) -> Order:
        return self.levels[n].i

    def violations(self) -> List[str]:
        """Sen の合同式、下界、狭義単調性、Laubie–Saïne の関係に反するものを列挙する"""
        found = []
        p, q = self.p, self.q
        ell = q % p
        values = self.finite_values()
        for n in range(1, len(values)):
            current, previous = values[n], values[n - 1]
            if current is None:
                continue
            bound = omega(q, ell, p, n)
            if current < bound:
                found.append(f"i_{n} = {current} is below the lower bound {bound}")
            if previous is None:
                continue
            if current <= previous:
                found.append(f"i_{n} = {current} does not exceed i_{n - 1} = {previous}")
            if (current - previous) % p ** n:
                found.append(f"i_{n} = {current} is not congruent to i_{n - 1} = {previous} mod {p}^{n}")
        if len(values) > 2 and values[1] is not None and q % p and values[1] < (p * p - p + 1) * q:
            for n in range(2, len(values)):
                if values[n] is None:
                    continue
                expected = q + geometric_sum(p, n) * (values[1] - q)
                if values[n] != expected:
                    found.append(f"i_{n} = {values[n]} differs from the Laubie-Saine value {expected}")
        return found

    def to_dict(self) -> Dict[str, Any]:
        return {
            'p': self.p,
            'q': self.q,
            'prec': self.prec,
            'levels': [
                {
                    'n': level.n,
                    'i': str(level.i),
                    'exact': level.exact,
                    'delta': self.ring.render(level.delta) if level.delta is not None else None,
                }
                for level in self.levels
            ],
        }


def lower_ramification(f: WildSeries, n_max: int) -> RamificationProfile:
    """
    i_n(f) = mult(f^{p^n}) − 1 を n = 0..n_max まで求める
    精度内で確定しないレベル以降は AtLeast(prec+1)
    """
    q = f.require_q()
    p = f.p
    profile = RamificationProfile(p=p, q=q, prec=f.prec, ring=f.ring)
    profile.levels.append(RamificationLevel(0, Finite(q), f.a(q)))
    logger.info(f"Computing ramification profile: p={p}, q={q}, prec={f.prec}, n_max={n_max}")

    current = f
    resolved = True
    for n in range(1, n_max + 1):
        if not resolved:
            profile.levels.append(RamificationLevel(n, AtLeast(f.prec + 1)))
            continue
        current = iterate(current, p)
        order = series_order(current.displacement())
        if isinstance(order, Finite):
            i_n = order.value - 1
            profile.levels.append(RamificationLevel(n, Finite(i_n), current.series.coeffs[order.value]))
            logger.debug(f"Level {n}: i_{n} = {i_n}")
        else:
            resolved = False
            profile.levels.append(RamificationLevel(n, AtLeast(f.prec + 1)))
            logger.warning(f"Level {n}: i_{n} unresolved at prec {f.prec}")
    return profile
