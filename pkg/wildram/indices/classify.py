import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from wildram.dynamics.ramification import RamificationProfile, lower_ramification
from wildram.dynamics.wild import WildSeries
from wildram.errors import EvenCharacteristic, InsufficientPrecision, PreconditionViolation
from wildram.indices.lambda_set import lambda_set, omega
from wildram.indices.residue import iterative_residue, pind_laurent
from wildram.series.truncated import AtLeast, Finite

logger = logging.getLogger(__name__)


class VerdictKind(Enum):
    """判定の根拠"""
    SMALLEST_INDEX = "smallest_index"
    Q_RAMIFIED = "q_ramified"
    UNCLASSIFIED = "unclassified"


class VerdictStatus(Enum):
    MATCH = "match"
    MISMATCH = "mismatch"
    UNRESOLVED = "unresolved"


@dataclass
class Verdict:
    """予測した i_n と実測した分岐数の比較結果"""
    kind: VerdictKind
    profile: RamificationProfile
    j: Optional[int] = None
    ell: Optional[int] = None
    predicted: List[int] = field(default_factory=list)
    status: VerdictStatus = VerdictStatus.UNRESOLVED

    @property
    def matches(self) -> bool:
        return self.status == VerdictStatus.MATCH

    def to_dict(self) -> Dict[str, Any]:
        return {
            'kind': self.kind.value,
            'j': self.j,
            'ell': self.ell,
            'predicted': self.predicted,
            'measured': [str(level.i) for level in self.profile.levels],
            'status': self.status.value,
        }


def compare_profile(profile: RamificationProfile, predicted: List[int]) -> VerdictStatus:
    """Finite は一致、AtLeast(b) は b <= 予測値なら未確定、b > 予測値なら不一致"""
    status = VerdictStatus.MATCH
    for level, expected in zip(profile.levels, predicted):
        if isinstance(level.i, Finite):
            if level.i.value != expected:
                return VerdictStatus.MISMATCH
        elif level.i.bound > expected:
            return VerdictStatus.MISMATCH
        else:
            status = VerdictStatus.UNRESOLVED
    return status


def _check_range(q: int, p: int) -> None:
    if q <= p or q % p == 0:
        raise PreconditionViolation(f"need q >= p+1 and p not dividing q (q={q}, p={p})")


def _prediction(f: WildSeries, n_max: int) -> Tuple[VerdictKind, Optional[int], Optional[int], List[int]]:
    """pind_j と resit から (根拠, j, ℓ_j, 予測した i_0..i_n) を決める"""
    q, p = f.require_q(), f.p
    _check_range(q, p)
    lam = lambda_set(q, p)
    for j in lam.theorem_range():
        if not f.ring.is_zero(pind_laurent(f, j)):
            ell = lam.ell(j)
            return VerdictKind.SMALLEST_INDEX, j, ell, [omega(q, ell, p, n) for n in range(n_max + 1)]
    if p != 2 and not f.ring.is_zero(iterative_residue(f)):
        return VerdictKind.Q_RAMIFIED, lam.r, q, [omega(q, q, p, n) for n in range(n_max + 1)]
    return VerdictKind.UNCLASSIFIED, None, None, []


def predicted_profile(f: WildSeries, n_max: int) -> Optional[List[int]]:
    """指数だけから予測した i_0..i_{n_max}（判定できなければ None）"""
    kind, _, _, predicted = _prediction(f, n_max)
    return None if kind is VerdictKind.UNCLASSIFIED else predicted


def classify(f: WildSeries, n_max: int) -> Verdict:
    """
    ℓ_j < q の範囲で pind_j ≠ 0 となる最小の j を探し、i_n = ω(n) を予測して実測と比べる
    見つからなければ q-分岐の判定に委ねる
    """
    kind, j, ell, predicted = _prediction(f, n_max)
    profile = lower_ramification(f, n_max)
    if kind is VerdictKind.UNCLASSIFIED:
        logger.info("No index below s and vanishing iterative residue: unclassified")
        return Verdict(kind, profile)
    verdict = Verdict(kind, profile, j, ell, predicted)
    verdict.status = compare_profile(profile, predicted)
    if kind is VerdictKind.SMALLEST_INDEX:
        logger.info(f"Classified with j={j}: {verdict.status.value}")
    else:
        logger.info(f"Deferred to q-ramification: {verdict.status.value}")
    return verdict


def is_q_ramified(f: WildSeries, n_max: int) -> Tuple[bool, bool]:
    """(予測, 実測)：予測は resit ≠ 0 かつ j < s で pind_j = 0、実測は i_n = q(1+⋯+p^n)"""
    q = f.require_q()
    p = f.p
    if p == 2:
        raise EvenCharacteristic("q-ramification criterion needs odd p")
    _check_range(q, p)
    lam = lambda_set(q, p)
    predicted = (
        not f.ring.is_zero(iterative_residue(f))
        and all(f.ring.is_zero(pind_laurent(f, j)) for j in lam.theorem_range())
    )
    profile = lower_ramification(f, n_max)
    measured = True
    for level in profile.levels[1:]:
        expected = omega(q, q, p, level.n)
        if isinstance(level.i, AtLeast):
            if level.i.bound <= expected:
                raise InsufficientPrecision(f"i_{level.n} is {level.i}, cannot compare with {expected}")
            measured = False
            break
        if level.i.value != expected:
            measured = False
            break
    return predicted, measured
