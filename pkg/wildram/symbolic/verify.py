import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from wildram.dynamics.wild import delta_operator, iterate
from wildram.errors import EvenCharacteristic, PreconditionViolation
from wildram.rings.fp import binomial_mod_p
from wildram.rings.mpoly import MPoly, MPolyRing, render_mpoly
from wildram.series.truncated import TruncatedSeries, series_sub
from wildram.symbolic.generic import GenericShape, build_generic

logger = logging.getLogger(__name__)


@dataclass
class SymbolicReport:
    """記号的な合同式の検証結果（不一致なら最初の係数を保持）"""
    p: int
    q: int
    ell: int
    beta: MPoly
    gamma: Optional[MPoly] = None
    passed: bool = True
    offending: Optional[Tuple[int, str]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'p': self.p,
            'q': self.q,
            'ell': self.ell,
            'beta': render_mpoly(self.beta),
            'gamma': render_mpoly(self.gamma) if self.gamma is not None else None,
            'pass': self.passed,
            'offending': list(self.offending) if self.offending else None,
        }


def _check_range(p: int, q: int) -> None:
    if q < p + 1 or q % p == 0:
        raise PreconditionViolation(f"need q >= p+1 and p not dividing q (p={p}, q={q})")


def _displacement_after_p(generic) -> TruncatedSeries:
    """f̂^p − z"""
    power = iterate(generic.wild(), generic.p)
    return power.displacement()


def _scan(displacement: TruncatedSeries, expected: Dict[int, MPoly]) -> Optional[Tuple[int, str]]:
    """expected 以外の次数は 0、expected の次数は一致することを確かめる"""
    zero = displacement.ring.zero
    for degree, c in enumerate(displacement.coeffs):
        if c != expected.get(degree, zero):
            return degree, render_mpoly(c)
    return None


def main_lemma_targets(ring: MPolyRing, p: int) -> Tuple[MPoly, MPoly]:
    """(−x_0^{p−1}x_1, −x_0^{p−2}x_1²)"""
    x0, x1 = ring.gen(0), ring.gen(1)
    return -(x0 ** (p - 1) * x1), -(x0 ** (p - 2) * x1 * x1)


def verify_main_lemma(p: int, q: int, ell: int) -> SymbolicReport:
    """
    f̂^p ≡ z(1 + βz^{qp+ℓ} + γz^{qp+2ℓ}) mod z^{qp+2ℓ+2} を F_p[x] 上で確かめる
    """
    _check_range(p, q)
    generic = build_generic(p, q, ell, GenericShape.MAIN_LEMMA, q * p + 2 * ell + 1)
    logger.info(f"Verifying main lemma congruences for (p, q, ell) = ({p}, {q}, {ell})")
    displacement = _displacement_after_p(generic)
    beta_degree, gamma_degree = q * p + ell + 1, q * p + 2 * ell + 1
    beta, gamma = displacement.coeffs[beta_degree], displacement.coeffs[gamma_degree]
    beta_target, gamma_target = main_lemma_targets(generic.ring, p)
    offending = _scan(displacement, {beta_degree: beta_target, gamma_degree: gamma_target})
    report = SymbolicReport(p, q, ell, beta, gamma, offending is None, offending)
    if offending:
        logger.error(f"Main lemma mismatch at z^{offending[0]}: {offending[1]}")
    return report


def delta_short_target(ring: MPolyRing, p: int, q: int, ell_j: int) -> MPoly:
    x0, x1 = ring.gen(0), ring.gen(1)
    if ell_j < q:
        return -(x0 ** (p - 1) * x1)
    # (q+1)/2 を F_p で評価する
    half = (q + 1) * pow(2, -1, p) % p
    return x0 ** (p - 1) * (x0 * x0 * ring.from_int(half) - x1)


def verify_delta_short(p: int, q: int, ell_j: int) -> SymbolicReport:
    """f̂^p − z ≡ βz^{qp+ℓ_j+1} mod z^{qp+ℓ_j+2}（ℓ_j < q と ℓ_j = q で β が異なる）"""
    _check_range(p, q)
    if ell_j == q and p == 2:
        raise EvenCharacteristic("the case ell_j = q needs 1/2")
    generic = build_generic(p, q, ell_j, GenericShape.DELTA_SHORT, q * p + ell_j + 1)
    logger.info(f"Verifying delta-short congruence for (p, q, ell_j) = ({p}, {q}, {ell_j})")
    displacement = _displacement_after_p(generic)
    degree = q * p + ell_j + 1
    target = delta_short_target(generic.ring, p, q, ell_j)
    offending = _scan(displacement, {degree: target})
    if offending:
        logger.error(f"Delta-short mismatch at z^{offending[0]}: {offending[1]}")
    return SymbolicReport(p, q, ell_j, displacement.coeffs[degree], None, offending is None, offending)


def verify_delta_identity(p: int, q: int, ell_j: int) -> bool:
    """標数 p では Δ_p = f̂^p − z が係数ごとに成り立つ"""
    generic = build_generic(p, q, ell_j, GenericShape.DELTA_SHORT, q * p + ell_j + 1)
    delta = delta_operator(generic.wild(), p)
    return delta == _displacement_after_p(generic)


@dataclass
class RecurrenceTable:
    """α_m, β_m の漸化式と閉じた式・Δ_m との照合結果"""
    p: int
    q: int
    ell: int
    alphas: List[MPoly] = field(default_factory=list)
    betas: List[MPoly] = field(default_factory=list)
    closed_alpha: bool = True
    closed_beta: Optional[bool] = None
    delta_claim: bool = True
    alpha_p_vanishes: Optional[bool] = None
    beta_p_matches: Optional[bool] = None

    @property
    def passed(self) -> bool:
        checks = [self.closed_alpha, self.delta_claim, self.closed_beta,
                  self.alpha_p_vanishes, self.beta_p_matches]
        return all(c for c in checks if c is not None)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'p': self.p,
            'q': self.q,
            'ell': self.ell,
            'rows': [[m, render_mpoly(a), render_mpoly(b)]
                     for m, (a, b) in enumerate(zip(self.alphas, self.betas), start=1)],
            'closed_alpha': self.closed_alpha,
            'closed_beta': self.closed_beta,
            'delta_claim': self.delta_claim,
            'alpha_p_vanishes': self.alpha_p_vanishes,
            'beta_p_matches': self.beta_p_matches,
            'pass': self.passed,
        }


def _product(values) -> int:
    result = 1
    for v in values:
        result *= v
    return result


def recurrence_alpha_beta(p: int, q: int, ell_j: int, m_max: int) -> RecurrenceTable:
    """
    α_{m+1} = x_0(qm+1)α_m、β_{m+1} = x_1(qm+1)α_m + x_0(qm+ℓ_j+1)β_m
    ℓ_j = q のときは β に binom(qm+1, 2)·x_0²·α_m が加わる
    """
    if m_max < 1:
        raise PreconditionViolation(f"m_max must be >= 1, got {m_max}")
    _check_range(p, q)
    ring = MPolyRing(p, 2)
    x0, x1 = ring.gen(0), ring.gen(1)
    table = RecurrenceTable(p, q, ell_j)
    alpha, beta = x0, x1
    for m in range(1, m_max + 1):
        table.alphas.append(alpha)
        table.betas.append(beta)
        next_beta = x1 * ring.scale(alpha, q * m + 1) + x0 * ring.scale(beta, q * m + ell_j + 1)
        if ell_j == q:
            next_beta = next_beta + ring.scale(x0 * x0 * alpha, binomial_mod_p(q * m + 1, 2, p))
        alpha, beta = x0 * ring.scale(alpha, q * m + 1), next_beta

    ell = ell_j % p
    for m, (a, b) in enumerate(zip(table.alphas, table.betas), start=1):
        closed_a = ring.scale(x0 ** m, _product(q * j + 1 for j in range(1, m)))
        if closed_a != a:
            table.closed_alpha = False
        if ell_j < q:
            total = sum(_product(ell * j + 1 for j in range(1, m + 1) if j != r) for r in range(1, m + 1))
            closed_b = ring.scale(x0 ** (m - 1) * x1, total)
            table.closed_beta = (table.closed_beta is not False) and closed_b == b

    generic = build_generic(p, q, ell_j, GenericShape.DELTA_SHORT, q * m_max + ell_j + 1)
    embed = generic.ring.nvars
    delta: Optional[TruncatedSeries] = None
    wild = generic.wild()
    for m in range(1, m_max + 1):
        delta = delta_operator(wild, 1, delta) if delta is not None else series_sub(
            wild.series, TruncatedSeries.identity(generic.ring, generic.prec))
        top = q * m + ell_j + 1
        expected = {q * m + 1: ring.embed(table.alphas[m - 1], embed), top: ring.embed(table.betas[m - 1], embed)}
        zero = generic.ring.zero
        for degree in range(top + 1):
            if delta.coeffs[degree] != expected.get(degree, zero):
                table.delta_claim = False
                logger.error(f"Delta_{m} differs from the recurrence at z^{degree}")
                break

    if m_max >= p:
        table.alpha_p_vanishes = not table.alphas[p - 1]
        table.beta_p_matches = table.betas[p - 1] == delta_short_target(ring, p, q, ell_j)
    return table
