"""
検証スイートの一覧

各スイートは cases(params) で標本を並べ、check(case, rng, params) で1件ずつ検査する。
乱数は標本ごとに SplitMix64.for_sample(seed, index) から作られる。
"""
from dataclasses import dataclass
from typing import Any, Callable, Dict, List

from wildram.cli.spec_parser import series_spec
from wildram.dynamics.conjugation import conjugate
from wildram.dynamics.ramification import RamificationProfile, lower_ramification
from wildram.dynamics.wild import iterate, required_precision
from wildram.errors import IndexVanishes, InvariantViolation, ParseError, UnknownSuite
from wildram.indices.classify import VerdictKind, VerdictStatus, classify, is_q_ramified
from wildram.indices.lambda_set import lambda_set, omega
from wildram.indices.residue import (
    expected_delta, iterative_residue, pind_closed, pind_laurent, residue_of_form,
)
from wildram.rings.fp import check_prime
from wildram.rings.mpoly import MPolyRing, render_mpoly
from wildram.rings.unipoly import RationalFunction, t_power
from wildram.series.truncated import AtLeast
from wildram.suites.sampling import (
    SplitMix64, random_coordinate, random_normal_form, random_q, random_short_form,
    random_t_poly, random_wild,
)
from wildram.suites.suite_models import CheckOutcome
from wildram.symbolic.verify import (
    main_lemma_targets, recurrence_alpha_beta, verify_delta_identity, verify_delta_short,
    verify_main_lemma,
)
from wildram.valuation.bounds import fixed_point_valuations, periodic_point_bound
from wildram.valuation.newton import ValuedPoly

# 新しい標本を引き直す回数の上限
MAX_REDRAWS = 64

Case = Dict[str, Any]
CheckFn = Callable[[Case, SplitMix64, Dict[str, Any]], CheckOutcome]


@dataclass(frozen=True)
class SuiteDefinition:
    name: str
    defaults: Dict[str, Any]
    cases: Callable[[Dict[str, Any]], List[Case]]
    check: CheckFn


def _samples(params: Dict[str, Any]) -> List[Case]:
    return [{'sample': i} for i in range(params['samples'])]


def _triples(params: Dict[str, Any]) -> List[Case]:
    return [{'p': p, 'q': q, 'ell': ell} for p, q, ell in params['cases']]


def _primes(params: Dict[str, Any]) -> List[int]:
    """p が指定されていればそれだけ、なければ primes から選ぶ"""
    primes = [params['p']] if params.get('p') is not None else list(params['primes'])
    return [check_prime(p) for p in primes]


def _per_prime(params: Dict[str, Any]) -> List[Case]:
    """素数ごとに samples 件"""
    return [{'p': p, 'sample': i} for p in _primes(params) for i in range(params['samples'])]


def _as_list(value: Any) -> List[Any]:
    return list(value) if isinstance(value, (list, tuple)) else [value]


def _normal_form_cases(params: Dict[str, Any]) -> List[Case]:
    """各 q と定理の範囲の各 j について、β ≠ 0 と β = 0 を samples 件ずつ"""
    p = check_prime(params['p'])
    return [
        {'q': q, 'j': j, 'beta_zero': beta_zero, 'sample': i}
        for q in _as_list(params['q'])
        for j in lambda_set(q, p).theorem_range()
        for beta_zero in (False, True)
        for i in range(params['samples'])
    ]


def _profile_row(profile: RamificationProfile, ell: int) -> List[Any]:
    """CSV 用 (q, ℓ_j, i_0..i_n)"""
    return [profile.q, ell] + [str(level.i) for level in profile.levels]


def _exceeds(profile: RamificationProfile, n: int, bound: int) -> bool:
    """i_n > bound（AtLeast(b) なら b > bound）"""
    level = profile.levels[n].i
    value = level.bound if isinstance(level, AtLeast) else level.value
    return value > bound


# --- pind の不変性と公式 ---

def check_conj_invariance(case: Case, rng: SplitMix64, params: Dict[str, Any]) -> CheckOutcome:
    """最小の非零 pind_j について pind_j(h∘f∘h⁻¹) = h'(0)^{q−ℓ_j}·pind_j(f)"""
    p = rng.choice(_primes(params))
    q = random_q(rng, p, 2, params['q_max'])
    prec = 2 * q + 1
    f = random_wild(rng, p, q, prec)
    h = random_coordinate(rng, p, prec)
    g = conjugate(f, h)
    ring = f.ring
    lam = lambda_set(q, p)
    before = [pind_laurent(f, j) for j in range(1, lam.r + 1)]
    after = [pind_laurent(g, j) for j in range(1, lam.r + 1)]
    expected: List[Any] = []
    found = False
    for j, value in enumerate(before, start=1):
        if found:
            expected.append(None)
        elif ring.is_zero(value):
            expected.append(0)
        else:
            scale = ring.pow(h.coeffs[1], q - lam.ell(j))
            expected.append(ring.mul(scale, value))
            found = True
    passed = all(e is None or e == a for e, a in zip(expected, after))
    return CheckOutcome(passed, observed=after, expected=expected,
                        spec={'f': series_spec(f), 'h': h.to_dict()})


def check_iter_residue(case: Case, rng: SplitMix64, params: Dict[str, Any]) -> CheckOutcome:
    """p ∤ n で pind_1(f^n) = n^{-1}·pind_1(f)、resit(f^n) = n^{-1}·resit(f)（q >= p+1）"""
    p = rng.choice(_primes(params))
    q = random_q(rng, p, p + 1, params['q_max'])
    n = rng.choice(list(range(2, p)) + [p + 1])
    f = random_wild(rng, p, q, 2 * q + 1)
    g = iterate(f, n)
    ring = f.ring
    inverse = ring.inverse(ring.from_int(n))
    observed = [pind_laurent(g, 1), iterative_residue(g)]
    expected = [ring.mul(inverse, pind_laurent(f, 1)), ring.mul(inverse, iterative_residue(f))]
    return CheckOutcome(observed == expected, observed=observed, expected=expected,
                        spec={'f': series_spec(f), 'n': n})


def check_closed_formula(case: Case, rng: SplitMix64, params: Dict[str, Any]) -> CheckOutcome:
    """全ての j <= r で閉じた式とローラン展開が一致する"""
    p = case['p']
    q = rng.between(1, params['q_max'])
    f = random_wild(rng, p, q, 2 * q + 1)
    r = lambda_set(q, p).r
    laurent = [pind_laurent(f, j) for j in range(1, r + 1)]
    closed = [pind_closed(f, j) for j in range(1, r + 1)]
    return CheckOutcome(laurent == closed, observed=closed, expected=laurent, spec=series_spec(f))


def check_powers_are_zero(case: Case, rng: SplitMix64, params: Dict[str, Any]) -> CheckOutcome:
    """p | d のとき z^d h'/h^{N+1} の留数は p ∤ N で 0、N = d で h'(0)^{−d}"""
    p = check_prime(params['p'])
    top = 2 * p
    h = random_coordinate(rng, p, top + 1)
    ring = h.ring
    observed, expected = {}, {}
    for d in _as_list(params['d']):
        for N in range(1, top + 1):
            key = f"{d},{N}"
            value = residue_of_form(h, d, N)
            if N < d or N % p:
                expected[key] = 0
            elif N == d:
                expected[key] = ring.pow(ring.inverse(h.coeffs[1]), d)
            else:
                continue
            observed[key] = value
    return CheckOutcome(observed == expected, observed=observed, expected=expected, spec=h.to_dict())


# --- 分岐数 ---

def check_criterion1(case: Case, rng: SplitMix64, params: Dict[str, Any]) -> CheckOutcome:
    """
    偶数番の標本: pind_1 ≠ 0 なら i_n = ω(n)、δ_n も閉じた式に一致
    奇数番の標本: β = 0 の正規形（pind_1 = 0）で i_1 > qp+ℓ
    """
    p = check_prime(params['p'])
    q = rng.choice(_as_list(params['q']))
    n_max = params['n_max']
    ell = lambda_set(q, p).ell(1)
    if case['sample'] % 2:
        f = random_normal_form(rng, p, q, 1, q * p + ell + 2, beta_zero=True)
        profile = lower_ramification(f, 1)
        return CheckOutcome(_exceeds(profile, 1, q * p + ell), observed=str(profile.i(1)),
                            expected=f"> {q * p + ell}", spec=series_spec(f),
                            profiles=[profile], rows=[_profile_row(profile, ell)])

    prec = required_precision(q, p, n_max)
    for _ in range(MAX_REDRAWS):
        f = random_wild(rng, p, q, prec)
        pind_1 = pind_laurent(f, 1)
        if not f.ring.is_zero(pind_1):
            break
    else:
        raise InvariantViolation(f"no sample with pind_1 != 0 after {MAX_REDRAWS} draws")
    verdict = classify(f, n_max)
    ring = f.ring
    deltas_ok = verdict.status == VerdictStatus.MATCH and all(
        verdict.profile.levels[n].delta == expected_delta(ring, n, f.a(q), pind_1)
        for n in range(1, n_max + 1)
    )
    passed = verdict.kind is VerdictKind.SMALLEST_INDEX and verdict.j == 1 and deltas_ok
    return CheckOutcome(passed, observed=[str(level.i) for level in verdict.profile.levels],
                        expected=verdict.predicted, spec=series_spec(f),
                        profiles=[verdict.profile], rows=[_profile_row(verdict.profile, ell)])


def check_criterion2(case: Case, rng: SplitMix64, params: Dict[str, Any]) -> CheckOutcome:
    """正規形 z(1 + αz^q + βz^{q+ℓ_j}): β ≠ 0 なら i_n = ω(n)、β = 0 なら i_1 > qp+ℓ_j"""
    p = check_prime(params['p'])
    q, j = case['q'], case['j']
    ell = lambda_set(q, p).ell(j)
    if case['beta_zero']:
        f = random_normal_form(rng, p, q, j, q * p + ell + 2, beta_zero=True)
        profile = lower_ramification(f, 1)
        return CheckOutcome(_exceeds(profile, 1, q * p + ell), observed=str(profile.i(1)),
                            expected=f"> {q * p + ell}", spec=series_spec(f),
                            profiles=[profile], rows=[_profile_row(profile, ell)])

    n_max = params['n_max']
    f = random_normal_form(rng, p, q, j, required_precision(q, p, n_max), beta_zero=False)
    verdict = classify(f, n_max)
    passed = verdict.j == j and verdict.status == VerdictStatus.MATCH
    return CheckOutcome(passed, observed=[str(level.i) for level in verdict.profile.levels],
                        expected=verdict.predicted, spec=series_spec(f),
                        profiles=[verdict.profile], rows=[_profile_row(verdict.profile, ell)])


def check_q_ramified(case: Case, rng: SplitMix64, params: Dict[str, Any]) -> CheckOutcome:
    """
    j < s の pind_j が全て 0 の級数で、q-分岐 ⇔ resit ≠ 0
    偶数番は z^{2q+1} の係数を α²(q+1)/2 にして resit = 0 とする
    """
    p = check_prime(params['p'])
    q = rng.choice(_as_list(params['q']))
    n_max = params['n_max']
    alpha = rng.unit(p)
    critical = alpha * alpha * (q + 1) * pow(2, -1, p) % p
    resit_zero = case['sample'] % 2 == 0
    c = critical if resit_zero else (critical + rng.unit(p)) % p
    f = random_short_form(rng, p, q, q, omega(q, q, p, n_max) + 2, beta=c, alpha=alpha)
    predicted, measured = is_q_ramified(f, n_max)
    profile = lower_ramification(f, n_max)
    passed = predicted == measured == (not resit_zero)
    return CheckOutcome(passed, observed={'predicted': predicted, 'measured': measured},
                        expected=not resit_zero, spec=series_spec(f),
                        profiles=[profile], rows=[_profile_row(profile, q)])


def check_sen_lower_bound(case: Case, rng: SplitMix64, params: Dict[str, Any]) -> CheckOutcome:
    """乱数の級数の分岐数（合同式と下界は実行側で全標本に課す）"""
    p = rng.choice(_primes(params))
    q = random_q(rng, p, 2, params['q_max'])
    n_max = params['n_max']
    f = random_wild(rng, p, q, required_precision(q, p, n_max))
    profile = lower_ramification(f, n_max)
    bounds = [omega(q, q % p, p, n) for n in range(n_max + 1)]
    return CheckOutcome(True, observed=[str(level.i) for level in profile.levels], expected=bounds,
                        spec=series_spec(f), profiles=[profile], rows=[_profile_row(profile, q % p)])


# --- 記号的な検証 ---

def check_main_lemma(case: Case, rng: SplitMix64, params: Dict[str, Any]) -> CheckOutcome:
    p, q, ell = case['p'], case['q'], case['ell']
    report = verify_main_lemma(p, q, ell)
    ring = MPolyRing(p, 2)
    beta, gamma = main_lemma_targets(ring, p)
    return CheckOutcome(report.passed, observed=report.to_dict(),
                        expected={'beta': ring.render(beta), 'gamma': ring.render(gamma)}, spec=case)


def check_delta_short(case: Case, rng: SplitMix64, params: Dict[str, Any]) -> CheckOutcome:
    """β の一致、漸化式（α_p = 0 と β_p）、Δ_p = f̂^p − z"""
    p, q, ell = case['p'], case['q'], case['ell']
    report = verify_delta_short(p, q, ell)
    table = recurrence_alpha_beta(p, q, ell, p)
    identity = verify_delta_identity(p, q, ell)
    observed = {'congruence': report.passed, 'recurrence': table.passed, 'delta_identity': identity,
                'beta': render_mpoly(report.beta)}
    expected = {'congruence': True, 'recurrence': True, 'delta_identity': True}
    passed = report.passed and table.passed and identity
    return CheckOutcome(passed, observed=observed, expected=expected, spec=case)


# --- 付値 ---

def check_newton_bounds(case: Case, rng: SplitMix64, params: Dict[str, Any]) -> CheckOutcome:
    """f = z(1 + t^e z^q + c(t) z^{q+1}) で周期点と固定点の付値の上界"""
    p = check_prime(params['p'])
    q = rng.choice(_as_list(params['q']))
    zero = RationalFunction.constant(p, 0)
    for _ in range(MAX_REDRAWS):
        coeffs = [zero] * (q + 3)
        coeffs[1] = RationalFunction.constant(p, 1)
        coeffs[q + 1] = RationalFunction.from_poly(t_power(p, rng.between(0, params['a_max'])))
        coeffs[q + 2] = RationalFunction.from_poly(random_t_poly(rng, p, params['t_degree'], nonzero=True))
        f = ValuedPoly(p, tuple(coeffs))
        try:
            bound = periodic_point_bound(f)
            break
        except IndexVanishes:
            continue
    else:
        raise InvariantViolation(f"no sample with pind_1 != 0 after {MAX_REDRAWS} draws")
    fixed = fixed_point_valuations(f)
    observed = {'periodic': [str(v) for v in bound.polygon.positive_root_valuations()],
                'fixed': [str(v) for v in fixed.polygon.positive_root_valuations()],
                'delta_check': bound.delta_check}
    expected = {'periodic': f"<= {bound.bound}", 'fixed': f"<= {fixed.v_a}"}
    return CheckOutcome(bound.passed and fixed.passed, observed=observed, expected=expected,
                        spec=series_spec(f))


SUITE_DEFAULTS: Dict[str, Dict[str, Any]] = {
    'conj-invariance': {'samples': 1000, 'p': None, 'primes': [3, 5, 7], 'q_max': 12},
    'iter-residue': {'samples': 200, 'p': None, 'primes': [3, 5], 'q_max': 10},
    'closed-formula': {'samples': 500, 'p': None, 'primes': [3, 5, 7], 'q_max': 20},
    'criterion1': {'samples': 200, 'p': 3, 'q': [4, 5, 7, 8], 'n_max': 2},
    'criterion2': {'samples': 10, 'p': 3, 'q': [7, 8, 10], 'n_max': 2},
    'q-ramified': {'samples': 100, 'p': 3, 'q': [4, 5, 7, 8], 'n_max': 1},
    'sen-lower-bound': {'samples': 100, 'p': None, 'primes': [3], 'q_max': 10, 'n_max': 2},
    'main-lemma': {'cases': [[3, 4, 1], [3, 5, 2], [3, 7, 1], [5, 7, 2], [5, 11, 1]]},
    'delta-short': {'cases': [[3, 4, 1], [3, 4, 4], [3, 5, 2], [3, 5, 5], [3, 7, 4], [5, 7, 2], [5, 7, 7]]},
    'powersarezero': {'samples': 50, 'p': 3, 'd': [3, 6]},
    'newton-bounds': {'samples': 100, 'p': 3, 'q': [4], 'a_max': 2, 't_degree': 2},
}

SUITES: Dict[str, SuiteDefinition] = {
    name: SuiteDefinition(name, SUITE_DEFAULTS[name], cases, check)
    for name, cases, check in [
        ('conj-invariance', _samples, check_conj_invariance),
        ('iter-residue', _samples, check_iter_residue),
        ('closed-formula', _per_prime, check_closed_formula),
        ('criterion1', _samples, check_criterion1),
        ('criterion2', _normal_form_cases, check_criterion2),
        ('q-ramified', _samples, check_q_ramified),
        ('sen-lower-bound', _samples, check_sen_lower_bound),
        ('main-lemma', _triples, check_main_lemma),
        ('delta-short', _triples, check_delta_short),
        ('powersarezero', _samples, check_powers_are_zero),
        ('newton-bounds', _samples, check_newton_bounds),
    ]
}

# CSV に (q, ℓ_j, i_0..i_n) の行を出すスイート
PROFILE_SUITES = frozenset({'criterion1', 'criterion2', 'q-ramified', 'sen-lower-bound'})


def get_suite(name: str) -> SuiteDefinition:
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; available: {', '.join(sorted(SUITES))}")
    return SUITES[name]


def resolve_params(definition: SuiteDefinition, overrides: Dict[str, Any]) -> Dict[str, Any]:
    """既定値に上書きを重ねる（知らないキーは使い方の誤り）"""
    params = dict(definition.defaults)
    for key, value in overrides.items():
        if key not in params:
            raise ParseError(f"suite {definition.name} has no parameter {key!r}", field=key)
        params[key] = value
    if 'samples' in params and (not isinstance(params['samples'], int) or params['samples'] < 0):
        raise ParseError(f"samples must be a nonnegative integer, got {params['samples']!r}", field='samples')
    return params
