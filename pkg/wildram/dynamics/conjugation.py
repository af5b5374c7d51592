import logging
from typing import Tuple

from wildram.dynamics.wild import WildSeries
from wildram.errors import (
    InsufficientPrecision, InvariantViolation, NotRemovable, PrecedingIndexNonzero,
)
from wildram.indices.lambda_set import lambda_set
from wildram.indices.residue import pind_laurent
from wildram.series.truncated import TruncatedSeries, series_comp_inverse, series_compose

logger = logging.getLogger(__name__)


def conjugate(f: WildSeries, h: TruncatedSeries) -> WildSeries:
    """h∘f∘h^{-1}（精度は min(f.prec, h.prec)）"""
    prec = min(f.prec, h.prec)
    h = h.truncate(prec)
    inverse = series_comp_inverse(h)
    return WildSeries(series_compose(h, series_compose(f.series.truncate(prec), inverse)))


def eliminate_term(f: WildSeries, k: int) -> Tuple[WildSeries, TruncatedSeries]:
    """
    h = z + c·z^{k+1}（c = −a_{q+k}/((k−q)·a_q)）で共役を取り、z^{q+k+1} の項を消す
    それより低い次数の係数は変わらない
    """
    q = f.require_q()
    ring = f.ring
    if k < 1:
        raise NotRemovable(f"k must be positive, got {k}")
    if (k - q) % f.p == 0:
        raise NotRemovable(f"k = {k} is congruent to q = {q} mod {f.p}")
    degree = q + k + 1
    if degree > f.prec:
        raise InsufficientPrecision(f"eliminating z^{degree} needs prec >= {degree}, have {f.prec}")
    target = f.a(q + k)
    identity = TruncatedSeries.identity(ring, f.prec)
    if ring.is_zero(target):
        return f, identity
    c = ring.neg(ring.mul(target, ring.inverse(ring.mul(ring.from_int(k - q), f.a(q)))))
    h = TruncatedSeries.from_terms(ring, f.prec, {1: ring.one, k + 1: c})
    g = conjugate(f, h)
    if not ring.is_zero(g.series.coeffs[degree]):
        raise InvariantViolation(f"coefficient of z^{degree} survived the elimination")
    return g, h


def normal_form(f: WildSeries, j: int) -> Tuple[WildSeries, TruncatedSeries]:
    """
    z(1 + αz^q + βz^{q+ℓ_j}) mod z^{q+ℓ_j+p+1} の形へ共役する
    戻り値の h は g = h∘f∘h^{-1} を満たし h'(0) = 1
    """
    q = f.require_q()
    p = f.p
    ell = lambda_set(q, p).ell(j)
    top = q + ell + p
    if f.prec < top:
        raise InsufficientPrecision(f"normal form for j={j} needs prec >= {top}, have {f.prec}")
    for i in range(1, j):
        if not f.ring.is_zero(pind_laurent(f, i)):
            raise PrecedingIndexNonzero(f"pind_{i} does not vanish")

    g = f
    coordinate = TruncatedSeries.identity(f.ring, f.prec)
    for degree in range(q + 2, top + 1):
        k = degree - q - 1
        if (k - q) % p == 0:
            continue
        g, h = eliminate_term(g, k)
        coordinate = series_compose(h, coordinate)
        logger.debug(f"Eliminated z^{degree} (k={k})")
    return g, coordinate
