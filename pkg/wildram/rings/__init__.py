from wildram.rings.fp import (
    CoefficientRing, FpElement, FpField, binomial_mod_p, check_prime, field_inverse, multinomial_mod_p,
)
from wildram.rings.mpoly import MPoly, MPolyRing, mpoly_mul, poly_ring, render_mpoly
from wildram.rings.unipoly import (
    FpUniPoly, RationalFunction, RationalFunctionField, ord_t, poly_gcd, rat_valuation, render_t_poly,
    t_coefficients, t_power, t_ring, uni_poly,
)

__all__ = [
    'CoefficientRing', 'FpElement', 'FpField', 'binomial_mod_p', 'check_prime', 'field_inverse',
    'multinomial_mod_p', 'MPoly', 'MPolyRing', 'mpoly_mul', 'poly_ring', 'render_mpoly', 'FpUniPoly', 'RationalFunction',
    'RationalFunctionField', 'ord_t', 'poly_gcd', 'rat_valuation', 'render_t_poly', 't_coefficients',
    't_power', 't_ring', 'uni_poly',
]
