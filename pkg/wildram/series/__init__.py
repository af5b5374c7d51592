from wildram.series.truncated import (
    AtLeast, Finite, Order, TruncatedSeries, series_add, series_comp_inverse, series_compose,
    series_derivative, series_frobenius, series_mul, series_order, series_pow, series_reciprocal,
    series_sub, specialize,
)

__all__ = [
    'AtLeast', 'Finite', 'Order', 'TruncatedSeries', 'series_add', 'series_comp_inverse',
    'series_compose', 'series_derivative', 'series_frobenius', 'series_mul', 'series_order',
    'series_pow', 'series_reciprocal', 'series_sub', 'specialize',
]
