"""
級数指定 JSON の読み書き

    {"p": 3, "prec": 62, "coeffs": [[5, 1], [6, 2]]}                      → z + z^5 + 2z^6
    {"p": 3, "coeffs": [[5, "t"], [6, "t^2"]], "valued": true}             → F_3(t) 係数の多項式

coeffs は f(z) − z の (次数 >= 2, 係数) を次数の昇順に並べたもの。
"""
import json
from typing import Any, Dict, List, Optional, Tuple, Union

from sympy import Poly, Symbol
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from wildram.dynamics.wild import WildSeries
from wildram.errors import InvariantViolation, ParseError, PreconditionViolation
from wildram.rings.fp import FpField, check_prime
from wildram.rings.unipoly import FpUniPoly, RationalFunction, RationalFunctionField, t_ring, uni_poly
from wildram.valuation.newton import ValuedPoly

T = Symbol('t')
TRANSFORMATIONS = standard_transformations + (convert_xor,)

SeriesInput = Union[WildSeries, ValuedPoly]


def _line_of(text: str, field: str) -> Optional[int]:
    """フィールド名が最初に現れる行（1始まり）"""
    needle = f'"{field}"'
    for number, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return number
    return None


def parse_t_poly(value: str, p: int) -> FpUniPoly:
    """"1+2*t^3" のような文字列を F_p[t] の元にする"""
    try:
        expr = parse_expr(value, local_dict={'t': T}, transformations=TRANSFORMATIONS)
        poly = Poly(expr, T, modulus=p)
    except Exception as e:
        raise ParseError(f"cannot read {value!r} as a polynomial in t over F_{p}: {e}", field='coeffs')
    coeffs = [int(c) % p for c in reversed(poly.all_coeffs())]
    return uni_poly(p, coeffs)


def _read_int(data: Dict[str, Any], name: str, text: str) -> int:
    value = data.get(name)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ParseError(f"expected an integer, got {value!r}", field=name, line=_line_of(text, name))
    return value


def _read_terms(data: Dict[str, Any], text: str) -> List[Tuple[int, Any]]:
    raw = data.get('coeffs')
    line = _line_of(text, 'coeffs')
    if not isinstance(raw, list):
        raise ParseError("expected a list of [degree, coefficient] pairs", field='coeffs', line=line)
    terms = []
    for entry in raw:
        if not isinstance(entry, list) or len(entry) != 2:
            raise ParseError(f"bad term {entry!r}", field='coeffs', line=line)
        degree, value = entry
        if not isinstance(degree, int) or isinstance(degree, bool) or degree < 2:
            raise ParseError(f"degree must be an integer >= 2, got {degree!r}", field='coeffs', line=line)
        if not isinstance(value, (int, str)) or isinstance(value, bool):
            raise ParseError(f"coefficient must be an integer or a string, got {value!r}", field='coeffs', line=line)
        terms.append((degree, value))
    degrees = [d for d, _ in terms]
    if len(set(degrees)) != len(degrees):
        raise InvariantViolation(f"duplicate degree in coeffs: {degrees}")
    if degrees != sorted(degrees):
        raise InvariantViolation(f"degrees must be strictly increasing: {degrees}")
    return terms


def parse_series_spec(text: str, require_odd: bool = False) -> SeriesInput:
    """JSON から WildSeries（valued なら ValuedPoly）を作る"""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", line=e.lineno)
    if not isinstance(data, dict):
        raise ParseError("expected a JSON object", line=1)

    p = _read_int(data, 'p', text)
    try:
        check_prime(p)
    except PreconditionViolation as e:
        raise ParseError(str(e), field='p', line=_line_of(text, 'p'))
    if require_odd and p == 2:
        raise ParseError("this command needs an odd prime", field='p', line=_line_of(text, 'p'))

    terms = _read_terms(data, text)
    valued = data.get('valued', False)
    if not isinstance(valued, bool):
        raise ParseError(f"expected true or false, got {valued!r}", field='valued', line=_line_of(text, 'valued'))

    if valued:
        coeffs: Dict[int, RationalFunction] = {1: RationalFunction.constant(p, 1)}
        for degree, value in terms:
            poly = parse_t_poly(value, p) if isinstance(value, str) else t_ring(p)(value % p)
            coeffs[degree] = RationalFunction.from_poly(poly)
        top = max(coeffs)
        zero = RationalFunction.constant(p, 0)
        return ValuedPoly(p, tuple(coeffs.get(i, zero) for i in range(top + 1)))

    prec = _read_int(data, 'prec', text)
    if prec < 1:
        raise ParseError(f"prec must be >= 1, got {prec}", field='prec', line=_line_of(text, 'prec'))
    values = {}
    for degree, value in terms:
        if isinstance(value, str):
            raise ParseError("t-coefficients need \"valued\": true", field='coeffs', line=_line_of(text, 'coeffs'))
        if degree > prec:
            raise InvariantViolation(f"degree {degree} exceeds prec {prec}")
        values[degree] = value % p
    return WildSeries.from_terms(FpField(p), prec, values)


def series_spec(f: SeriesInput) -> Dict[str, Any]:
    """parse_series_spec で読み戻せる辞書（反例の記録に使う）"""
    if isinstance(f, ValuedPoly):
        terms = [[i, str(c.reduced())] for i, c in enumerate(f.coeffs) if i >= 2 and not c.is_zero()]
        return {'p': f.p, 'coeffs': terms, 'valued': True}
    ring = f.ring
    if isinstance(ring, RationalFunctionField):
        terms = [[k, str(c.reduced())] for k, c in f.series.nonzero_terms() if k >= 2]
        return {'p': f.p, 'prec': f.prec, 'coeffs': terms, 'valued': True}
    terms = [[k, int(c)] for k, c in f.series.nonzero_terms() if k >= 2]
    return {'p': f.p, 'prec': f.prec, 'coeffs': terms}


def load_series_spec(path: str, require_odd: bool = False) -> SeriesInput:
    try:
        with open(path, encoding='utf-8') as handle:
            text = handle.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}")
    return parse_series_spec(text, require_odd)
