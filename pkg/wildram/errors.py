from typing import Optional


class WildramError(Exception):
    """ライブラリ全体の基底例外"""


class ZeroInverse(WildramError):
    pass


class BadPartition(WildramError):
    pass


class ZeroValuation(WildramError):
    pass


class ModulusMismatch(WildramError):
    pass


class RingMismatch(WildramError):
    pass


class NonzeroConstant(WildramError):
    pass


class NonUnitConstant(WildramError):
    pass


class NotInvertible(WildramError):
    pass


class NotRemovable(WildramError):
    pass


class InsufficientPrecision(WildramError):
    pass


class PrecedingIndexNonzero(WildramError):
    pass


class InfiniteMultiplicity(WildramError):
    pass


class EvenCharacteristic(WildramError):
    pass


class PreconditionViolation(WildramError):
    pass


class NotDivisible(WildramError):
    pass


class ZeroPolynomial(WildramError):
    pass


class ShapeViolation(WildramError):
    pass


class IndexVanishes(WildramError):
    pass


class DivisionFailure(WildramError):
    pass


class InvariantViolation(WildramError):
    pass


class UnknownSuite(WildramError):
    pass


class ParseError(WildramError):
    """入力JSONの解析エラー（フィールド名と行番号を保持）"""

    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        self.field = field
        self.line = line
        location = []
        if field is not None:
            location.append(f"field '{field}'")
        if line is not None:
            location.append(f"line {line}")
        suffix = f" ({', '.join(location)})" if location else ""
        super().__init__(f"{message}{suffix}")
