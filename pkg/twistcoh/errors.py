from typing import Optional


class TwistcohError(Exception):
    exit_code = 1

    def __init__(self, detail: str, line: Optional[int] = None):
        if line is not None:
            detail = f'line {line}: {detail}'
        super().__init__(detail)
        self.detail = detail
        self.line = line


class UnknownFormatError(TwistcohError):
    pass


### Validation (exit code 2) ###

class ValidationFailure(TwistcohError):
    exit_code = 2


class ParseError(ValidationFailure):
    pass


class DegreeError(ValidationFailure):
    pass


class LeibnizError(ValidationFailure):
    pass


class TruncationError(ValidationFailure):
    pass


class UnknownGeneratorError(ValidationFailure):
    pass


class UnknownBuiltinError(ValidationFailure):
    pass


class DimensionError(ValidationFailure):
    pass


class DimensionCapError(ValidationFailure):
    pass


class ConfigError(ValidationFailure):
    pass


### Mathematical preconditions (exit code 3) ###

class PreconditionFailure(TwistcohError):
    exit_code = 3


class NotClosed(PreconditionFailure):
    def __init__(self, detail: str, boundary=None):
        super().__init__(detail)
        self.boundary = boundary


class TwistNotClosed(PreconditionFailure):
    pass


class TwistNotOdd(PreconditionFailure):
    pass


class ProductsNotZero(PreconditionFailure):
    def __init__(self, detail: str, product: str):
        super().__init__(detail)
        self.product = product


class ClassDead(PreconditionFailure):
    pass


class NotInvariant(PreconditionFailure):
    pass


class ZeroWordLength(PreconditionFailure):
    pass


class NotHomogeneous(PreconditionFailure):
    pass


class NotAMorphism(PreconditionFailure):
    pass
