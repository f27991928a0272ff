"""Exception hierarchy shared by all modules.

Input problems (bad text, bad files) and domain problems (a computation was
requested outside its mathematical domain) are kept in separate branches so
the CLI can map them to distinct exit codes.
"""

from __future__ import annotations


class MotivicPlumbingError(Exception):
    """Base class of every error raised by this package."""

    kind = "error"


class InputError(MotivicPlumbingError):
    """Malformed textual input."""

    kind = "input"


class ParseError(InputError):
    """Syntax error in a DSL / file input, with position information."""

    kind = "parse"

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" at line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(message + where)


class ValidationError(InputError):
    """Structurally invalid input: duplicate ids, dangling references, bad values."""

    kind = "validation"


class DomainError(MotivicPlumbingError):
    """A computation was requested outside its domain of definition."""

    kind = "domain"


class NoLiftError(DomainError):
    """An integer pair with mismatched parity has no preimage in Z_eps."""

    kind = "no_lift"


class NotSeparableError(DomainError):
    kind = "not_separable"


class NotUnitError(DomainError):
    kind = "not_unit"


class NotInZEpsImageError(DomainError):
    """A diagonal form is not (recognizably) a sum of <1> and <-1> classes."""

    kind = "not_in_zeps_image"


class UnsupportedModelError(DomainError):
    kind = "unsupported_model"


class CannotDiagonalizeError(DomainError):
    """Symmetric congruence diagonalization got stuck (characteristic 2 corner)."""

    kind = "cannot_diagonalize"


class InvalidParameterError(DomainError):
    kind = "invalid_parameter"


class NotOrientableError(DomainError):
    kind = "not_orientable"


class NotTransverseError(DomainError):
    kind = "not_transverse"


class NotTreeError(DomainError):
    kind = "not_tree"


class NonRationalPointError(DomainError):
    kind = "non_rational_point"


class InconsistentIncidenceError(DomainError):
    kind = "inconsistent_incidence"


class TooManyHyperplanesError(DomainError):
    kind = "too_many_hyperplanes"


class NotNowhereDenseError(DomainError):
    """A pair of nested flats of equal codimension breaks the required genericity."""

    kind = "not_nowhere_dense"

    def __init__(self, message: str, smaller: tuple | None = None, larger: tuple | None = None):
        self.smaller = smaller
        self.larger = larger
        super().__init__(message)


class NotNormalCrossingError(DomainError):
    kind = "not_normal_crossing"


class ObstructionError(DomainError):
    """The paired diagonalization could not be completed; carries the partial data."""

    kind = "obstruction"

    def __init__(self, message: str, obstruction=None, oriented_fallback=None):
        self.obstruction = obstruction
        self.oriented_fallback = oriented_fallback
        super().__init__(message)


class CatalogError(DomainError):
    kind = "unknown_catalog"
