"""Exact arithmetic in the Grothendieck-Witt ring of the integers.

The model ring is Z_eps = Z[eps]/(eps^2 - 1), generated by the rank-one
classes <1> = 1 and <-1> = eps.  The hyperbolic plane is h = 1 + eps.  The
ring embeds into Z x Z by sending eps to +1 and -1; the image is the set of
pairs with matching parity, which is what makes lifted diagonalizations of
matrices over Z_eps possible at all.

The module also computes trace forms Tr(u * a * b) of separable field
extensions (the classes contributed by closed intersection points of curve
configurations) and classifies diagonal quadratic forms into the available
models: the Z_eps subring itself, plain rank, Sylvester signature, and the
rank/discriminant invariants over a prime field.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Union

from .errors import (
    CannotDiagonalizeError,
    InvalidParameterError,
    NoLiftError,
    NotInZEpsImageError,
    NotSeparableError,
    NotUnitError,
    UnsupportedModelError,
)

SQUAREFREE_BOUND_ENV = "MOTIVIC_PLUMB_SQUAREFREE_BOUND"
DEFAULT_SQUAREFREE_BOUND = 10**6


# ---------------------------------------------------------------------------
# the ring Z_eps


@dataclass(frozen=True)
class GwElement:
    """Element x + y*eps of Z[eps]/(eps^2 - 1).

    x is the coefficient of the class <1>, y the coefficient of <-1>.
    Arithmetic is componentwise except for multiplication, which uses
    eps^2 = 1:

    >>> H * H == 2 * H
    True
    >>> EPS * EPS
    GwElement(x=1, y=0)
    """

    x: int
    y: int

    @staticmethod
    def _coerce(value) -> "GwElement":
        if isinstance(value, GwElement):
            return value
        if isinstance(value, int):
            return GwElement(value, 0)
        return NotImplemented

    def __add__(self, other):
        other = GwElement._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GwElement(self.x + other.x, self.y + other.y)

    __radd__ = __add__

    def __sub__(self, other):
        other = GwElement._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GwElement(self.x - other.x, self.y - other.y)

    def __rsub__(self, other):
        other = GwElement._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GwElement(other.x - self.x, other.y - self.y)

    def __mul__(self, other):
        other = GwElement._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GwElement(
            self.x * other.x + self.y * other.y,
            self.x * other.y + self.y * other.x,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return GwElement(-self.x, -self.y)

    def __bool__(self):
        return self.x != 0 or self.y != 0

    def project(self) -> tuple[int, int]:
        """Image under the injection into Z_+ x Z_-, i.e. eps -> (+1, -1)."""
        return (self.x + self.y, self.x - self.y)

    def is_unit(self) -> bool:
        """True exactly for 1, -1, eps and -eps."""
        n, m = self.project()
        return abs(n) == 1 and abs(m) == 1

    def inverse(self) -> "GwElement":
        if not self.is_unit():
            raise NotUnitError(f"{self} is not a unit of Z_eps")
        # the four units are involutions
        return self

    def to_json(self) -> dict:
        return {"x": self.x, "y": self.y}

    @staticmethod
    def from_json(data: dict) -> "GwElement":
        return GwElement(int(data["x"]), int(data["y"]))

    def __str__(self):
        # render in the (h, 1) basis: x + y*eps = y*h + (x - y)
        n, c = self.y, self.x - self.y
        if n == 0:
            return str(c)
        h_part = "h" if n == 1 else ("-h" if n == -1 else f"{n}h")
        if c == 0:
            return h_part
        return f"{h_part}{c:+d}"


ZERO = GwElement(0, 0)
ONE = GwElement(1, 0)
EPS = GwElement(0, 1)
H = GwElement(1, 1)

_UNITS = (ONE, -ONE, EPS, -EPS)


def project(a: GwElement) -> tuple[int, int]:
    return a.project()


def is_unit(a: GwElement) -> bool:
    return a.is_unit()


def lift(n: int, m: int) -> GwElement:
    """Preimage of (n, m) under the projection pair, when it exists.

    Raises NoLiftError when n and m have different parities; those pairs are
    outside the image of Z_eps in Z_+ x Z_-.
    """
    if (n - m) % 2 != 0:
        raise NoLiftError(f"pair ({n}, {m}) has mismatched parity")
    return GwElement((n + m) // 2, (n - m) // 2)


def unit_multiples(a: GwElement) -> tuple[GwElement, ...]:
    return tuple(a * u for u in _UNITS)


def unit_normalize(a: GwElement) -> GwElement:
    """Canonical representative of a up to the units {1, -1, eps, -eps}.

    The representative has nonnegative rank projection, then nonnegative
    eps-coefficient, with a lexicographic tie-break.  Gives stable, comparable
    diagonal entries.
    """
    candidates = set(unit_multiples(a))
    stage1 = [c for c in candidates if c.x + c.y > 0]
    if not stage1:
        stage1 = [c for c in candidates if c.x + c.y == 0]
    stage2 = [c for c in stage1 if c.y >= 0]
    pool = stage2 or stage1
    return max(pool, key=lambda c: (c.x, c.y))


def same_up_to_unit(a: GwElement, b: GwElement) -> bool:
    return unit_normalize(a) == unit_normalize(b)


# ---------------------------------------------------------------------------
# base field tags


@dataclass(frozen=True)
class Rational:
    def to_json(self):
        return {"kind": "rational"}


@dataclass(frozen=True)
class FiniteField:
    p: int
    e: int = 1

    def __post_init__(self):
        if self.p < 2 or self.e < 1:
            raise InvalidParameterError(f"invalid finite field parameters ({self.p}, {self.e})")

    def to_json(self):
        return {"kind": "finite", "p": self.p, "e": self.e}


@dataclass(frozen=True)
class RealClosed:
    def to_json(self):
        return {"kind": "real"}


@dataclass(frozen=True)
class ComplexClosed:
    def to_json(self):
        return {"kind": "complex"}


@dataclass(frozen=True)
class Generic:
    def to_json(self):
        return {"kind": "generic"}


FieldTag = Union[Rational, FiniteField, RealClosed, ComplexClosed, Generic]

RATIONAL = Rational()
GENERIC = Generic()


def field_from_json(data: dict) -> FieldTag:
    kind = data["kind"]
    if kind == "rational":
        return Rational()
    if kind == "finite":
        return FiniteField(int(data["p"]), int(data.get("e", 1)))
    if kind == "real":
        return RealClosed()
    if kind == "complex":
        return ComplexClosed()
    if kind == "generic":
        return Generic()
    raise ValidationErrorForField(kind)


def ValidationErrorForField(kind):  # pragma: no cover - defensive
    from .errors import ValidationError

    return ValidationError(f"unknown field kind {kind!r}")


# ---------------------------------------------------------------------------
# field arithmetic adapters (exact only)


class _QOps:
    """Arithmetic over Q with Fraction coefficients."""

    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def coerce(v):
        return Fraction(v)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def div(a, b):
        return a / b

    @staticmethod
    def neg(a):
        return -a


class _FpOps:
    """Arithmetic over the prime field F_p."""

    def __init__(self, p: int):
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def coerce(self, v):
        if isinstance(v, Fraction):
            num = v.numerator % self.p
            den = v.denominator % self.p
            return self.div(num, den)
        return int(v) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def div(self, a, b):
        if b % self.p == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return (a * pow(b, -1, self.p)) % self.p

    def neg(self, a):
        return (-a) % self.p


def _ops_for(base: FieldTag):
    if isinstance(base, Rational):
        return _QOps()
    if isinstance(base, FiniteField):
        if base.e != 1:
            raise UnsupportedModelError(
                f"non-prime finite field F_{base.p}^{base.e} is not supported for form computations"
            )
        return _FpOps(base.p)
    raise UnsupportedModelError(f"trace forms require a rational or prime-field base, got {base}")


# polynomial helpers; coefficient tuples are low-degree first


def _poly_trim(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def _poly_deg(c):
    return len(c) - 1


def _poly_add(ops, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        ai = a[i] if i < len(a) else ops.zero
        bi = b[i] if i < len(b) else ops.zero
        out.append(ops.add(ai, bi))
    return _poly_trim(out)


def _poly_scale(ops, a, c):
    return _poly_trim([ops.mul(v, c) for v in a])


def _poly_sub(ops, a, b):
    return _poly_add(ops, a, _poly_scale(ops, b, ops.neg(ops.one)))


def _poly_mul(ops, a, b):
    if not a or not b:
        return ()
    out = [ops.zero] * (len(a) + len(b) - 1)
    for i, av in enumerate(a):
        for j, bv in enumerate(b):
            out[i + j] = ops.add(out[i + j], ops.mul(av, bv))
    return _poly_trim(out)


def _poly_divmod(ops, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [ops.zero] * max(0, len(a) - len(b) + 1)
    inv_lead = ops.div(ops.one, b[-1])
    while len(a) >= len(b) and _poly_trim(a):
        a = list(_poly_trim(a))
        if len(a) < len(b):
            break
        shift = len(a) - len(b)
        coef = ops.mul(a[-1], inv_lead)
        q[shift] = coef
        for i, bv in enumerate(b):
            a[shift + i] = ops.sub(a[shift + i], ops.mul(coef, bv))
    return _poly_trim(q), _poly_trim(a)


def _poly_mod(ops, a, b):
    return _poly_divmod(ops, a, b)[1]


def _poly_gcd(ops, a, b):
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        a, b = b, _poly_mod(ops, a, b)
    return a


def _poly_derivative(ops, a):
    out = []
    for i in range(1, len(a)):
        k = ops.coerce(i)
        out.append(ops.mul(k, a[i]))
    return _poly_trim(out)


# ---------------------------------------------------------------------------
# diagonal forms and extensions


@dataclass(frozen=True)
class DiagonalForm:
    """Diagonalized symmetric bilinear form over the tagged base field.

    Entries are the nonzero diagonal Gram coefficients; their number is the
    rank.  Over Q the entries are Fractions, over F_p integers in [1, p).
    """

    base: FieldTag
    entries: tuple
    provenance: str = ""

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        for v in self.entries:
            if not v:
                raise InvalidParameterError("diagonal form entries must be nonzero")

    @property
    def rank(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class ExtensionSpec:
    """A separable extension kappa = k[t]/(f) together with a unit u in kappa.

    Coefficient tuples are low-degree first; f must be monic.  The unit is a
    polynomial representative of degree < deg(f).
    """

    base: FieldTag
    minimal_polynomial: tuple
    unit: tuple = (1,)

    def __post_init__(self):
        object.__setattr__(self, "minimal_polynomial", tuple(self.minimal_polynomial))
        object.__setattr__(self, "unit", tuple(self.unit))

    @property
    def degree(self) -> int:
        return len(self.minimal_polynomial) - 1

    def to_json(self) -> dict:
        return {
            "base": self.base.to_json(),
            "minimal_polynomial": [_coeff_to_json(c) for c in self.minimal_polynomial],
            "unit": [_coeff_to_json(c) for c in self.unit],
        }

    @staticmethod
    def from_json(data: dict) -> "ExtensionSpec":
        return ExtensionSpec(
            base=field_from_json(data["base"]),
            minimal_polynomial=tuple(_coeff_from_json(c) for c in data["minimal_polynomial"]),
            unit=tuple(_coeff_from_json(c) for c in data["unit"]),
        )


def _coeff_to_json(c):
    if isinstance(c, Fraction):
        return int(c) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return int(c)


def _coeff_from_json(c):
    if isinstance(c, str):
        return Fraction(c)
    return int(c)


def trace_form(ext: ExtensionSpec) -> DiagonalForm:
    """Diagonalization of (a, b) -> Tr_{kappa/k}(u * a * b) on kappa.

    Traces are evaluated through the companion matrix of the minimal
    polynomial; the Gram matrix on the power basis is then diagonalized by
    symmetric congruence transformations.
    """
    ops = _ops_for(ext.base)
    f = _poly_trim([ops.coerce(c) for c in ext.minimal_polynomial])
    if _poly_deg(f) < 1:
        raise InvalidParameterError("minimal polynomial must have positive degree")
    if f[-1] != ops.one:
        raise InvalidParameterError("minimal polynomial must be monic")
    d = _poly_deg(f)

    fprime = _poly_derivative(ops, f)
    if _poly_deg(_poly_gcd(ops, f, fprime)) != 0:
        raise NotSeparableError("minimal polynomial has repeated roots over the base field")

    u = _poly_mod(ops, _poly_trim([ops.coerce(c) for c in ext.unit]), f)
    if _poly_deg(_poly_gcd(ops, u, f)) != 0:
        raise NotUnitError("unit representative is not invertible modulo f")

    # power traces s_k = Tr(t^k) = trace of C_f^k, k < d
    companion = [[ops.zero] * d for _ in range(d)]
    for j in range(d - 1):
        companion[j + 1][j] = ops.one
    for i in range(d):
        companion[i][d - 1] = ops.neg(f[i])
    power = [[ops.one if i == j else ops.zero for j in range(d)] for i in range(d)]
    traces = []
    for _ in range(d):
        traces.append(_mat_trace(ops, power))
        power = _mat_mul(ops, power, companion)

    def tr(poly) -> object:
        total = ops.zero
        for k, c in enumerate(poly):
            total = ops.add(total, ops.mul(c, traces[k]))
        return total

    tpow = (ops.one,)
    tpowers = []
    for _ in range(2 * d - 1):
        tpowers.append(tpow)
        tpow = _poly_mod(ops, _poly_mul(ops, tpow, (ops.zero, ops.one)), f)
    gram = [[ops.zero] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            gram[i][j] = tr(_poly_mod(ops, _poly_mul(ops, u, tpowers[i + j]), f))

    entries = _diagonalize_symmetric(ops, gram)
    return DiagonalForm(
        base=ext.base,
        entries=tuple(entries),
        provenance=f"trace form of degree-{d} extension",
    )


def _mat_mul(ops, a, b):
    n = len(a)
    out = [[ops.zero] * n for _ in range(n)]
    for i in range(n):
        for k in range(n):
            v = a[i][k]
            if not v:
                continue
            for j in range(n):
                out[i][j] = ops.add(out[i][j], ops.mul(v, b[k][j]))
    return out


def _mat_trace(ops, a):
    t = ops.zero
    for i in range(len(a)):
        t = ops.add(t, a[i][i])
    return t


def _diagonalize_symmetric(ops, gram):
    """Congruence-diagonalize a symmetric matrix; returns nonzero diagonal.

    Pivot rule: the first nonzero diagonal entry; if the whole working
    diagonal vanishes, a nonzero off-diagonal entry is folded onto the
    diagonal by adding its row and column (fails only in characteristic 2,
    where not every symmetric form is diagonalizable).
    """
    g = [row[:] for row in gram]
    d = len(g)
    entries = []
    for s in range(d):
        if not g[s][s]:
            swap = next((j for j in range(s + 1, d) if g[j][j]), None)
            if swap is not None:
                _sym_swap(g, s, swap)
            else:
                found = next(
                    ((i, j) for i in range(s, d) for j in range(s, d) if i != j and g[i][j]),
                    None,
                )
                if found is None:
                    continue  # remaining block is zero (degenerate directions)
                i, j = found
                _sym_add(ops, g, i, j)
                if not g[i][i]:
                    raise CannotDiagonalizeError(
                        "alternating block cannot be diagonalized by congruence"
                    )
                if i != s:
                    _sym_swap(g, s, i)
        pivot = g[s][s]
        for r in range(s + 1, d):
            if not g[r][s]:
                continue
            c = ops.div(g[r][s], pivot)
            for k in range(d):
                g[r][k] = ops.sub(g[r][k], ops.mul(c, g[s][k]))
            for k in range(d):
                g[k][r] = ops.sub(g[k][r], ops.mul(c, g[k][s]))
        entries.append(pivot)
    return [e for e in entries if e]


def _sym_swap(g, i, j):
    g[i], g[j] = g[j], g[i]
    for row in g:
        row[i], row[j] = row[j], row[i]


def _sym_add(ops, g, i, j):
    # row_i += row_j, col_i += col_j
    for k in range(len(g)):
        g[i][k] = ops.add(g[i][k], g[j][k])
    for k in range(len(g)):
        g[k][i] = ops.add(g[k][i], g[k][j])


# ---------------------------------------------------------------------------
# classification of diagonal forms


class GwModel(Enum):
    ZEPS = "zeps"
    RANK = "rank"
    SIGNATURE = "signature"
    FINITE_FIELD = "finite_field"


GwClassResult = Union[GwElement, int, tuple]


def _squarefree_bound(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get(SQUAREFREE_BOUND_ENV)
    if env:
        return int(env)
    return DEFAULT_SQUAREFREE_BOUND


def square_class_q(value: Fraction, bound: int | None = None) -> tuple[int, int, bool]:
    """Reduce a nonzero rational to (sign, squarefree magnitude, residual flag).

    Square factors are stripped by trial division up to the bound, followed by
    a perfect-square check on the remainder.  The residual flag marks values
    whose remaining part may still hide square factors beyond the bound; the
    magnitude is then exact enough for pairing but not certified squarefree.
    """
    bound = _squarefree_bound(bound)
    value = Fraction(value)
    n = value.numerator * value.denominator
    if n == 0:
        raise InvalidParameterError("zero has no square class")
    sign = 1 if n > 0 else -1
    m = abs(n)
    d = 2
    while d * d <= m and d <= bound:
        while m % (d * d) == 0:
            m //= d * d
        d += 1 if d == 2 else 2
    complete = d * d > m
    root = math.isqrt(m)
    if root * root == m:
        m = 1
        complete = True
    return sign, m, not complete and m != 1


def _is_square_mod_p(a: int, p: int) -> bool:
    a %= p
    if a == 0:
        raise InvalidParameterError("zero has no square class")
    if p == 2:
        return True
    return pow(a, (p - 1) // 2, p) == 1


def classify(form: DiagonalForm, model: GwModel, squarefree_bound: int | None = None) -> GwClassResult:
    """Reduce a diagonal form to the invariants of the requested model.

    ZEPS returns a GwElement when every entry has square class +-1 after
    pairing opposite-sign entries of equal square class into hyperbolic
    planes (<a> + <-a> = h); otherwise NotInZEpsImageError.  RANK returns the
    integer rank, SIGNATURE the Sylvester signature of a real-orderable
    diagonal, FINITE_FIELD the pair (rank, discriminant nonsquare bit).
    """
    if model == GwModel.RANK:
        return form.rank

    if model == GwModel.SIGNATURE:
        if not isinstance(form.base, (Rational, RealClosed)):
            raise UnsupportedModelError(f"signature undefined over base {form.base}")
        return sum(1 if Fraction(v) > 0 else -1 for v in form.entries)

    if model == GwModel.FINITE_FIELD:
        if not isinstance(form.base, FiniteField) or form.base.e != 1:
            raise UnsupportedModelError("finite-field invariants need a prime-field base")
        p = form.base.p
        disc = 1
        for v in form.entries:
            disc = (disc * int(v)) % p
        return (form.rank, 0 if _is_square_mod_p(disc, p) else 1)

    if model == GwModel.ZEPS:
        return _classify_zeps(form, squarefree_bound)

    raise UnsupportedModelError(f"unknown model {model}")


def _classify_zeps(form: DiagonalForm, bound: int | None) -> GwElement:
    base = form.base
    if isinstance(base, ComplexClosed):
        return GwElement(form.rank, 0)

    if isinstance(base, RealClosed):
        pos = sum(1 for v in form.entries if Fraction(v) > 0)
        return GwElement(pos, form.rank - pos)

    if isinstance(base, FiniteField):
        if base.e != 1:
            raise UnsupportedModelError("non-prime finite fields are not supported")
        p = base.p
        squares = sum(1 for v in form.entries if _is_square_mod_p(int(v), p))
        nonsquares = form.rank - squares
        if p == 2 or nonsquares == 0:
            return GwElement(squares + nonsquares, 0)
        if p % 4 == 3:
            # -1 is a nonsquare: nonsquare entries are the class of <-1>
            return GwElement(squares, nonsquares)
        # p = 1 mod 4: -1 is a square, so nonsquares only pair into h
        if nonsquares % 2 != 0:
            raise NotInZEpsImageError(
                f"odd number of nonsquare entries over F_{p} with -1 a square"
            )
        pairs = nonsquares // 2
        return GwElement(squares + pairs, pairs)

    if isinstance(base, Rational):
        reduced = [square_class_q(Fraction(v), bound) for v in form.entries]
        x = sum(1 for s, m, _ in reduced if m == 1 and s > 0)
        y = sum(1 for s, m, _ in reduced if m == 1 and s < 0)
        leftovers: dict[int, list[int]] = {}
        residual_seen = False
        for s, m, residual in reduced:
            if m == 1:
                continue
            residual_seen = residual_seen or residual
            leftovers.setdefault(m, []).append(s)
        for m, signs in leftovers.items():
            plus = sum(1 for s in signs if s > 0)
            minus = len(signs) - plus
            pairs = min(plus, minus)
            x += pairs
            y += pairs
            if plus != minus:
                hint = (
                    f"; residual part {m} exceeds the trial-division bound"
                    f" (raise {SQUAREFREE_BOUND_ENV})"
                    if residual_seen
                    else ""
                )
                raise NotInZEpsImageError(
                    f"entry with square class {('-' if minus > plus else '')}{m}"
                    f" is not <1> or <-1> and has no hyperbolic partner{hint}"
                )
        return GwElement(x, y)

    raise UnsupportedModelError(f"Z_eps classification undefined over base {base}")
