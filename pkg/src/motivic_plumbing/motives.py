"""Formal direct sums of motive atoms.

The decompositions produced by this package are finite direct sums of four
kinds of atoms: Tate twists 1(q)[p], formal homotopy fibers hofib(d)(q)[p] of
multiplication by a non-unit, nonzero d in Z_eps, oriented cones of
multiplication by an integer n > 1, and Artin atoms M(L)(q)[p] for a finite
separable extension of the base.  Expressions are kept in a canonical sorted
form so equality, hashing and JSON output are stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .errors import InvalidParameterError
from .gwring import GwElement


@dataclass(frozen=True)
class Tate:
    q: int = 0
    p: int = 0

    def _key(self):
        return (self.q, self.p, 0)

    def to_json(self) -> dict:
        return {"kind": "tate", "q": self.q, "p": self.p}

    def __str__(self):
        if self.q == 0 and self.p == 0:
            return "1"
        return f"1({self.q})[{self.p}]"


@dataclass(frozen=True)
class HoFib:
    """Fiber of multiplication by d on a Tate atom; d neither zero nor a unit."""

    d: GwElement
    q: int = 0
    p: int = 0

    def __post_init__(self):
        if not self.d or self.d.is_unit():
            raise InvalidParameterError(
                "hofib atoms carry a nonzero non-unit; units drop and zeros split"
            )

    def _key(self):
        return (self.q, self.p, 1, self.d.x, self.d.y)

    def to_json(self) -> dict:
        return {"kind": "hofib", "d": self.d.to_json(), "q": self.q, "p": self.p}

    def __str__(self):
        return f"hofib({self.d})({self.q})[{self.p}]"


@dataclass(frozen=True)
class Cone:
    """Oriented-mode cone of multiplication by an integer n > 1."""

    n: int
    q: int = 0
    p: int = 0

    def __post_init__(self):
        if self.n <= 1:
            raise InvalidParameterError("cone atoms need n > 1")

    def _key(self):
        return (self.q, self.p, 2, self.n)

    def to_json(self) -> dict:
        return {"kind": "cone", "n": self.n, "q": self.q, "p": self.p}

    def __str__(self):
        return f"cone({self.n})({self.q})[{self.p}]"


@dataclass(frozen=True)
class Artin:
    """Atom M(L)(q)[p] for a degree-[L:k] separable extension of the base."""

    degree: int
    q: int = 0
    p: int = 0

    def __post_init__(self):
        if self.degree < 1:
            raise InvalidParameterError("Artin atoms need degree >= 1")

    def _key(self):
        return (self.q, self.p, 3, self.degree)

    def to_json(self) -> dict:
        return {"kind": "artin", "degree": self.degree, "q": self.q, "p": self.p}

    def __str__(self):
        return f"M(L_{self.degree})({self.q})[{self.p}]"


Atom = Union[Tate, HoFib, Cone, Artin]


@dataclass(frozen=True)
class MotiveExpression:
    """Formal finite direct sum of atoms, as a canonically sorted multiset."""

    atoms: tuple[Atom, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(sorted(self.atoms, key=lambda a: a._key())))

    @staticmethod
    def of(*atoms: Atom) -> "MotiveExpression":
        return MotiveExpression(tuple(atoms))

    @staticmethod
    def sum(parts: Iterable["MotiveExpression"]) -> "MotiveExpression":
        collected: list[Atom] = []
        for part in parts:
            collected.extend(part.atoms)
        return MotiveExpression(tuple(collected))

    def __add__(self, other: "MotiveExpression") -> "MotiveExpression":
        return MotiveExpression(self.atoms + other.atoms)

    def __len__(self):
        return len(self.atoms)

    def hofib_part(self) -> tuple[HoFib, ...]:
        return tuple(a for a in self.atoms if isinstance(a, HoFib))

    def to_json(self) -> dict:
        grouped: list[dict] = []
        for atom in self.atoms:
            encoded = atom.to_json()
            if grouped and grouped[-1]["atom"] == encoded:
                grouped[-1]["mult"] += 1
            else:
                grouped.append({"atom": encoded, "mult": 1})
        return {"atoms": [{**g["atom"], "mult": g["mult"]} for g in grouped]}

    def __str__(self):
        if not self.atoms:
            return "0"
        parts = []
        i = 0
        while i < len(self.atoms):
            j = i
            while j < len(self.atoms) and self.atoms[j] == self.atoms[i]:
                j += 1
            mult = j - i
            text = str(self.atoms[i])
            parts.append(text if mult == 1 else f"{mult}*{text}")
            i = j
        return " + ".join(parts)
