"""Affine hyperplane arrangements over Q and their Tate decompositions.

Flats are enumerated over all subsets of the arrangement; exact fraction-free
elimination decides consistency of each affine system and its codimension.
Over Q every nonempty flat is connected, so the multiplicity m(n) simply
counts the consistent subsets of codimension n (including the empty subset at
codimension 0).  The complement, its compactly-supported dual and its
homotopy at infinity are then explicit sums of Tate atoms with multiplicities
m(n); the at-infinity sum needs the arrangement to be normal crossing and
errors out otherwise instead of extrapolating.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import (
    InvalidParameterError,
    NotNormalCrossingError,
    NotNowhereDenseError,
    ParseError,
    TooManyHyperplanesError,
    ValidationError,
)
from .motives import MotiveExpression, Tate

DEFAULT_SUBSET_BOUND = 20


@dataclass(frozen=True)
class Arrangement:
    """Affine hyperplanes a.x = b in A^d with integer coefficients."""

    dimension: int
    hyperplanes: tuple[tuple[tuple[int, ...], int], ...]

    def __post_init__(self):
        if self.dimension < 1:
            raise InvalidParameterError("ambient dimension must be positive")
        normalized = []
        seen = set()
        for normal, offset in self.hyperplanes:
            normal = tuple(int(v) for v in normal)
            offset = int(offset)
            if len(normal) != self.dimension:
                raise ValidationError(
                    f"normal {normal} does not match ambient dimension {self.dimension}"
                )
            if not any(normal):
                raise ValidationError("hyperplane normals must be nonzero")
            canonical = _canonical_hyperplane(normal, offset)
            if canonical in seen:
                raise ValidationError(f"duplicate hyperplane {normal} . x = {offset}")
            seen.add(canonical)
            normalized.append((normal, offset))
        object.__setattr__(self, "hyperplanes", tuple(normalized))

    def __len__(self):
        return len(self.hyperplanes)


def _canonical_hyperplane(normal, offset):
    g = gcd(*[abs(v) for v in normal], abs(offset)) or 1
    scaled = tuple(v // g for v in normal) + (offset // g,)
    lead = next(v for v in scaled if v)
    return tuple(-v for v in scaled) if lead < 0 else scaled


def parse_arrangement(text: str) -> Arrangement:
    """Read 'a_1 ... a_d | b' lines; '#' starts a comment; d set by line one."""
    hyperplanes = []
    dimension = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "|" not in line:
            raise ParseError("expected 'a_1 ... a_d | b'", lineno)
        left, _, right = line.partition("|")
        try:
            normal = tuple(int(v) for v in left.split())
            offset = int(right.strip())
        except ValueError:
            raise ParseError(f"bad coefficients in {line!r}", lineno)
        if dimension is None:
            dimension = len(normal)
        hyperplanes.append((normal, offset))
    if dimension is None:
        raise ParseError("arrangement file contains no hyperplanes", 1)
    return Arrangement(dimension, tuple(hyperplanes))


def coordinate_arrangement(e: int, d: int) -> Arrangement:
    """The first e coordinate hyperplanes x_i = 0 in A^d."""
    if not 0 <= e <= d:
        raise InvalidParameterError("need 0 <= e <= d")
    if e == 0:
        return Arrangement(d, ())
    normals = tuple(
        (tuple(1 if j == i else 0 for j in range(d)), 0) for i in range(e)
    )
    return Arrangement(d, normals)


# ---------------------------------------------------------------------------
# flats


@dataclass(frozen=True)
class FlatData:
    """Consistency and codimension of every subset of the arrangement."""

    size: int
    consistent: dict
    codim: dict

    def is_consistent(self, subset) -> bool:
        return self.consistent[frozenset(subset)]

    def codimension(self, subset) -> int:
        return self.codim[frozenset(subset)]

    def consistent_subsets(self) -> list[frozenset]:
        return [s for s in sorted(self.consistent, key=lambda s: (len(s), sorted(s))) if self.consistent[s]]

    def nowhere_dense_ok(self, smaller, larger) -> bool:
        """For consistent J strictly inside K: the deeper flat must be smaller."""
        smaller, larger = frozenset(smaller), frozenset(larger)
        if not (smaller < larger and self.consistent[smaller] and self.consistent[larger]):
            raise InvalidParameterError("needs a strict consistent pair J < K")
        return self.codim[larger] > self.codim[smaller]

    def first_dense_pair(self):
        """A facet pair witnessing failure of the nowhere-dense condition, if any.

        Codimension is monotone along subset chains, so a failing pair exists
        exactly when a failing one-step pair exists.
        """
        for larger in self.consistent_subsets():
            if not larger:
                continue
            for i in sorted(larger):
                smaller = larger - {i}
                if self.codim[smaller] == self.codim[larger]:
                    return (tuple(sorted(smaller)), tuple(sorted(larger)))
        return None


def _row_reduce_rank(rows: list[list[int]]) -> int:
    """Rank over Q by fraction-free elimination on integer rows."""
    rows = [row[:] for row in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            if rows[r][col]:
                rv = rows[r][col]
                rows[r] = [pv * a - rv * b for a, b in zip(rows[r], rows[rank])]
                g = gcd(*[abs(v) for v in rows[r]]) if any(rows[r]) else 0
                if g > 1:
                    rows[r] = [v // g for v in rows[r]]
        rank += 1
        if rank == len(rows):
            break
    return rank


def flats(arr: Arrangement, subset_bound: int = DEFAULT_SUBSET_BOUND) -> FlatData:
    """Solve every subsystem exactly; consistency and rank per subset."""
    if len(arr) > subset_bound:
        raise TooManyHyperplanesError(
            f"{len(arr)} hyperplanes exceed the enumeration bound {subset_bound}"
        )
    indices = list(range(len(arr)))
    consistent = {frozenset(): True}
    codim = {frozenset(): 0}
    for mask in range(1, 1 << len(indices)):
        subset = frozenset(i for i in indices if mask >> i & 1)
        coeff = [list(arr.hyperplanes[i][0]) for i in sorted(subset)]
        augmented = [row + [arr.hyperplanes[i][1]] for row, i in zip(coeff, sorted(subset))]
        rank = _row_reduce_rank(coeff)
        rank_aug = _row_reduce_rank(augmented)
        consistent[subset] = rank == rank_aug
        codim[subset] = rank
    return FlatData(len(arr), consistent, codim)


def multiplicities(arr: Arrangement, flat_data: FlatData | None = None) -> dict[int, int]:
    """m(n) = number of consistent subsets of codimension n (empty set included)."""
    fd = flat_data or flats(arr)
    out: dict[int, int] = {}
    for subset in fd.consistent:
        if fd.consistent[subset]:
            c = fd.codim[subset]
            out[c] = out.get(c, 0) + 1
    return dict(sorted(out.items()))


def _is_normal_crossing(fd: FlatData) -> bool:
    return all(fd.codim[s] == len(s) for s in fd.consistent if fd.consistent[s])


def complement_decomposition(arr: Arrangement) -> MotiveExpression:
    """Tate decomposition of the arrangement complement.

    Normal crossing arrangements give the multiplicity sum of atoms 1(n)[n];
    in general each consistent subset J contributes 1(c_J)[2c_J - #J],
    provided nested flats always drop in dimension.
    """
    fd = flats(arr)
    witness = fd.first_dense_pair()
    if witness is not None:
        raise NotNowhereDenseError(
            f"flat of subset {list(witness[1])} is not nowhere dense in flat of {list(witness[0])}",
            smaller=witness[0],
            larger=witness[1],
        )
    if _is_normal_crossing(fd):
        m = multiplicities(arr, fd)
        atoms = [Tate(n, n) for n, count in m.items() for _ in range(count)]
    else:
        atoms = [
            Tate(fd.codim[s], 2 * fd.codim[s] - len(s))
            for s in fd.consistent_subsets()
        ]
    return MotiveExpression(tuple(atoms))


def infinity_decomposition(arr: Arrangement) -> MotiveExpression:
    """Homotopy at infinity of the complement of a normal crossing arrangement.

    Two blocks indexed by the multiplicities: 1(n)[n] and 1(d-n)[2d-n-1].
    """
    fd = flats(arr)
    if not _is_normal_crossing(fd):
        raise NotNormalCrossingError("at-infinity decomposition needs a normal crossing arrangement")
    d = arr.dimension
    m = multiplicities(arr, fd)
    atoms = []
    for n, count in m.items():
        atoms += [Tate(n, n)] * count
        atoms += [Tate(d - n, 2 * d - n - 1)] * count
    return MotiveExpression(tuple(atoms))


def dual_decomposition(arr: Arrangement) -> MotiveExpression:
    """Dual of the complement: atoms 1(-c_K)[-2c_K + #K] over consistent K."""
    fd = flats(arr)
    if not _is_normal_crossing(fd):
        raise NotNormalCrossingError("dual decomposition needs a normal crossing arrangement")
    atoms = [
        Tate(-fd.codim[s], -2 * fd.codim[s] + len(s))
        for s in fd.consistent_subsets()
    ]
    return MotiveExpression(tuple(atoms))
