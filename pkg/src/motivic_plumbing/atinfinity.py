"""Ordered Cech complexes of closed covers and homology at infinity.

Closed covers are recorded combinatorially: for each nonempty subset J of
the index set, the number of connected components of the corresponding
intersection.  The ordered Cech complex has one generator per component in
each degree and the usual alternating-sum differential over omitted indices.

For a plumbing pair with rational intersection points, the four potentially
nonzero homology-at-infinity groups are read off two integer matrices: the
signed point/curve incidence map and the intersection matrix itself.  The
middle groups are mixed; only their twist-graded pieces are well defined
here, and that is what is reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping

from .errors import InconsistentIncidenceError, InvalidParameterError, NonRationalPointError
from .mumford import ORIENTED, QUADRATIC, RANK, incidence_matrix, oriented_matrix, quadratic_matrix, realize
from .plumbing import PlumbingGraph
from .smithlift import IntMatrix, kernel_cokernel, snf_int


@dataclass(frozen=True)
class ChainComplexZ:
    """Bounded complex of free Z-modules; differentials[n] maps degree n+1 to n."""

    ranks: tuple[int, ...]
    differentials: tuple[IntMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(self.ranks))
        object.__setattr__(self, "differentials", tuple(self.differentials))
        if len(self.differentials) != max(0, len(self.ranks) - 1):
            raise InvalidParameterError("need one differential per adjacent degree pair")
        for n, d in enumerate(self.differentials):
            if d.rows != self.ranks[n] or d.cols != self.ranks[n + 1]:
                raise InvalidParameterError(f"differential {n} has shape {d.rows}x{d.cols}")
        for n in range(len(self.differentials) - 1):
            prod = self.differentials[n] @ self.differentials[n + 1]
            if any(v != 0 for v in prod.entries):
                raise InvalidParameterError(f"d{n} o d{n + 1} is nonzero")

    def homology(self) -> list[tuple[int, tuple[int, ...]]]:
        """Per degree: (free rank, torsion invariant factors)."""
        n_deg = len(self.ranks)
        ranks_of_d = [sum(1 for v in snf_int(d).d.diagonal() if v) for d in self.differentials]
        out = []
        for n in range(n_deg):
            r_in = ranks_of_d[n] if n < len(self.differentials) else 0  # d_n : C_{n+1} -> C_n
            r_out = ranks_of_d[n - 1] if n > 0 else 0  # d_{n-1} : C_n -> C_{n-1}
            cycles = self.ranks[n] - r_out
            free = cycles - r_in
            torsion = ()
            if n < len(self.differentials):
                torsion = tuple(v for v in snf_int(self.differentials[n]).d.diagonal() if v > 1)
            out.append((free, torsion))
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * r for n, r in enumerate(self.ranks))

    def to_json(self) -> dict:
        return {
            "ranks": list(self.ranks),
            "differentials": [d.to_json() for d in self.differentials],
        }


@dataclass(frozen=True)
class ClosedCover:
    """Component counts of the intersections of a finite closed cover.

    components maps a nonempty frozenset J of indices to the number of
    connected components of the corresponding intersection; missing subsets
    are empty.  Consistency requires downward closure: a nonempty deeper
    intersection forces every coarser one to be nonempty.
    """

    size: int
    components: Mapping[frozenset, int]

    def __post_init__(self):
        normalized = {}
        for subset, count in self.components.items():
            subset = frozenset(subset)
            if not subset or any(i < 0 or i >= self.size for i in subset):
                raise InvalidParameterError(f"subset {sorted(subset)} out of range")
            if count < 0:
                raise InvalidParameterError("component counts must be nonnegative")
            if count:
                normalized[subset] = int(count)
        object.__setattr__(self, "components", normalized)
        for subset in normalized:
            for smaller in combinations(sorted(subset), len(subset) - 1):
                if smaller and frozenset(smaller) not in normalized:
                    raise InconsistentIncidenceError(
                        f"subset {sorted(subset)} is nonempty but {list(smaller)} is empty"
                    )

    def count(self, subset) -> int:
        return self.components.get(frozenset(subset), 0)

    def depth(self) -> int:
        return max((len(s) for s in self.components), default=0)

    @staticmethod
    def from_graph(g: PlumbingGraph) -> "ClosedCover":
        components = {frozenset({i}): 1 for i in range(len(g.vertices))}
        for e in g.edges:
            pair = frozenset({g.vertex_index(e.a), g.vertex_index(e.b)})
            components[pair] = components.get(pair, 0) + len(e.points)
        return ClosedCover(len(g.vertices), components)


def _basis(cover: ClosedCover, cardinality: int) -> list[tuple[tuple, int]]:
    out = []
    for subset in combinations(range(cover.size), cardinality):
        for c in range(cover.count(subset)):
            out.append((subset, c))
    return out


def ordered_cech(cover: ClosedCover) -> ChainComplexZ:
    """Ordered Cech complex of a closed cover.

    Degree n collects the components of the (n+1)-fold intersections; the
    differential omits the k-th index with sign (-1)^k.  Components of deeper
    intersections map to the first component of each face, which is exact
    whenever proper faces are connected (the case for curve configurations).
    """
    depth = cover.depth()
    bases = [_basis(cover, n + 1) for n in range(depth)]
    ranks = tuple(len(b) for b in bases)
    diffs = []
    for n in range(depth - 1):
        source, target = bases[n + 1], bases[n]
        index = {gen: i for i, gen in enumerate(target)}
        m = [[0] * len(source) for _ in range(len(target))]
        for col, (subset, _comp) in enumerate(source):
            for k in range(len(subset)):
                face = subset[:k] + subset[k + 1 :]
                row = index[(face, 0)]
                m[row][col] += (-1) ** k
        diffs.append(IntMatrix.from_rows(m) if m else IntMatrix(0, len(source), ()))
    return ChainComplexZ(ranks, tuple(diffs))


@dataclass(frozen=True)
class RzLevel:
    degree: int
    twist: int
    shift: int
    rank: int
    differential: IntMatrix | None

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "twist": self.twist,
            "shift": self.shift,
            "rank": self.rank,
            "differential": self.differential.to_json() if self.differential else None,
        }


def rz_complex(source) -> tuple[RzLevel, ...]:
    """Symbolic nearby-boundary complex of a cover: twisted terms 1(#J)[2#J]
    per component, ending in the augmentation to the untwisted unit.

    Only the integer shadow of the alternating differentials is emitted; no
    homology is claimed (the monodromy action is not modeled).  The
    differential attached to a level maps it to the next-lower level.
    """
    cover = source if isinstance(source, ClosedCover) else ClosedCover.from_graph(source)
    cech = ordered_cech(cover)
    levels = [RzLevel(degree=0, twist=0, shift=0, rank=1, differential=None)]
    if cech.ranks:
        augmentation = IntMatrix.from_rows([[1] * cech.ranks[0]])
        levels.append(
            RzLevel(degree=1, twist=1, shift=2, rank=cech.ranks[0], differential=augmentation)
        )
        for n in range(1, len(cech.ranks)):
            levels.append(
                RzLevel(
                    degree=n + 1,
                    twist=n + 1,
                    shift=2 * (n + 1),
                    rank=cech.ranks[n],
                    differential=cech.differentials[n - 1],
                )
            )
    return tuple(levels)


@dataclass(frozen=True)
class GradedPiece:
    twist: int
    free_rank: int
    torsion: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {"twist": self.twist, "free_rank": self.free_rank, "torsion": list(self.torsion)}


@dataclass(frozen=True)
class HomologyAtInfinity:
    """Graded pieces of the homology at infinity in degrees 0..3.

    Degrees 1 and 2 are mixed; the pieces are associated-graded by Tate
    twist and the extensions between them are not determined here.
    """

    hm: tuple[tuple[GradedPiece, ...], ...]

    def piece(self, degree: int, twist: int) -> GradedPiece:
        for p in self.hm[degree]:
            if p.twist == twist:
                return p
        return GradedPiece(twist, 0, ())

    def total_free_rank(self) -> int:
        return sum(p.free_rank for pieces in self.hm for p in pieces)

    def to_json(self) -> dict:
        return {
            "hm": [[p.to_json() for p in pieces] for pieces in self.hm],
            "graded_only": True,
        }


def _piece(twist: int, free: int, torsion=(), rational: bool = False) -> list[GradedPiece]:
    torsion = () if rational else tuple(torsion)
    if free == 0 and not torsion:
        return []
    return [GradedPiece(twist, free, torsion)]


def homology_at_infinity(
    g: PlumbingGraph, mode: str = ORIENTED, rational: bool = False
) -> HomologyAtInfinity:
    """Twist-graded homology at infinity of a plumbing pair.

    Needs rational intersection points so the combinatorial terms are plain
    units.  Everything reduces to integer Smith normal forms of the signed
    incidence map and of the intersection matrix: degree 0 is the incidence
    cokernel, degree 3 the kernel of its transpose at twist 2, and the mixed
    degrees 1 and 2 combine incidence pieces with the cokernel and kernel of
    the intersection matrix at twist 1.  The rational flag drops torsion.
    """
    if not all(p.degree == 1 for e in g.edges for p in e.points):
        raise NonRationalPointError("homology at infinity needs rational intersection points")
    if mode == ORIENTED:
        mu = oriented_matrix(g)
    elif mode == QUADRATIC:
        mu = realize(quadratic_matrix(g), RANK)
    else:
        raise InvalidParameterError(f"unknown mode {mode!r}")
    inc = incidence_matrix(g)
    inc_kc = kernel_cokernel(inc)
    inc_t_kc = kernel_cokernel(inc.transpose())
    mu_kc = kernel_cokernel(mu)

    hm0 = _piece(0, inc_kc.cokernel_free_rank, inc_kc.torsion, rational)
    hm1 = _piece(0, inc_kc.kernel_rank, (), rational) + _piece(
        1, mu_kc.cokernel_free_rank, mu_kc.torsion, rational
    )
    hm2 = _piece(1, mu_kc.kernel_rank, (), rational) + _piece(
        2, inc_t_kc.cokernel_free_rank, inc_t_kc.torsion, rational
    )
    hm3 = _piece(2, inc_t_kc.kernel_rank, (), rational)
    return HomologyAtInfinity(hm=(tuple(hm0), tuple(hm1), tuple(hm2), tuple(hm3)))
