"""Graded modules for the connective K-homology of B Z/p.

The classifying-space module over Z[v] (deg v = 2p-2) is held as a truncated
presentation; degree pieces are realised exactly as cokernels of integer
relation matrices and compared against the cyclic closed form.  The truncated
projective-space K-ring check and the integral homology fixture of the circle
cofiber live here as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .abelian import (
    AbelianGroupMap,
    FgAbelianGroup,
    GroupPresentation,
    IntegerMatrix,
    element_order,
)

# a relation is a homogeneous sum of terms (coefficient, v-exponent, generator)
Term = tuple[int, int, int]
Relation = tuple[Term, ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class GradedModulePresentation:
    """Generators and homogeneous relations over Z[v], truncated at a degree.

    ``gen_degrees[i]`` is the internal degree of generator i; every relation
    is a tuple of (coefficient, v-exponent, generator index) terms landing in
    a single degree.  Only the window up to ``truncation_degree`` is
    materialised; degree realisations guard against relations escaping it.
    """

    p: int
    ring_degree: int
    gen_degrees: tuple[int, ...]
    relations: tuple[Relation, ...]
    truncation_degree: int

    def __post_init__(self):
        if self.ring_degree < 1:
            raise ValueError("ring degree must be positive")
        for deg in self.gen_degrees:
            if deg > self.truncation_degree:
                raise ValueError("generator outside the truncation window")
        for rel in self.relations:
            if not rel:
                raise ValueError("empty relation")
            degs = set()
            for coeff, exp, gi in rel:
                if exp < 0:
                    raise ValueError("negative v-exponent")
                if not 0 <= gi < len(self.gen_degrees):
                    raise ValueError("relation names a missing generator")
                degs.add(exp * self.ring_degree + self.gen_degrees[gi])
            if len(degs) != 1:
                raise ValueError("inhomogeneous relation")

    def relation_degree(self, rel: Relation) -> int:
        coeff, exp, gi = rel[0]
        return exp * self.ring_degree + self.gen_degrees[gi]


@lru_cache(maxsize=None)
def lu_bzp_presentation(p: int, max_degree: int) -> GradedModulePresentation:
    """The reduced classifying-space module of Z/p over Z[v], deg v = 2p-2:
    one generator in every odd degree, p-torsion relations on the bottom
    p-1 generators, and v * g_n = p * g_{n + 2p-2} thereafter."""
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if max_degree < 1:
        raise ValueError("degree bound must be at least 1")
    d = 2 * p - 2
    degrees = tuple(range(1, max_degree + 1, 2))
    index = {deg: i for i, deg in enumerate(degrees)}
    rels: list[Relation] = []
    for deg in degrees:
        if deg <= 2 * p - 3:
            rels.append(((p, 0, index[deg]),))
        if deg + d <= max_degree:
            rels.append(((1, 1, index[deg]), (-p, 0, index[deg + d])))
    return GradedModulePresentation(p, d, degrees, tuple(rels), max_degree)


@lru_cache(maxsize=None)
def summand_presentation(p: int, i: int, max_degree: int) -> GradedModulePresentation:
    """The cyclic-tower direct summand of the classifying-space module whose
    generators sit in degrees 2k(p-1) + 2i - 1."""
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if not 1 <= i <= p - 1:
        raise ValueError("summand index out of range")
    d = 2 * p - 2
    degrees = []
    deg = 2 * i - 1
    while deg <= max_degree:
        degrees.append(deg)
        deg += d
    if not degrees:
        raise ValueError("window below the bottom generator")
    rels: list[Relation] = [((p, 0, 0),)]
    for j in range(len(degrees) - 1):
        rels.append(((1, 1, j), (-p, 0, j + 1)))
    return GradedModulePresentation(p, d, tuple(degrees), tuple(rels), max_degree)


@dataclass(frozen=True)
class DegreeSlice:
    """Degree-n piece of a presentation as a presented abelian group, with the
    monomial basis v^k * g recorded as (k, generator) labels."""

    degree: int
    basis: tuple[tuple[int, int], ...]
    presentation: GroupPresentation

    def index_of(self, k: int, gen: int) -> int:
        return self.basis.index((k, gen))


@lru_cache(maxsize=None)
def realize_slice(module: GradedModulePresentation, n: int) -> DegreeSlice:
    if n > module.truncation_degree - module.ring_degree:
        raise ValueError(
            f"degree {n} outside the safe window of the truncated presentation"
        )
    d = module.ring_degree
    basis: list[tuple[int, int]] = []
    for gi, gdeg in enumerate(module.gen_degrees):
        rem = n - gdeg
        if rem >= 0 and rem % d == 0:
            basis.append((rem // d, gi))
    pos = {bk: idx for idx, bk in enumerate(basis)}
    rows: list[list[int]] = []
    for rel in module.relations:
        rem = n - module.relation_degree(rel)
        if rem < 0 or rem % d:
            continue
        k0 = rem // d
        row = [0] * len(basis)
        for coeff, exp, gi in rel:
            row[pos[(k0 + exp, gi)]] += coeff
        rows.append(row)
    pres = GroupPresentation(len(basis), IntegerMatrix(rows, cols=len(basis)))
    return DegreeSlice(n, tuple(basis), pres)


def realize_degree(module: GradedModulePresentation, n: int) -> FgAbelianGroup:
    """The degree-n piece, realised exactly as a cokernel."""
    if n < 0:
        return FgAbelianGroup.trivial()
    return realize_slice(module, n).presentation.group()


def v_multiplication_map(module: GradedModulePresentation, n: int) -> AbelianGroupMap:
    """Multiplication by v from the degree-n slice to the slice in degree
    n + deg(v), as a map of presented groups."""
    src = realize_slice(module, n)
    tgt = realize_slice(module, n + module.ring_degree)
    tgt_pos = {bk: idx for idx, bk in enumerate(tgt.basis)}
    rows = []
    for k, gi in src.basis:
        row = [0] * len(tgt.basis)
        row[tgt_pos[(k + 1, gi)]] = 1
        rows.append(row)
    images = IntegerMatrix(rows, cols=len(tgt.basis))
    return AbelianGroupMap(src.presentation, tgt.presentation, images)


def lu_closed_form(p: int, n: int) -> FgAbelianGroup:
    """Closed form of the classifying-space module in degree n: the group is
    Z/p^(k+1) when n = 2k(p-1) + 2i - 1 with 1 <= i <= p-1, trivial else."""
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if n < 1 or n % 2 == 0:
        return FgAbelianGroup.trivial()
    h = (n + 1) // 2  # h = k(p-1) + i with i in [1, p-1]
    i = (h - 1) % (p - 1) + 1
    k = (h - i) // (p - 1)
    return FgAbelianGroup.cyclic(p ** (k + 1))


def bu_bzp_group(p: int, n: int) -> FgAbelianGroup:
    """Reduced bu of B Z/p in degree n, reassembled from the p-1 shifted
    copies of the summand theory."""
    parts = [lu_closed_form(p, n - 2 * a) for a in range(p - 1)]
    return FgAbelianGroup.trivial().direct_sum(*parts)


@dataclass(frozen=True)
class GradedGroup:
    """Groups indexed by a finite degree window; degrees outside the window
    are undefined, never silently zero."""

    lo: int
    hi: int
    groups: tuple[FgAbelianGroup, ...]

    def __post_init__(self):
        if self.hi < self.lo:
            raise ValueError("empty window")
        if len(self.groups) != self.hi - self.lo + 1:
            raise ValueError("window size disagrees with the group list")

    def at(self, j: int) -> FgAbelianGroup:
        if not self.lo <= j <= self.hi:
            raise ValueError(f"degree {j} outside window [{self.lo}, {self.hi}]")
        return self.groups[j - self.lo]


def shift(graded: GradedGroup, n: int) -> GradedGroup:
    """Shift convention: the result in degree j is the input in degree j + n."""
    return GradedGroup(graded.lo - n, graded.hi - n, graded.groups)


@dataclass(frozen=True)
class TruncatedKuRing:
    """Reduced K-ring of a truncated even projective space: Z[t]/(t^2 + 2t,
    t^(r+1)) spanned additively by t, t^2, ..., t^r."""

    truncation: int

    def __post_init__(self):
        if self.truncation < 1:
            raise ValueError("truncation must be at least 1")

    def presentation(self) -> GroupPresentation:
        r = self.truncation
        rows = []
        for a in range(r - 1):  # t^(a+2) = -2 t^(a+1)
            row = [0] * r
            row[a + 1] = 1
            row[a] = 2
            rows.append(row)
        last = [0] * r
        last[r - 1] = 2  # t^(r+1) = 0 forces 2 t^r = 0
        rows.append(last)
        return GroupPresentation(r, IntegerMatrix(rows, cols=r))

    def multiply(self, left, right) -> list[int]:
        r = self.truncation
        out = [0] * r
        for a in range(1, r + 1):
            ca = left[a - 1]
            if not ca:
                continue
            for b in range(1, r + 1):
                cb = right[b - 1]
                if cb and a + b <= r:
                    out[a + b - 1] += ca * cb
        return out

    def reduced_group(self) -> FgAbelianGroup:
        return self.presentation().group()

    def element_order(self, vec) -> int | None:
        return element_order(self.presentation(), vec)


@dataclass(frozen=True)
class KuSmashCheck:
    """Outcome of the truncated-projective-space product check."""

    r: int
    v: int
    left_group: FgAbelianGroup
    smash_group: FgAbelianGroup
    generator_order: int | None
    generates: bool

    @property
    def passed(self) -> bool:
        expected_left = FgAbelianGroup.cyclic(2**self.r)
        expected_smash = FgAbelianGroup.cyclic(2 ** min(self.r, self.v))
        return (
            self.left_group == expected_left
            and self.smash_group == expected_smash
            and self.generates
        )

    @property
    def dual_injective(self) -> bool:
        # the class of t (x) t generating the smash group is exactly the
        # surjectivity of the restriction of products, whose dual is injective
        return self.generates


def ku_smash_check(r: int, v: int) -> KuSmashCheck:
    """Check that the reduced truncated K-rings have orders 2^r and 2^v, that
    their product group has order 2^min(r, v), and that the external class
    t (x) t generates it."""
    if r < 1 or v < 1:
        raise ValueError("truncations must be at least 1")
    left = TruncatedKuRing(r)
    right = TruncatedKuRing(v)
    left_pres = left.presentation()
    right_pres = right.presentation()
    n = r * v  # generators t^a (x) t^b indexed (a-1) * v + (b-1)
    rows = []
    for rel in left_pres.relations.entries:
        for b in range(v):
            row = [0] * n
            for a in range(r):
                if rel[a]:
                    row[a * v + b] = rel[a]
            rows.append(row)
    for rel in right_pres.relations.entries:
        for a in range(r):
            row = [0] * n
            for b in range(v):
                if rel[b]:
                    row[a * v + b] = rel[b]
            rows.append(row)
    smash_pres = GroupPresentation(n, IntegerMatrix(rows, cols=n))
    smash = smash_pres.group()
    gen_vec = [0] * n
    gen_vec[0] = 1  # t (x) t
    order = element_order(smash_pres, gen_vec)
    generates = (
        smash.free_rank == 0
        and len(smash.invariant_factors) <= 1
        and order == smash.order()
    )
    return KuSmashCheck(r, v, left_pres.group(), smash, order, generates)


def cofiber_homology(n: int) -> FgAbelianGroup:
    """Integral homology of the cofiber of the circle classifying-space
    inclusion: a copy of Z in every even non-negative degree."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    return FgAbelianGroup.free(1) if n % 2 == 0 else FgAbelianGroup.trivial()
