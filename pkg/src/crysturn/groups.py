"""Affine model of crystallographic groups.

A group element is an affine map ``(a, A): x -> A.x + a`` with an integer
unimodular matrix part and a rational translation.  A crystallographic group
of dimension n is stored as its translation lattice Z^n (implicit) plus one
canonical coset representative per holonomy matrix, with translation
components reduced into [0, 1).  The representative of the identity matrix
is always the true identity.

Construction closes the given generators into the finite holonomy group by
breadth-first products and validates the cocycle condition; the supplied
normaliser generators are checked to actually normalise the holonomy group
but are otherwise trusted as input data (completeness of the normaliser
cannot be certified from the group alone).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .linalg import (
    IntMatrix,
    Vec,
    in_lattice_image,
    is_integral,
    vec_add,
    vec_mod1,
    vec_neg,
    vec_sub,
    vector,
    zero_vector,
)

DEFAULT_CLOSURE_CAP = 10000


class GroupValidationError(ValueError):
    """The supplied data does not define a valid crystallographic group."""


class ClosureCapExceeded(RuntimeError):
    """Closure enumeration passed the element cap: the group is not finite
    (or the cap is too small)."""


@dataclass(frozen=True)
class AffineMap:
    """An affine map (translation, linear): x -> linear.x + translation."""

    translation: Vec
    linear: IntMatrix

    def __post_init__(self):
        object.__setattr__(self, "translation", vector(self.translation))
        if len(self.translation) != self.linear.nrows or not self.linear.is_square:
            raise ValueError("translation length must match the (square) linear part")

    @classmethod
    def identity(cls, n: int) -> "AffineMap":
        return cls(zero_vector(n), IntMatrix.identity(n))

    @property
    def dimension(self) -> int:
        return len(self.translation)

    def compose(self, other: "AffineMap") -> "AffineMap":
        """(d1, D1)(d2, D2) = (d1 + D1.d2, D1.D2)."""
        if self.dimension != other.dimension:
            raise ValueError("dimension mismatch in affine product")
        return AffineMap(
            vec_add(self.translation, self.linear.apply(other.translation)),
            self.linear @ other.linear,
        )

    __mul__ = compose

    def inverse(self) -> "AffineMap":
        """(-D^-1.d, D^-1); requires a unimodular linear part."""
        if not self.linear.is_unimodular():
            raise ValueError("inverse requires a unimodular linear part")
        inv = self.linear.int_inverse()
        return AffineMap(vec_neg(inv.apply(self.translation)), inv)

    def reduce_mod1(self) -> "AffineMap":
        return AffineMap(vec_mod1(self.translation), self.linear)

    def is_identity(self) -> bool:
        return self.linear == IntMatrix.identity(self.dimension) and all(
            x == 0 for x in self.translation
        )

    def __str__(self) -> str:
        t = ",".join(str(x) for x in self.translation)
        return f"({t}; {self.linear})"


class PointGroup:
    """A finite group of integer matrices with multiplication/inverse tables."""

    def __init__(self, elements: Sequence[IntMatrix]):
        self.elements = tuple(elements)
        if not self.elements:
            raise GroupValidationError("point group must be nonempty")
        n = self.elements[0].nrows
        self._index = {}
        for i, m in enumerate(self.elements):
            if not m.is_square or m.nrows != n:
                raise GroupValidationError("point group elements must share a square shape")
            if m in self._index:
                raise GroupValidationError("duplicate point group element")
            self._index[m] = i
        if IntMatrix.identity(n) not in self._index:
            raise GroupValidationError("point group does not contain the identity")
        mult = []
        for a in self.elements:
            row = []
            for b in self.elements:
                prod = a @ b
                if prod not in self._index:
                    raise GroupValidationError("point group is not closed under products")
                row.append(self._index[prod])
            mult.append(tuple(row))
        self.mult_table = tuple(mult)
        ident = self._index[IntMatrix.identity(n)]
        inv = [None] * len(self.elements)
        for i, row in enumerate(self.mult_table):
            for j, k in enumerate(row):
                if k == ident:
                    inv[i] = j
        if any(v is None for v in inv):
            raise GroupValidationError("point group is not closed under inverses")
        self.inv_table = tuple(inv)

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, m: IntMatrix) -> int:
        try:
            return self._index[m]
        except KeyError:
            raise ValueError("matrix is not an element of the point group") from None

    def __contains__(self, m: IntMatrix) -> bool:
        return m in self._index

    def inverse(self, m: IntMatrix) -> IntMatrix:
        return self.elements[self.inv_table[self.index(m)]]

    def element_order(self, m: IntMatrix) -> int:
        i = self.index(m)
        ident = self._index[IntMatrix.identity(self.elements[0].nrows)]
        k, cur = 1, i
        while cur != ident:
            cur = self.mult_table[cur][i]
            k += 1
        return k


def matrix_group_closure(
    gens: Sequence[IntMatrix], cap: int = DEFAULT_CLOSURE_CAP
) -> PointGroup:
    """Close a set of unimodular matrices into a finite matrix group.

    Elements are enumerated breadth-first, identity first, from the sorted
    generators and their inverses, so the discovery order (and anything
    derived from it, like "first witness" answers) is deterministic.  Raises
    :class:`ClosureCapExceeded` once more than ``cap`` elements appear.
    """
    if not gens:
        raise ValueError("at least one generator is required")
    n = gens[0].nrows
    for g in gens:
        if not g.is_unimodular():
            raise ValueError(f"generator is not unimodular: {g}")
        if g.nrows != n:
            raise ValueError("generators of mixed dimensions")
    # Positive products suffice: a finite closure of invertible matrices is a
    # group, and an infinite group never has a finite positive closure.
    gen_list = sorted(set(gens), key=lambda m: m.rows)
    ident = IntMatrix.identity(n)
    seen = {ident: 0}
    order = [ident]
    frontier = [ident]
    while frontier:
        next_frontier = []
        for cur in frontier:
            for g in gen_list:
                prod = g @ cur
                if prod not in seen:
                    if len(order) >= cap:
                        raise ClosureCapExceeded(
                            f"matrix group closure exceeded cap of {cap} elements"
                        )
                    seen[prod] = len(order)
                    order.append(prod)
                    next_frontier.append(prod)
        frontier = next_frontier
    return PointGroup(order)


class CrystGroup:
    """A crystallographic group with translation lattice exactly Z^n.

    ``f_ext`` holds one affine representative per holonomy matrix, identity
    first, translations in [0, 1)^n.  ``normaliser_gens`` is optional input
    data (generators of the normaliser of the holonomy group in GL_n(Z));
    spectra and R-infinity verdicts are always relative to it.
    """

    def __init__(
        self,
        dimension: int,
        f_ext: Sequence[AffineMap],
        normaliser_gens: Optional[Sequence[IntMatrix]] = None,
        labels: Optional[Mapping[str, str]] = None,
        name: str = "",
    ):
        self.dimension = dimension
        self.f_ext = tuple(f_ext)
        self.normaliser_gens = tuple(normaliser_gens) if normaliser_gens is not None else None
        self.labels = dict(labels or {})
        self.name = name
        self.point_group = PointGroup([g.linear for g in self.f_ext])
        self._rep_index = {g.linear: i for i, g in enumerate(self.f_ext)}

    @property
    def order(self) -> int:
        """Order of the holonomy group."""
        return len(self.f_ext)

    @property
    def matrix_parts(self) -> tuple[IntMatrix, ...]:
        return self.point_group.elements

    def holonomy_index(self, m: IntMatrix) -> int:
        try:
            return self._rep_index[m]
        except KeyError:
            raise ValueError("matrix is not a holonomy element of this group") from None

    def representative(self, m: IntMatrix) -> AffineMap:
        """The canonical F_ext representative with the given matrix part."""
        return self.f_ext[self.holonomy_index(m)]

    def contains(self, elem: AffineMap) -> bool:
        """Membership: matrix part in the holonomy group, offset integral."""
        if elem.dimension != self.dimension:
            raise ValueError("dimension mismatch")
        i = self._rep_index.get(elem.linear)
        if i is None:
            return False
        return is_integral(vec_sub(elem.translation, self.f_ext[i].translation))

    def is_bieberbach(self) -> bool:
        """Torsion-freeness: no (x + a, A) with A != I has finite order.

        (x + a, A) with A of order m is torsion iff (sum_i A^i)(x + a) = 0,
        so torsion with matrix part A exists iff N_A . x = -N_A . a has an
        integral solution.
        """
        ident = IntMatrix.identity(self.dimension)
        for rep in self.f_ext:
            if rep.linear == ident:
                continue
            m = self.point_group.element_order(rep.linear)
            acc = IntMatrix.identity(self.dimension)
            power = rep.linear
            for _ in range(m - 1):
                acc = acc + power
                power = power @ rep.linear
            target = vec_neg(acc.apply(rep.translation))
            if in_lattice_image(acc, target):
                return False
        return True

    def validate(self) -> None:
        """Re-check every structural invariant; raises on the first failure.

        This is an independent walk over all pairs of representatives, usable
        as an oracle against the construction in :func:`build_group`.
        """
        n = self.dimension
        ident = IntMatrix.identity(n)
        if self.f_ext[0].linear != ident or any(x != 0 for x in self.f_ext[0].translation):
            raise GroupValidationError("first representative must be the identity")
        if len(self._rep_index) != len(self.f_ext):
            raise GroupValidationError("duplicate matrix parts in representatives")
        for rep in self.f_ext:
            if rep.dimension != n:
                raise GroupValidationError("representative of wrong dimension")
            if not rep.linear.is_unimodular():
                raise GroupValidationError("matrix part is not unimodular")
            if any(not (0 <= x < 1) for x in rep.translation):
                raise GroupValidationError("translation not reduced into [0,1)")
        for gi in self.f_ext:
            for gj in self.f_ext:
                prod_linear = gi.linear @ gj.linear
                if prod_linear not in self._rep_index:
                    raise GroupValidationError("matrix parts are not closed under products")
                rep = self.f_ext[self._rep_index[prod_linear]]
                offset = vec_sub(
                    vec_add(gi.translation, gi.linear.apply(gj.translation)),
                    rep.translation,
                )
                if not is_integral(offset):
                    raise GroupValidationError(
                        "cocycle closure violated: products leave the stated group"
                    )
            inv_linear = gi.linear.int_inverse()
            if inv_linear not in self._rep_index:
                raise GroupValidationError("matrix parts are not closed under inverses")
        if self.normaliser_gens is not None:
            parts = set(self.matrix_parts)
            for d in self.normaliser_gens:
                if not d.is_unimodular() or d.nrows != n:
                    raise GroupValidationError("normaliser generator is not unimodular n x n")
                conj = {d @ a @ d.int_inverse() for a in parts}
                if conj != parts:
                    raise GroupValidationError(
                        f"supplied matrix does not normalise the holonomy group: {d}"
                    )

    def __repr__(self) -> str:
        tag = self.name or "?"
        return f"CrystGroup({tag}, dim={self.dimension}, |F|={self.order})"


def build_group(
    dimension: int,
    generators: Sequence[AffineMap],
    normaliser_gens: Optional[Sequence[IntMatrix]] = None,
    labels: Optional[Mapping[str, str]] = None,
    name: str = "",
    cap: int = DEFAULT_CLOSURE_CAP,
) -> CrystGroup:
    """Close affine generators over Z^n into a validated crystallographic group.

    The lattice Z^n is implicit; ``generators`` list the extra affine
    generators.  Matrix parts are closed breadth-first (capped), translations
    are reduced into [0,1)^n, and a conflict between two translations for the
    same matrix part means the generators do not define a group whose
    translation lattice is Z^n.
    """
    for g in generators:
        if g.dimension != dimension:
            raise GroupValidationError("generator dimension mismatch")
        if not g.linear.is_unimodular():
            raise GroupValidationError(f"generator matrix part is not unimodular: {g.linear}")

    ident = AffineMap.identity(dimension)
    reps: dict[IntMatrix, AffineMap] = {ident.linear: ident}

    def record(candidate: AffineMap) -> bool:
        """Insert a reduced element; returns True when its matrix part is new."""
        known = reps.get(candidate.linear)
        if known is None:
            if len(reps) >= cap:
                raise ClosureCapExceeded(
                    f"holonomy closure exceeded cap of {cap}: not a finite point group"
                )
            reps[candidate.linear] = candidate
            return True
        if known.translation != candidate.translation:
            raise GroupValidationError(
                "cocycle closure violated: two inequivalent translations share a "
                f"matrix part ({known.translation} vs {candidate.translation})"
            )
        return False

    # Positive products suffice (see matrix_group_closure); keeping the seeds
    # in the caller's order makes the representative order reproducible.
    seeds = [g.reduce_mod1() for g in generators]
    frontier = [ident]
    for s in seeds:
        if record(s):
            frontier.append(s)
    while frontier:
        next_frontier = []
        for cur in frontier:
            for s in seeds:
                prod = s.compose(cur).reduce_mod1()
                if record(prod):
                    next_frontier.append(prod)
        frontier = next_frontier

    group = CrystGroup(
        dimension,
        list(reps.values()),
        normaliser_gens=normaliser_gens,
        labels=labels,
        name=name,
    )
    group.validate()
    return group
