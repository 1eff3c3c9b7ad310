"""Field lattice of H/K as the order dual of Sub(G), and the Artin identification A -> G."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .group_core import (
    GroupElement,
    GroupError,
    PGroupType,
    Subgroup,
    hom_apply,
    intersect,
    is_subgroup,
    join,
    quotient_invariants,
    span,
)


@dataclass(frozen=True)
class ArtinIso:
    """Isomorphism A -> G given by the images of the basis of A (rows)."""

    source: PGroupType
    target: PGroupType
    images: tuple[GroupElement, ...]

    def __post_init__(self):
        if self.source != self.target:
            raise GroupError("Artin symbol needs A and G of the same type")
        if len(self.images) != self.source.rank:
            raise GroupError("one image per basis vector")
        for n, img in zip(self.source.moduli, self.images):
            if img.owner != self.target or n * img:
                raise GroupError(f"image {img} does not define a homomorphism")
        if span(self.images, self.target).order != self.target.order:
            raise GroupError("images do not generate G; not an isomorphism")

    @classmethod
    def identity(cls, A: PGroupType) -> ArtinIso:
        return cls(A, A, tuple(A.basis()))

    @classmethod
    def random(cls, A: PGroupType, rng: random.Random) -> ArtinIso:
        """Uniform-ish random automorphism by rejection sampling basis images."""
        elems = list(A.elements())
        while True:
            images = []
            for n in A.moduli:
                images.append(rng.choice([g for g in elems if not n * g]))
            if span(images, A).order == A.order:
                return cls(A, A, tuple(images))

    @property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(img.coords for img in self.images)

    @property
    def is_identity(self) -> bool:
        return list(self.images) == self.source.basis()

    def __call__(self, a: GroupElement) -> GroupElement:
        if a.owner != self.source:
            raise GroupError("element not in the source group")
        return hom_apply(self.images, a, self.target)

    def apply_subgroup(self, S: Subgroup) -> Subgroup:
        return span([self(g) for g in S.generators()], self.target)

    @cached_property
    def inverse(self) -> ArtinIso:
        back = {}
        for a in self.source.elements():
            back[self(a).coords] = a
        return ArtinIso(self.target, self.source, tuple(back[e.coords] for e in self.target.basis()))

    def compose(self, other: ArtinIso) -> ArtinIso:
        """self o other."""
        return ArtinIso(other.source, self.target, tuple(self(img) for img in other.images))


@dataclass(frozen=True)
class FieldNode:
    """The intermediate field L = H^U, stored as U = Gal(H/L)."""

    fixing: Subgroup

    @property
    def group(self) -> PGroupType:
        return self.fixing.owner

    @property
    def degree(self) -> int:
        return self.fixing.owner.order // self.fixing.order

    def galois_type(self) -> PGroupType:
        """Type of Gal(L/K) = G/U."""
        return quotient_invariants(self.fixing)

    @property
    def is_cyclic(self) -> bool:
        return self.galois_type().rank <= 1

    def __le__(self, other: FieldNode) -> bool:
        """Subfield inclusion L <= L', i.e. U(L) contains U(L')."""
        return is_subgroup(other.fixing, self.fixing)

    def __ge__(self, other: FieldNode) -> bool:
        return other <= self

    def __lt__(self, other: FieldNode) -> bool:
        return self <= other and self != other

    def __repr__(self) -> str:
        gens = ",".join(map(repr, self.fixing.generators()))
        return f"Field(deg {self.degree}, fix <{gens}>)"


def fixed_field(U: Subgroup) -> FieldNode:
    return FieldNode(U)


def fixing_group(L: FieldNode) -> Subgroup:
    return L.fixing


def base_field(G: PGroupType) -> FieldNode:
    return FieldNode(G.whole())


def top_field(G: PGroupType) -> FieldNode:
    return FieldNode(G.trivial())


def field_meet(L1: FieldNode, L2: FieldNode) -> FieldNode:
    """L1 intersected with L2."""
    return FieldNode(join(L1.fixing, L2.fixing))


def field_join(L1: FieldNode, L2: FieldNode) -> FieldNode:
    """Compositum L1 * L2."""
    return FieldNode(intersect(L1.fixing, L2.fixing))


def compositum(fields: Sequence[FieldNode], G: PGroupType) -> FieldNode:
    out = base_field(G)
    for L in fields:
        out = field_join(out, L)
    return out


def restriction_order(g: GroupElement, L: FieldNode) -> int:
    """Order of g|_L, the image of g in G/Gal(H/L)."""
    U = L.fixing
    if g.owner != U.owner:
        raise GroupError("element not in G")
    q = 1
    while not (q * g) in U:
        q *= g.owner.p
    return q


def generates(g: GroupElement, L: FieldNode) -> bool:
    """g|_L generates Gal(L/K)."""
    return L.is_cyclic and restriction_order(g, L) == L.degree


def cyclic_subfield(L: FieldNode, generator: GroupElement, degree: int) -> FieldNode:
    """Unique subfield of the cyclic L/K of the given degree.

    ``generator`` must restrict to a generator of Gal(L/K); the fixing group
    is Gal(H/L) + <degree * generator>.
    """
    if L.degree % degree:
        raise GroupError(f"{degree} does not divide [L:K] = {L.degree}")
    return FieldNode(join(L.fixing, span([degree * generator])))


def splits_off(g: GroupElement) -> FieldNode:
    """H^<g>."""
    return FieldNode(span([g]))



@dataclass
class DualitySweep:
    """Outcome of the exhaustive Galois-correspondence sweep for one G."""

    group: PGroupType
    subgroups: int = 0
    roundtrip_failures: int = 0
    degree_failures: int = 0
    closure_failures: int = 0
    duplicate_fields: int = 0
    pairs_checked: int = 0
    pairs_exhaustive: bool = True
    order_failures: int = 0
    first_failure: str | None = None

    @property
    def ok(self) -> bool:
        return not (
            self.roundtrip_failures
            or self.degree_failures
            or self.closure_failures
            or self.duplicate_fields
            or self.order_failures
        )

    def _fail(self, what: str):
        if self.first_failure is None:
            self.first_failure = what


def duality_sweep(G: PGroupType, all_pairs_limit: int = 150, sample: int = 100, seed: int = 0) -> DualitySweep:
    """fixed_field / fixing_group over every subgroup of G.

    Every subgroup: both round trips, ``[L:K] * |U| = |G|`` against a closure
    count of U, and injectivity of U -> H^U through element-set fingerprints.
    Order reversal is checked on all pairs when Sub(G) has at most
    ``all_pairs_limit`` members, otherwise on a seeded sample plus a forced
    inclusion partner for each sampled subgroup.
    """
    import numpy as np

    from . import _kernels
    from .group_core import count_subgroups, iter_subgroup_blocks

    rng = random.Random(seed)
    out = DualitySweep(G)
    n = G.order
    total = count_subgroups(G)
    exhaustive = total <= all_pairs_limit
    picks = set(range(total)) if exhaustive else set(rng.sample(range(total), sample))
    keys = np.random.default_rng(seed).integers(0, 2**63, size=n, dtype=np.int64).astype(np.uint64)
    moduli = np.array(G.moduli, dtype=np.int64)
    strides = np.array(G._strides, dtype=np.int64)
    coords = np.array([g.coords for g in G.elements()], dtype=np.int64).reshape(n, G.rank)
    addt = np.zeros((n, n), dtype=np.int64)
    for c in range(G.rank):
        addt += ((coords[:, None, c] + coords[None, :, c]) % G.moduli[c]) * strides[c]
    prints = []
    pool: list[Subgroup] = []
    seen = 0
    for blk, subs in iter_subgroup_blocks(G):
        m = len(subs)
        sizes = np.empty(m, dtype=np.int64)
        fps = np.empty(m, dtype=np.uint64)
        closed = np.empty(m, dtype=np.bool_)
        if G.rank:
            _kernels.subgroup_fingerprints(blk, m, moduli, strides, addt, keys, sizes, fps, closed)
        else:
            sizes[:], fps[:], closed[:] = 1, keys[0], True
        prints.append(fps)
        bad = int(m - closed.sum())
        if bad:
            out.closure_failures += bad
            out._fail(f"not closed: {subs[int(np.argmin(closed))]}")
        # [L:K] = |G| / |U| with |U| from the HNF diagonal, against the closure count
        index = np.prod(np.diagonal(blk, axis1=1, axis2=2), axis=1) if G.rank else np.ones(m, dtype=np.int64)
        for i in np.flatnonzero(index * sizes != n).tolist():
            out.degree_failures += 1
            out._fail(f"degree at {subs[i]}")
        for U in subs:
            L = fixed_field(U)
            V = fixing_group(L)
            if V != U or fixed_field(V) != L:
                out.roundtrip_failures += 1
                out._fail(f"round trip at {U}")
            if seen in picks:
                pool.append(U)
            seen += 1
    out.subgroups = seen
    if seen != total:
        out.roundtrip_failures += 1
        out._fail("enumeration count changed between passes")
    allp = np.concatenate(prints)
    out.duplicate_fields = int(len(allp) - len(np.unique(allp)))
    if out.duplicate_fields:
        out._fail("two subgroups share an element set")

    pairs = [(U, V) for U in pool for V in pool]
    if not exhaustive:
        out.pairs_exhaustive = False
        for U in pool:
            g = G.elem(*(rng.randrange(q) for q in G.moduli))
            W = join(U, span([g], G))
            pairs += [(U, W), (W, U), (intersect(U, pool[0]), U)]
    masks = {}
    for U, V in pairs:
        for S in (U, V):
            if S not in masks:
                masks[S] = S.mask
                if fixed_field(S).degree * bin(masks[S]).count("1") != n:
                    out.degree_failures += 1
                    out._fail(f"degree at {S}")
        contained = masks[U] & ~masks[V] == 0
        if contained != (fixed_field(U) >= fixed_field(V)):
            out.order_failures += 1
            out._fail(f"order reversal at {U} <= {V}")
        out.pairs_checked += 1
    return out
