"""The capitulation map psi: Sub(A) -> Sub(H/K) and its building blocks.

For a maximal-order class ``a`` the splitting field is ``L'_a = H^<phi(a)>``
and the canonical field is ``L_a = H^{phi(c(a))}`` where ``c(a)`` is a direct
complement of ``<a>``.  The complement is produced by an explicit
``ComplementStrategy``; nothing here assumes the construction is choice-free,
the audits measure that.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

from .galois_model import (
    ArtinIso,
    FieldNode,
    base_field,
    compositum,
    cyclic_subfield,
    field_meet,
    fixed_field,
    generates,
    splits_off,
)
from .group_core import (
    DEFAULT_ENUM_BOUND,
    GroupElement,
    GroupError,
    PGroupType,
    Subgroup,
    elem_order,
    enumerate_subgroups,
    hom_kernel,
    intersect,
    is_complement,
    member,
    p_height,
    span,
)
from .pairing import KummerPairing


class ComplementStrategy(str, Enum):
    ADAPTED = "adapted-basis"
    PAIRING = "pairing-annihilator"

    def __str__(self) -> str:
        return self.value


STRATEGIES = (ComplementStrategy.ADAPTED, ComplementStrategy.PAIRING)


class PsiError(Exception):
    """A construction is not defined on this input.  Audits record these as findings."""


class NoComplementError(PsiError):
    pass


class PairingComplementError(PsiError):
    pass


class PsiUndefinedError(PsiError):
    pass


class NotBijectiveError(PsiError):
    def __init__(self, field: FieldNode, preimages: list[Subgroup]):
        self.field = field
        self.preimages = preimages
        super().__init__(f"not bijective at {field}: {len(preimages)} preimages")


def find_complement(S: Subgroup, subgroups: list[Subgroup] | None = None) -> Subgroup | None:
    """Exhaustive search for any direct complement of S (first in canonical order)."""
    A = S.owner
    if subgroups is None:
        subgroups = enumerate_subgroups(A, bound=max(A.order, DEFAULT_ENUM_BOUND))
    want = A.order // S.order
    for C in subgroups:
        if C.order == want and intersect(S, C).order == 1:
            return C
    return None


def coordinate_kernel(A: PGroupType, i: int) -> Subgroup:
    """{x : x_i = 0}, as the kernel of the i-th coordinate projection."""
    T = PGroupType(A.p, (A.exponents[i],))
    images = [T.elem(1 if j == i else 0) for j in range(A.rank)]
    return hom_kernel(A, T, images)


def adapted_projection_kernel(a: GroupElement) -> Subgroup:
    """Kernel of x -> (x_i * a_i^{-1} mod p^{e_i}) * a for the adapted index i."""
    A = a.owner
    i = adapted_index(a, A.whole())
    inv = pow(a.coords[i], -1, A.moduli[i])
    images = [(inv if j == i else 0) * a for j in range(A.rank)]
    return hom_kernel(A, A, images)


def adapted_index(a: GroupElement, S: Subgroup) -> int:
    """Smallest coordinate whose order equals ord(a) = exponent(S)."""
    o = elem_order(a)
    for i, (x, n) in enumerate(zip(a.coords, a.owner.moduli)):
        if x and n // math.gcd(x, n) == o:
            return i
    raise NoComplementError(f"{a} has no coordinate of order {o}")


@dataclass(frozen=True)
class CyclicPsi:
    """psi(<x>) together with the independence audit over all admissible a."""

    x: GroupElement
    chosen: GroupElement
    field: FieldNode
    candidates: tuple[GroupElement, ...]
    candidate_fields: tuple[FieldNode, ...]
    meet: FieldNode

    @property
    def agree(self) -> bool:
        return all(L == self.field for L in self.candidate_fields)


@dataclass(frozen=True)
class PsiResult:
    subgroup: Subgroup
    field: FieldNode
    strategy: ComplementStrategy
    degree_ok: bool
    generation_ok: bool | None
    independence_ok: bool


@dataclass(frozen=True)
class MaxFlags:
    degree_ok: bool
    generation_ok: bool
    disjoint_ok: bool

    @property
    def ok(self) -> bool:
        return self.degree_ok and self.generation_ok and self.disjoint_ok


@dataclass(frozen=True)
class Hilbert94Witness:
    element: GroupElement
    maximal_cyclic: bool
    generates: bool

    @property
    def ok(self) -> bool:
        return self.generates or not self.maximal_cyclic


class PsiMap:
    """psi for one group A, one Artin identification and one complement strategy.

    Results are cached per instance; every method is deterministic.
    """

    def __init__(
        self,
        A: PGroupType,
        strategy: ComplementStrategy | str = ComplementStrategy.ADAPTED,
        phi: ArtinIso | None = None,
        pairing: KummerPairing | None = None,
        bound: int = DEFAULT_ENUM_BOUND,
    ):
        self.A = A
        self.strategy = ComplementStrategy(strategy)
        self.phi = phi if phi is not None else ArtinIso.identity(A)
        if self.phi.source != A:
            raise GroupError("Artin symbol has the wrong source")
        self.G = self.phi.target
        if pairing is None and self.strategy is ComplementStrategy.PAIRING:
            pairing = KummerPairing.standard(self.G)
        self.pairing = pairing
        self.bound = bound
        self._complements: dict[tuple, Subgroup | PsiError] = {}
        self._cyclic: dict[tuple, CyclicPsi | PsiError] = {}
        self._subgroup: dict[Subgroup, PsiResult | PsiError] = {}

    def __repr__(self) -> str:
        return f"PsiMap({self.A}, {self.strategy.value})"

    # -- maximal elements -------------------------------------------------

    def _require_member(self, a: GroupElement):
        if a.owner != self.A:
            raise GroupError(f"{a} is not an element of {self.A}")

    def is_maximal(self, a: GroupElement) -> bool:
        return elem_order(a) == self.A.exponent and self.A.rank > 0

    def maximal_elements(self) -> list[GroupElement]:
        return [a for a in self.A.elements() if self.is_maximal(a)]

    def splitting_field(self, a: GroupElement) -> FieldNode:
        """L'_a = H^<phi(a)>, of degree |A| / ord(a)."""
        self._require_member(a)
        if not a:
            raise GroupError("splitting field of the zero class is H itself; rejected")
        return splits_off(self.phi(a))

    def complement_in(self, S: Subgroup, a: GroupElement) -> Subgroup:
        """Complement of <a> inside S, for a of order exponent(S)."""
        self._require_member(a)
        if not member(a, S) or not a:
            raise GroupError(f"{a} is not a nonzero element of {S}")
        if elem_order(a) != S.exponent:
            raise NoComplementError(
                f"no guaranteed complement: ord({a}) = {elem_order(a)} < exponent {S.exponent}"
            )
        cyc = span([a])
        if self.strategy is ComplementStrategy.ADAPTED:
            i = adapted_index(a, S)
            C = intersect(S, coordinate_kernel(self.A, i))
            if intersect(cyc, C).order != 1 or cyc.order * C.order != S.order:
                raise NoComplementError(f"coordinate kernel {i} does not complement <{a}>")
            return C
        # B is identified with G through the shared coordinates, then pulled back by phi
        ann = self.pairing.annihilator(span([self.phi(a)]), "right")
        back = self.phi.inverse
        C = intersect(S, span([back(self.G.elem(*b.coords)) for b in ann.generators()], self.A))
        if intersect(cyc, C).order != 1 or cyc.order * C.order != S.order:
            raise PairingComplementError(f"annihilator of {a} is not a complement of <{a}>")
        return C

    def canonical_complement(self, a: GroupElement) -> Subgroup:
        key = a.coords
        hit = self._complements.get(key)
        if hit is None:
            try:
                self._require_member(a)
                if not self.is_maximal(a):
                    raise NoComplementError(
                        f"no guaranteed complement: ord({a}) = {elem_order(a)} < exponent {self.A.exponent}"
                    )
                hit = self.complement_in(self.A.whole(), a)
            except PsiError as exc:
                hit = exc
            self._complements[key] = hit
        if isinstance(hit, PsiError):
            raise hit
        return hit

    def psi_max(self, a: GroupElement) -> FieldNode:
        """L_a = H^{phi(c(a))}."""
        return fixed_field(self.phi.apply_subgroup(self.canonical_complement(a)))

    def psi_max_flags(self, a: GroupElement) -> MaxFlags:
        L = self.psi_max(a)
        Lp = self.splitting_field(a)
        U, Up = L.fixing, Lp.fixing
        return MaxFlags(
            degree_ok=L.degree == elem_order(a),
            generation_ok=generates(self.phi(a), L),
            disjoint_ok=is_complement(U, Up),
        )

    # -- cyclic subgroups ---------------------------------------------------

    def candidates(self, x: GroupElement) -> list[GroupElement]:
        """Maximal-order a with p^h * a = x, in lexicographic order."""
        self._require_member(x)
        A = self.A
        o = elem_order(x)
        q = A.exponent // o
        per_coord = []
        for xi, n in zip(x.coords, A.moduli):
            per_coord.append(_solve_scaled(q, xi, n))
        out = []
        for coords in itertools.product(*per_coord):
            a = GroupElement(A, coords, _reduced=True)
            if self.is_maximal(a):
                out.append(a)
        return out

    def cyclic_audit(self, x: GroupElement) -> CyclicPsi:
        key = x.coords
        hit = self._cyclic.get(key)
        if hit is None:
            try:
                hit = self._cyclic_audit(x)
            except PsiError as exc:
                hit = exc
            self._cyclic[key] = hit
        if isinstance(hit, PsiError):
            raise hit
        return hit

    def _cyclic_audit(self, x: GroupElement) -> CyclicPsi:
        if not x:
            raise GroupError("psi of the zero class is K; use psi_subgroup")
        cands = self.candidates(x)
        if not cands:
            raise PsiUndefinedError(
                f"no maximal-order class above {x} (height {p_height(x)}, order {elem_order(x)})"
            )
        o = elem_order(x)
        fields = []
        for a in cands:
            fields.append(cyclic_subfield(self.psi_max(a), self.phi(a), o))
        meet = fields[0]
        for L in fields[1:]:
            meet = field_meet(meet, L)
        return CyclicPsi(x, cands[0], fields[0], tuple(cands), tuple(fields), meet)

    def psi_cyclic(self, x: GroupElement) -> FieldNode:
        return self.cyclic_audit(x).field

    # -- arbitrary subgroups -------------------------------------------------

    def cyclic_transversal(self, S: Subgroup) -> list[GroupElement]:
        """Lexicographically least generator of every nonzero cyclic subgroup of S."""
        seen = set()
        out = []
        for g in sorted(S.elements(), key=lambda e: e.coords):
            if not g or g.coords in seen:
                continue
            o = elem_order(g)
            out.append(g)
            for u in range(1, o):
                if u % self.A.p:
                    seen.add((u * g).coords)
        return out

    def psi_subgroup(self, S: Subgroup) -> PsiResult:
        hit = self._subgroup.get(S)
        if hit is None:
            try:
                hit = self._psi_subgroup(S)
            except PsiError as exc:
                hit = exc
            self._subgroup[S] = hit
        if isinstance(hit, PsiError):
            raise hit
        return hit

    def _psi_subgroup(self, S: Subgroup) -> PsiResult:
        if S.owner != self.A:
            raise GroupError("subgroup of the wrong group")
        if S.order == 1:
            return PsiResult(S, base_field(self.G), self.strategy, True, True, True)
        audits = [self.cyclic_audit(x) for x in self.cyclic_transversal(S)]
        L = compositum([c.field for c in audits], self.G)
        gen_ok = None
        if S.is_cyclic:
            # Gal(psi(<x>)/K) should be generated by phi of the maximal class chosen above x
            top = max(audits, key=lambda c: elem_order(c.x))
            gen_ok = generates(self.phi(top.chosen), L)
        return PsiResult(
            subgroup=S,
            field=L,
            strategy=self.strategy,
            degree_ok=L.degree == S.order,
            generation_ok=gen_ok,
            independence_ok=all(c.agree for c in audits),
        )

    def psi_subgroup_elementwise(self, S: Subgroup) -> FieldNode:
        """Oracle: compositum of psi(<x>) over every nonzero x in S."""
        return compositum([self.psi_cyclic(x) for x in S.elements() if x], self.G)

    @cached_property
    def subgroups(self) -> list[Subgroup]:
        return enumerate_subgroups(self.A, self.bound)

    @cached_property
    def forward_table(self) -> dict[Subgroup, FieldNode | PsiError]:
        table = {}
        for S in self.subgroups:
            try:
                table[S] = self.psi_subgroup(S).field
            except PsiError as exc:
                table[S] = exc
        return table

    @cached_property
    def _preimages(self) -> dict[FieldNode, list[Subgroup]]:
        pre: dict[FieldNode, list[Subgroup]] = {}
        for S, L in self.forward_table.items():
            if isinstance(L, FieldNode):
                pre.setdefault(L, []).append(S)
        return pre

    def preimages(self, L: FieldNode) -> list[Subgroup]:
        return list(self._preimages.get(L, []))

    def psi_inverse(self, L: FieldNode) -> Subgroup:
        pre = self.preimages(L)
        if len(pre) != 1:
            raise NotBijectiveError(L, pre)
        return pre[0]

    def capitulates_canonically(self, x: GroupElement, L: FieldNode) -> bool:
        self._require_member(x)
        if not x:
            return True
        return member(x, self.psi_inverse(L))

    @cached_property
    def _g_subgroups(self) -> list[Subgroup]:
        return enumerate_subgroups(self.G, self.bound)

    def is_maximal_cyclic(self, L: FieldNode) -> bool:
        """No cyclic subfield of H strictly contains L."""
        U = L.fixing
        for V in self._g_subgroups:
            if V.order < U.order and V <= U and fixed_field(V).is_cyclic:
                return False
        return True

    def hilbert94_witness(self, L: FieldNode) -> Hilbert94Witness:
        if L.group != self.G:
            raise GroupError("field of a different extension")
        if L.degree == 1 or not L.is_cyclic:
            raise GroupError("Hilbert 94 witness needs a cyclic L != K")
        Ap = self.psi_inverse(L)
        gens = [a for a in sorted(Ap.elements(), key=lambda e: e.coords) if elem_order(a) == L.degree]
        if not gens:
            raise PsiError(f"psi^-1(L) = {Ap} has no class of order [L:K] = {L.degree}")
        a = gens[0]
        return Hilbert94Witness(a, self.is_maximal_cyclic(L), generates(self.phi(a), L))


def _solve_scaled(q: int, x: int, n: int) -> list[int]:
    """All y mod n with q*y = x mod n."""
    g = math.gcd(q, n)
    if x % g:
        return []
    step = n // g
    y0 = (x // g) * pow(q // g, -1, step) % step if step > 1 else 0
    return [y0 + t * step for t in range(g)]


# module-level conveniences -------------------------------------------------


def _map(A, strategy, phi=None, pairing=None) -> PsiMap:
    return PsiMap(A, strategy, phi=phi, pairing=pairing)


def splitting_field(a: GroupElement, phi: ArtinIso | None = None) -> FieldNode:
    return _map(a.owner, ComplementStrategy.ADAPTED, phi).splitting_field(a)


def canonical_complement(
    a: GroupElement,
    strategy: ComplementStrategy | str = ComplementStrategy.ADAPTED,
    pairing: KummerPairing | None = None,
) -> Subgroup:
    return _map(a.owner, strategy, pairing=pairing).canonical_complement(a)


def psi_max(a: GroupElement, strategy=ComplementStrategy.ADAPTED) -> FieldNode:
    return _map(a.owner, strategy).psi_max(a)


def psi_cyclic(x: GroupElement, strategy=ComplementStrategy.ADAPTED) -> FieldNode:
    return _map(x.owner, strategy).psi_cyclic(x)


def psi_subgroup(S: Subgroup, strategy=ComplementStrategy.ADAPTED) -> PsiResult:
    return _map(S.owner, strategy).psi_subgroup(S)
