"""Kummer pairing between G = Gal(H/K) and the radical B_c.

Values are written additively as the exponent of a fixed primitive p^m-th root
of unity, so ``<g, b> = 1`` in the multiplicative notation reads as
``pair(g, b) == 0`` here, and zeta_r corresponds to the residue p^m / r.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Literal

from .group_core import GroupElement, GroupError, PGroupType, Subgroup, hom_kernel


@dataclass(frozen=True)
class RadicalGroup:
    type: PGroupType
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"b{i + 1}" for i in range(self.type.rank)))
        if len(self.labels) != self.type.rank:
            raise GroupError("one label per basis element")


@dataclass(frozen=True)
class KummerPairing:
    G: PGroupType
    radical: RadicalGroup
    matrix: tuple[tuple[int, ...], ...]
    strict: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        G, B = self.G, self.radical.type
        if G != B:
            raise GroupError("perfect duality needs G and B of the same type")
        object.__setattr__(self, "matrix", tuple(tuple(x % self.modulus for x in row) for row in self.matrix))
        if len(self.matrix) != G.rank or any(len(r) != B.rank for r in self.matrix):
            raise GroupError("pairing matrix has the wrong shape")
        for i, ni in enumerate(G.moduli):
            for j, nj in enumerate(B.moduli):
                if (ni * self.matrix[i][j]) % self.modulus or (nj * self.matrix[i][j]) % self.modulus:
                    raise GroupError(f"matrix entry ({i},{j}) is not well defined")
        if self.strict and not self.perfect:
            raise GroupError("pairing is degenerate")

    @property
    def modulus(self) -> int:
        return self.G.exponent

    @property
    def B(self) -> PGroupType:
        return self.radical.type

    @classmethod
    def standard(cls, G: PGroupType) -> KummerPairing:
        """<e_i, b_j> = delta_ij * p^(m - e_i)."""
        m = G.m
        mat = tuple(
            tuple(G.p ** (m - e) if i == j else 0 for j in range(G.rank)) for i, e in enumerate(G.exponents)
        )
        return cls(G, RadicalGroup(G), mat)

    @classmethod
    def random_perfect(cls, G: PGroupType, rng: random.Random) -> KummerPairing:
        p, m = G.p, G.m
        while True:
            mat = []
            for ei in G.exponents:
                row = []
                for ej in G.exponents:
                    e = min(ei, ej)
                    row.append(p ** (m - e) * rng.randrange(p**e))
                mat.append(tuple(row))
            P = cls(G, RadicalGroup(G), tuple(mat), strict=False)
            if P.perfect:
                return cls(G, RadicalGroup(G), tuple(mat))

    @cached_property
    def _value_group(self) -> PGroupType:
        return PGroupType(self.G.p, (self.G.m,))

    def pair(self, g: GroupElement, b: GroupElement) -> int:
        if g.owner != self.G or b.owner != self.B:
            raise GroupError("elements do not belong to the paired groups")
        s = 0
        for i, x in enumerate(g.coords):
            if x:
                row = self.matrix[i]
                for j, y in enumerate(b.coords):
                    s += x * row[j] * y
        return s % self.modulus

    def _kernel(self, side: str, against: list[GroupElement]) -> Subgroup:
        """{x on ``side`` : pair against every element of ``against`` vanishes}."""
        k = len(against)
        T = PGroupType(self.G.p, (self.G.m,) * k)
        src = self.G if side == "left" else self.B
        images = []
        for i in range(src.rank):
            vals = []
            for u in against:
                if side == "left":
                    vals.append(sum(self.matrix[i][j] * y for j, y in enumerate(u.coords)))
                else:
                    vals.append(sum(x * self.matrix[r][i] for r, x in enumerate(u.coords)))
            images.append(T.elem(*vals))
        return hom_kernel(src, T, images)

    @cached_property
    def left_kernel(self) -> Subgroup:
        return self._kernel("left", self.B.basis())

    @cached_property
    def right_kernel(self) -> Subgroup:
        return self._kernel("right", self.G.basis())

    @cached_property
    def perfect(self) -> bool:
        return self.left_kernel.order == 1 and self.right_kernel.order == 1

    def annihilator(self, S: Subgroup, side: Literal["left", "right"] = "right") -> Subgroup:
        """right: {b in B : <u, b> = 0 for u in S <= G}; left: {g in G : <g, s> = 0 for s in S <= B}."""
        if not self.perfect:
            raise GroupError("annihilators need a perfect pairing")
        if side == "right":
            if S.owner != self.G:
                raise GroupError("right annihilator takes a subgroup of G")
        elif side == "left":
            if S.owner != self.B:
                raise GroupError("left annihilator takes a subgroup of B")
        else:
            raise ValueError(f"side must be 'left' or 'right', not {side!r}")
        return self._kernel(side, S.generators())


def pair(P: KummerPairing, g: GroupElement, b: GroupElement) -> int:
    return P.pair(g, b)


def is_perfect(P: KummerPairing) -> bool:
    return P.perfect


def annihilator(P: KummerPairing, S: Subgroup, side: Literal["left", "right"] = "right") -> Subgroup:
    return P.annihilator(S, side)
