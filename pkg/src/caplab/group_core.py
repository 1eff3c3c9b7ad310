"""Finite abelian p-groups in invariant-factor coordinates.

A group of type ``p:e1,...,ek`` is ``Z/p^e1 x ... x Z/p^ek`` with
``e1 >= ... >= ek >= 1``.  A subgroup ``S`` is stored through the integer
lattice ``L = {x in Z^k : x mod (p^e1,...,p^ek) in S}``, which always contains
``D = diag(p^e1, ..., p^ek)``.  The Hermite normal form of ``L`` (upper
triangular, positive p-power pivots, entries above a pivot reduced into
``[0, pivot)``) is unique, so two subgroups are equal iff their stored forms
are identical.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

DEFAULT_ENUM_BOUND = 3**6

HEIGHT_INFINITE = math.inf


class memo:
    """Lock-free cached property for immutable values (stores into the instance dict)."""

    def __init__(self, fn):
        self.fn = fn
        self.name = fn.__name__
        self.__doc__ = fn.__doc__

    def __set_name__(self, owner, name):
        self.name = name

    def __get__(self, obj, cls=None):
        if obj is None:
            return self
        val = obj.__dict__[self.name] = self.fn(obj)
        return val


class GroupError(ValueError):
    """Raised on malformed group data or mismatched owners."""


class EnumerationBoundError(GroupError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def p_valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


# ---------------------------------------------------------------------------
# integer lattice helpers


def echelon(rows: Iterable[Sequence[int]], ncols: int) -> list[list[int]]:
    """Row Hermite normal form over Z (zero rows dropped)."""
    rows = [list(r) for r in rows if any(r)]
    out: list[list[int]] = []
    pivots: list[int] = []
    for j in range(ncols):
        pivot = None
        rest = []
        for r in rows:
            if r[j] == 0:
                rest.append(r)
            elif pivot is None:
                pivot = r
            else:
                g, s, t = xgcd(pivot[j], r[j])
                u, w = pivot[j] // g, r[j] // g
                new_pivot = [s * x + t * y for x, y in zip(pivot, r)]
                new_r = [w * x - u * y for x, y in zip(pivot, r)]
                pivot = new_pivot
                if any(new_r):
                    rest.append(new_r)
        rows = rest
        if pivot is None:
            continue
        if pivot[j] < 0:
            pivot = [-x for x in pivot]
        out.append(pivot)
        pivots.append(j)
    for i, j in enumerate(pivots):
        h = out[i][j]
        for r in out[:i]:
            q = r[j] // h
            if q:
                for c in range(j, ncols):
                    r[c] -= q * out[i][c]
    return out


def _canonical_hnf(gens: Iterable[Sequence[int]], moduli: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """HNF of the lattice spanned by ``gens`` and ``diag(moduli)``.

    Columns right of the current pivot are reduced modulo their own modulus
    while eliminating, which keeps every entry bounded.
    """
    k = len(moduli)
    rows = [[x % m for x, m in zip(g, moduli)] for g in gens]
    rows = [r for r in rows if any(r)]
    hnf: list[list[int]] = []
    for j in range(k):
        pivot = None
        rest = []
        # diag(moduli) is injected one column at a time so that reducing
        # later columns modulo their modulus never discards it
        for r in rows + [[moduli[j] if c == j else 0 for c in range(k)]]:
            if r[j] == 0:
                rest.append(r)
            elif pivot is None:
                pivot = r
            else:
                g, s, t = xgcd(pivot[j], r[j])
                u, w = pivot[j] // g, r[j] // g
                pivot, r = (
                    [s * x + t * y for x, y in zip(pivot, r)],
                    [w * x - u * y for x, y in zip(pivot, r)],
                )
                if any(r):
                    rest.append(r)
        if pivot[j] < 0:
            pivot = [-x for x in pivot]
        for r in [pivot] + rest:
            for c in range(j + 1, k):
                r[c] %= moduli[c]
        hnf.append(pivot)
        rows = [r for r in rest if any(r)]
    for c in range(k):
        h = hnf[c][c]
        for i in range(c):
            q = hnf[i][c] // h
            if q:
                for cc in range(c, k):
                    hnf[i][cc] -= q * hnf[c][cc]
    return tuple(tuple(r) for r in hnf)


def _reduce(vec: Sequence[int], hnf: Sequence[Sequence[int]]) -> list[int] | None:
    """Coefficients of ``vec`` in the HNF basis, or None if not in the lattice."""
    v = list(vec)
    coeffs = []
    for j, row in enumerate(hnf):
        h = row[j]
        q, r = divmod(v[j], h)
        if r:
            return None
        coeffs.append(q)
        if q:
            for c in range(j, len(v)):
                v[c] -= q * row[c]
    return coeffs


def smith_diagonal(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith normal form (absolute values, zeros kept)."""
    a = [list(r) for r in matrix]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    diag = []
    t = 0
    while t < min(nr, nc):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        a[t], a[i] = a[i], a[t]
        for r in a:
            r[t], r[j] = r[j], r[t]
        while True:
            piv = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                q = a[i][t] // piv
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, nc):
                q = a[t][j] // piv
                if q:
                    for r in a:
                        r[j] -= q * r[t]
                if a[t][j]:
                    dirty = True
            if not dirty:
                bad = [(i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % piv]
                if not bad:
                    break
                i, _ = bad[0]
                a[t] = [x + y for x, y in zip(a[t], a[i])]
                continue
            nonzero = [(abs(a[i][t]), i, t) for i in range(t, nr) if a[i][t]]
            nonzero += [(abs(a[t][j]), t, j) for j in range(t, nc) if a[t][j]]
            _, i, j = min(nonzero)
            a[t], a[i] = a[i], a[t]
            for r in a:
                r[t], r[j] = r[j], r[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag + [0] * (min(nr, nc) - len(diag))


def _type_from_diagonal(p: int, diag: Iterable[int]) -> PGroupType:
    exps = sorted((p_valuation(d, p) for d in diag if d > 1), reverse=True)
    return PGroupType(p, tuple(exps))


# ---------------------------------------------------------------------------
# groups and elements


@dataclass(frozen=True)
class PGroupType:
    p: int
    exponents: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        if not is_prime(self.p):
            raise GroupError(f"{self.p} is not prime")
        if any(e < 1 for e in self.exponents):
            raise GroupError(f"exponents must be >= 1: {self.exponents}")
        if any(a < b for a, b in zip(self.exponents, self.exponents[1:])):
            raise GroupError(f"exponents must be non-increasing: {self.exponents}")

    @classmethod
    def parse(cls, text: str) -> PGroupType:
        """Parse the catalog form ``p:e1,e2,...`` (``3:`` is the trivial 3-group)."""
        try:
            p_txt, _, e_txt = text.strip().partition(":")
            exps = tuple(int(e) for e in e_txt.split(",") if e.strip())
            return cls(int(p_txt), exps)
        except GroupError:
            raise
        except ValueError as exc:
            raise GroupError(f"bad group spec {text!r}") from exc

    def __str__(self) -> str:
        return f"{self.p}:{','.join(map(str, self.exponents))}"

    def pretty(self) -> str:
        if not self.exponents:
            return "1"
        return " x ".join(f"Z/{self.p ** e}" for e in self.exponents)

    @memo
    def moduli(self) -> tuple[int, ...]:
        return tuple(self.p**e for e in self.exponents)

    @property
    def rank(self) -> int:
        return len(self.exponents)

    @memo
    def order(self) -> int:
        return self.p ** sum(self.exponents)

    @property
    def m(self) -> int:
        return self.exponents[0] if self.exponents else 0

    @property
    def exponent(self) -> int:
        return self.p**self.m

    @memo
    def _strides(self) -> tuple[int, ...]:
        strides = []
        s = 1
        for n in reversed(self.moduli):
            strides.append(s)
            s *= n
        return tuple(reversed(strides))

    def elem(self, *coords: int) -> GroupElement:
        if len(coords) == 1 and not isinstance(coords[0], int):
            coords = tuple(coords[0])
        return GroupElement(self, tuple(coords))

    def zero(self) -> GroupElement:
        return GroupElement(self, (0,) * self.rank)

    def basis(self) -> list[GroupElement]:
        return [self.elem(*(1 if i == j else 0 for j in range(self.rank))) for i in range(self.rank)]

    def elements(self) -> Iterator[GroupElement]:
        """All elements in lexicographic coordinate order."""
        for c in itertools.product(*(range(n) for n in self.moduli)):
            yield GroupElement(self, c, _reduced=True)

    def index_of(self, g: GroupElement) -> int:
        return sum(x * s for x, s in zip(g.coords, self._strides))

    def whole(self) -> Subgroup:
        return Subgroup(self, tuple(tuple(1 if i == j else 0 for j in range(self.rank)) for i in range(self.rank)))

    def trivial(self) -> Subgroup:
        return Subgroup(self, tuple(tuple(n if i == j else 0 for j, n in enumerate(self.moduli)) for i in range(self.rank)))


@dataclass(frozen=True, order=False)
class GroupElement:
    owner: PGroupType
    coords: tuple[int, ...]
    _reduced: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        if self._reduced:
            return
        if len(self.coords) != self.owner.rank:
            raise GroupError(f"expected {self.owner.rank} coordinates, got {self.coords}")
        object.__setattr__(self, "coords", tuple(int(x) % n for x, n in zip(self.coords, self.owner.moduli)))

    def _check(self, other: GroupElement):
        if other.owner != self.owner:
            raise GroupError("elements of different groups")

    def __add__(self, other: GroupElement) -> GroupElement:
        self._check(other)
        return GroupElement(self.owner, tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: GroupElement) -> GroupElement:
        self._check(other)
        return GroupElement(self.owner, tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> GroupElement:
        return GroupElement(self.owner, tuple(-x for x in self.coords))

    def __rmul__(self, n: int) -> GroupElement:
        return GroupElement(self.owner, tuple(n * x for x in self.coords))

    __mul__ = __rmul__

    def __lt__(self, other: GroupElement) -> bool:
        return self.coords < other.coords

    def __bool__(self) -> bool:
        return any(self.coords)

    def __repr__(self) -> str:
        return f"({','.join(map(str, self.coords))})"

    @property
    def order(self) -> int:
        return elem_order(self)


def elem_order(g: GroupElement) -> int:
    """Least q with q*g = 0: the lcm (here: max) of the coordinate orders."""
    q = 1
    for x, n in zip(g.coords, g.owner.moduli):
        q = max(q, n // math.gcd(x, n))
    return q


def p_height(g: GroupElement) -> int | float:
    """Largest t with p^t*y = g solvable; ``HEIGHT_INFINITE`` for g = 0."""
    p = g.owner.p
    vals = [p_valuation(x, p) for x in g.coords if x]
    return min(vals) if vals else HEIGHT_INFINITE


def p_rank(A: PGroupType) -> int:
    return A.rank


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True)
class Subgroup:
    owner: PGroupType
    hnf: tuple[tuple[int, ...], ...]

    @memo
    def order(self) -> int:
        idx = 1
        for j, row in enumerate(self.hnf):
            idx *= row[j]
        return self.owner.order // idx

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"<{self.owner}: {self.generators()}>"

    def generators(self) -> list[GroupElement]:
        """Nonzero HNF rows, reduced into the group."""
        out = []
        for j, row in enumerate(self.hnf):
            if row[j] != self.owner.moduli[j]:
                out.append(GroupElement(self.owner, row))
        return out

    def elements(self) -> Iterator[GroupElement]:
        A = self.owner
        gens = [row for j, row in enumerate(self.hnf) if row[j] != A.moduli[j]]
        ranges = [range(A.moduli[j] // row[j]) for j, row in enumerate(self.hnf) if row[j] != A.moduli[j]]
        for cs in itertools.product(*ranges):
            v = [0] * A.rank
            for c, row in zip(cs, gens):
                if c:
                    for i in range(A.rank):
                        v[i] += c * row[i]
            yield GroupElement(A, tuple(v))

    @memo
    def mask(self) -> int:
        """Bitset of element indices (see ``PGroupType.index_of``)."""
        m = 0
        idx = self.owner.index_of
        for g in self.elements():
            m |= 1 << idx(g)
        return m

    def __contains__(self, g: GroupElement) -> bool:
        return member(g, self)

    def __le__(self, other: Subgroup) -> bool:
        return is_subgroup(self, other)

    def __ge__(self, other: Subgroup) -> bool:
        return is_subgroup(other, self)

    @memo
    def invariants(self) -> PGroupType:
        """Isomorphism type of the subgroup itself."""
        A = self.owner
        rel = []
        for i, n in enumerate(A.moduli):
            rel.append(_reduce([n if c == i else 0 for c in range(A.rank)], self.hnf))
        return _type_from_diagonal(A.p, smith_diagonal(rel)) if rel else PGroupType(A.p)

    @property
    def is_cyclic(self) -> bool:
        return self.invariants.rank <= 1

    @property
    def exponent(self) -> int:
        return self.invariants.exponent


def _same_owner(*objs):
    owners = {o.owner for o in objs}
    if len(owners) > 1:
        raise GroupError("objects belong to different groups")


def span(gens: Iterable[GroupElement], owner: PGroupType | None = None) -> Subgroup:
    gens = list(gens)
    if not gens:
        if owner is None:
            raise GroupError("span of no generators needs an owner")
        return owner.trivial()
    _same_owner(*gens)
    A = gens[0].owner
    if owner is not None and owner != A:
        raise GroupError("generators do not belong to the given owner")
    return Subgroup(A, _canonical_hnf([g.coords for g in gens], A.moduli))


def member(g: GroupElement, S: Subgroup) -> bool:
    _same_owner(g, S)
    return _reduce(g.coords, S.hnf) is not None


def is_subgroup(S: Subgroup, T: Subgroup) -> bool:
    """S <= T."""
    _same_owner(S, T)
    return all(_reduce(row, T.hnf) is not None for row in S.hnf)


def join(S: Subgroup, T: Subgroup) -> Subgroup:
    _same_owner(S, T)
    return Subgroup(S.owner, _canonical_hnf(S.hnf + T.hnf, S.owner.moduli))


def intersect(S: Subgroup, T: Subgroup) -> Subgroup:
    """Lattice meet, from the echelon form of ``[[H_S, H_S], [H_T, 0]]``."""
    _same_owner(S, T)
    k = S.owner.rank
    if k == 0:
        return S
    rows = [list(r) + list(r) for r in S.hnf] + [list(r) + [0] * k for r in T.hnf]
    ech = echelon(rows, 2 * k)
    common = [r[k:] for r in ech if not any(r[:k])]
    return Subgroup(S.owner, _canonical_hnf(common, S.owner.moduli))


def quotient_invariants(S: Subgroup) -> PGroupType:
    """Type of A/S, from the Smith form of the lattice basis."""
    if not S.hnf:
        return PGroupType(S.owner.p)
    return _type_from_diagonal(S.owner.p, smith_diagonal(S.hnf))


def hom_kernel(source: PGroupType, target: PGroupType, images: Sequence[GroupElement]) -> Subgroup:
    """Kernel of the homomorphism sending the i-th basis vector to ``images[i]``.

    Raises GroupError if the assignment does not define a homomorphism.
    """
    if len(images) != source.rank:
        raise GroupError("one image per basis vector required")
    for n, img in zip(source.moduli, images):
        if img.owner != target:
            raise GroupError("image outside the target group")
        if n * img:
            raise GroupError(f"image {img} has order not dividing {n}")
    k, kt = source.rank, target.rank
    if k == 0:
        return source.trivial()
    rows = [list(img.coords) + [1 if c == i else 0 for c in range(k)] for i, img in enumerate(images)]
    rows += [[n if c == i else 0 for c in range(kt)] + [0] * k for i, n in enumerate(target.moduli)]
    ech = echelon(rows, kt + k)
    kernel = [r[kt:] for r in ech if not any(r[:kt])]
    return Subgroup(source, _canonical_hnf(kernel, source.moduli))


def hom_apply(images: Sequence[GroupElement], g: GroupElement, target: PGroupType) -> GroupElement:
    v = [0] * target.rank
    for x, img in zip(g.coords, images):
        if x:
            for i in range(target.rank):
                v[i] += x * img.coords[i]
    return GroupElement(target, tuple(v))


def is_complement(C: Subgroup, S: Subgroup) -> bool:
    """C is a direct complement of S in the whole group."""
    return intersect(S, C).order == 1 and S.order * C.order == S.owner.order


# ---------------------------------------------------------------------------
# enumeration


def iter_subgroup_hnfs(A: PGroupType) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Every valid HNF for ``A`` exactly once (no closure, no deduplication).

    Rows are chosen bottom-up; row i is accepted iff ``p^{e_i} * e_i`` reduces
    to zero through rows i..k-1, which is exactly the condition that the
    lattice contains ``diag(p^{e_i})``.
    """
    p, exps, k = A.p, A.exponents, A.rank
    moduli = A.moduli
    if k == 0:
        yield ()
        return
    rows: list[tuple[int, ...]] = [()] * k

    def valid(i: int, row: tuple[int, ...]) -> bool:
        q = moduli[i] // row[i]
        v = [-q * x for x in row]
        for c in range(i + 1, k):
            h = rows[c][c]
            t, r = divmod(v[c], h)
            if r:
                return False
            if t:
                rc = rows[c]
                for cc in range(c, k):
                    v[cc] -= t * rc[cc]
        return True

    def rec(i: int):
        if i < 0:
            yield tuple(rows)
            return
        tail_ranges = [range(rows[c][c]) for c in range(i + 1, k)]
        head = (0,) * i
        for d in range(exps[i]):
            piv = (p**d,)
            for tail in itertools.product(*tail_ranges):
                row = head + piv + tail
                if valid(i, row):
                    rows[i] = row
                    yield from rec(i - 1)
        # a pivot equal to the modulus forces the row p^{e_i} * e_i
        rows[i] = head + (moduli[i],) + (0,) * (k - i - 1)
        yield from rec(i - 1)

    yield from rec(k - 1)


def iter_hnf_blocks(A: PGroupType, block: int = 1 << 16) -> Iterator[np.ndarray]:
    """The same HNFs as ``iter_subgroup_hnfs``, as int64 arrays of shape (n, k, k).

    Compiled; used by exhaustive sweeps.  Order is depth-first, not canonical.
    """
    from . import _kernels

    k = A.rank
    if k == 0:
        yield np.zeros((1, 0, 0), dtype=np.int64)
        return
    exps = np.array(A.exponents, dtype=np.int64)
    moduli = np.array(A.moduli, dtype=np.int64)
    rows = np.zeros((k, k), dtype=np.int64)
    idx = np.zeros(k, dtype=np.int64)
    tot = np.zeros(k, dtype=np.int64)
    tot[k - 1] = exps[k - 1] + 1
    state = np.array([k - 1], dtype=np.int64)
    out = np.empty((block, k, k), dtype=np.int64)
    while state[0] < k:
        n = _kernels.hnf_fill(A.p, exps, moduli, rows, idx, tot, state, out)
        if n:
            yield out[:n].copy()


def iter_subgroup_blocks(A: PGroupType, block: int = 1 << 16) -> Iterator[tuple[np.ndarray, list[Subgroup]]]:
    """Blocks of (HNF array, matching Subgroup values) in depth-first order."""
    from . import _kernels

    k = A.rank
    if k == 0:
        yield np.zeros((1, 0, 0), dtype=np.int64), [A.trivial()]
        return
    moduli = np.array(A.moduli, dtype=np.int64)

    def decode(i: int, code: int) -> tuple[int, ...]:
        tail = []
        for c in range(k - 1, i, -1):
            code, x = divmod(code, A.moduli[c])
            tail.append(x)
        tail.reverse()
        return (0,) * i + (A.p**code,) + tuple(tail)

    tables = []
    for i in range(k):
        width = math.prod(A.moduli[i + 1 :])
        tables.append([decode(i, c) for c in range((A.exponents[i] + 1) * width)])
    new = object.__new__
    for blk in iter_hnf_blocks(A, block):
        subs = []
        for cs in _kernels.row_codes(blk, len(blk), A.p, moduli).tolist():
            # bypass the frozen-dataclass __init__; fields are already canonical
            S = new(Subgroup)
            S.__dict__.update(owner=A, hnf=tuple([t[c] for t, c in zip(tables, cs)]))
            subs.append(S)
        yield blk, subs


def count_subgroups(A: PGroupType) -> int:
    return sum(len(b) for b in iter_hnf_blocks(A))


def iter_subgroups(A: PGroupType, block: int = 1 << 16) -> Iterator[Subgroup]:
    """Stream every subgroup (depth-first order) without building the full list."""
    for _, subs in iter_subgroup_blocks(A, block):
        yield from subs


def enumerate_subgroups(A: PGroupType, bound: int = DEFAULT_ENUM_BOUND) -> list[Subgroup]:
    """All subgroups, ordered by (order, HNF)."""
    if A.order > bound:
        raise EnumerationBoundError(f"|A| = {A.order} exceeds the enumeration bound {bound}")
    if A.order <= 64:
        hnfs = iter_subgroup_hnfs(A)
    else:
        hnfs = (tuple(map(tuple, m)) for blk in iter_hnf_blocks(A) for m in blk.tolist())
    subs = [Subgroup(A, h) for h in hnfs]
    subs.sort(key=lambda S: (S.order, S.hnf))
    return subs


def naive_subgroup_count(A: PGroupType) -> int:
    """Oracle: count addition-closed subsets by closing subgroups under one more element.

    Independent of the HNF machinery: subgroups are frozensets of element
    indices, and S + <g> is formed from an explicit addition table.
    """
    elems = [g.coords for g in A.elements()]
    index = {c: i for i, c in enumerate(elems)}
    moduli = A.moduli
    add = [[index[tuple((a + b) % n for a, b, n in zip(x, y, moduli))] for y in elems] for x in elems]
    cyclic = {}
    for i in range(len(elems)):
        cyc, x = [0], i
        while x:
            cyc.append(x)
            x = add[x][i]
        cyclic.setdefault(frozenset(cyc), i)
    cycles = list(cyclic)
    found = {frozenset([0])}
    layer = set(found)
    while layer:
        new = set()
        for S in layer:
            for C in cycles:
                if C <= S:
                    continue
                T = frozenset(add[s][c] for s in S for c in C)
                if T not in found:
                    new.add(T)
        found |= new
        layer = new
    return len(found)


def abelian_types(p: int, max_order: int) -> list[PGroupType]:
    """All nontrivial types with order <= max_order, by (order, exponents)."""
    out = []
    n = 1
    while p ** (n) <= max_order:
        for part in _partitions(n):
            out.append(PGroupType(p, part))
        n += 1
    return out


def _partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


class SubgroupLattice:
    """Indexed subgroup lattice of one group, with bitset meets for sweeps."""

    def __init__(self, A: PGroupType, bound: int = DEFAULT_ENUM_BOUND):
        self.group = A
        self.subgroups = enumerate_subgroups(A, bound)
        self.index = {S: i for i, S in enumerate(self.subgroups)}
        self.masks = [S.mask for S in self.subgroups]
        self._by_mask = {m: i for i, m in enumerate(self.masks)}

    def __len__(self) -> int:
        return len(self.subgroups)

    def __iter__(self):
        return iter(self.subgroups)

    def meet(self, i: int, j: int) -> int:
        return self._by_mask[self.masks[i] & self.masks[j]]

    def join(self, i: int, j: int) -> int:
        return self.index[join(self.subgroups[i], self.subgroups[j])]

    def leq(self, i: int, j: int) -> bool:
        return self.masks[i] & ~self.masks[j] == 0

    def cyclic(self) -> list[Subgroup]:
        return [S for S in self.subgroups if S.is_cyclic]
