"""Arithmetic over Z_N: PSL(2, Z_N), projective pairs and the projective line."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Sequence

import numpy as np
import sympy

MAX_MODULUS = 64


@dataclass(frozen=True, order=True)
class PSL2Elem:
    """A matrix class +-(a b; c d) mod N, stored in canonical form."""

    a: int
    b: int
    c: int
    d: int
    N: int

    @classmethod
    def make(cls, a: int, b: int, c: int, d: int, N: int) -> PSL2Elem:
        if N < 2:
            raise ValueError("modulus must be >= 2")
        v = (a % N, b % N, c % N, d % N)
        if (v[0] * v[3] - v[1] * v[2]) % N != 1:
            raise ValueError(f"determinant of {v} is not 1 mod {N}")
        w = tuple(-x % N for x in v)
        return cls(*min(v, w), N)

    @classmethod
    def identity(cls, N: int) -> PSL2Elem:
        return cls.make(1, 0, 0, 1, N)

    def __mul__(self, o: PSL2Elem) -> PSL2Elem:
        if o.N != self.N:
            raise ValueError("modulus mismatch")
        a, b, c, d = self.a, self.b, self.c, self.d
        return PSL2Elem.make(
            a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d, self.N
        )

    def inv(self) -> PSL2Elem:
        return PSL2Elem.make(self.d, -self.b, -self.c, self.a, self.N)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True, order=True)
class ProjPair:
    """The class [lam, mu] = {+-(lam, mu)} with gcd(lam, mu, N) = 1."""

    lam: int
    mu: int
    N: int

    @classmethod
    def make(cls, lam: int, mu: int, N: int) -> ProjPair:
        v = (lam % N, mu % N)
        if gcd(gcd(v[0], v[1]), N) != 1:
            raise ValueError(f"{v} is not unimodular mod {N}")
        w = (-v[0] % N, -v[1] % N)
        return cls(*min(v, w), N)


INF = -1  # the point at infinity on the projective line over Z_p


def psl2_order_formula(N: int) -> int:
    if N == 2:
        return 6
    order = N**3
    for p in sympy.primefactors(N):
        order = order * (p * p - 1) // (p * p)
    return order // 2


def _check_modulus(N: int) -> None:
    if not 2 <= N <= MAX_MODULUS:
        raise ValueError(f"modulus must lie in [2, {MAX_MODULUS}]")


class PSL2Group:
    """Listing of all canonical elements of PSL(2, Z_N)."""

    def __init__(self, N: int):
        _check_modulus(N)
        self.N = N
        seen: set[tuple[int, int, int, int]] = set()
        r = np.arange(N)
        b, c, d = np.meshgrid(r, r, r, indexing="ij")
        for a in range(N):
            mask = (a * d - b * c) % N == 1
            for bb, cc, dd in zip(b[mask], c[mask], d[mask]):
                v = (a, int(bb), int(cc), int(dd))
                w = tuple(-x % N for x in v)
                seen.add(min(v, w))  # type: ignore[arg-type]
        self.elements = [PSL2Elem(*v, N) for v in sorted(seen)]
        self._index = {g: i for i, g in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, g: PSL2Elem) -> int:
        return self._index[g]

    def generators(self) -> list[PSL2Elem]:
        """(1 1; 0 1) and (0 -1; 1 0); they generate because SL(2,Z) maps onto SL(2,Z_N)."""
        return [PSL2Elem.make(1, 1, 0, 1, self.N), PSL2Elem.make(0, -1, 1, 0, self.N)]


@lru_cache(maxsize=None)
def psl2_enumerate(N: int) -> PSL2Group:
    return PSL2Group(N)


def psl2_act_pair(g: PSL2Elem, v: ProjPair) -> ProjPair:
    if g.N != v.N:
        raise ValueError("modulus mismatch")
    return ProjPair.make(g.a * v.lam + g.b * v.mu, g.c * v.lam + g.d * v.mu, g.N)


def _require_prime(p: int) -> None:
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")


def projective_point(v: ProjPair) -> int:
    """The covering map [lam, mu] -> lam / mu on P^1(Z_p); INF when mu = 0."""
    _require_prime(v.N)
    if v.mu == 0:
        return INF
    return v.lam * pow(v.mu, -1, v.N) % v.N


def psl2_act_line(g: PSL2Elem, z: int) -> int:
    """Moebius action z -> (a z + b) / (c z + d) on P^1(Z_p)."""
    p = g.N
    _require_prime(p)
    if z == INF:
        num, den = g.a, g.c
    else:
        num, den = (g.a * z + g.b) % p, (g.c * z + g.d) % p
    if den % p == 0:
        return INF
    return num * pow(den, -1, p) % p


def line_class(v: ProjPair) -> tuple[int, int]:
    """Canonical representative of v under scaling by all units of Z_N."""
    N = v.N
    units = [u for u in range(1, N) if gcd(u, N) == 1] if N > 1 else [1]
    return min(((u * v.lam) % N, (u * v.mu) % N) for u in units)


@dataclass
class SubgroupReport:
    elements: list[PSL2Elem]
    order: int
    normal: bool
    index: int


def subgroup_closure(gens: Sequence[PSL2Elem]) -> SubgroupReport:
    """BFS closure of ``gens``; normality is tested against the full PSL(2, Z_N)."""
    if not gens:
        raise ValueError("need at least one generator")
    N = gens[0].N
    if any(g.N != N for g in gens):
        raise ValueError("modulus mismatch")
    moves = list(gens) + [g.inv() for g in gens]
    start = PSL2Elem.identity(N)
    seen = {start: None}
    queue = deque([start])
    while queue:
        h = queue.popleft()
        for s in moves:
            x = h * s
            if x not in seen:
                seen[x] = None
                queue.append(x)
    elems = list(seen)
    full = psl2_enumerate(N)
    normal = all(t * g * t.inv() in seen for t in full.generators() for g in gens)
    return SubgroupReport(elems, len(elems), normal, full.order // len(elems))


# The three matrices X, Y, Z modulo 8 generating the order-32 normal subgroup.
XYZ_MOD8 = (
    PSL2Elem.make(-1, 0, 2, -1, 8),
    PSL2Elem.make(-1, 2, -2, 3, 8),
    PSL2Elem.make(1, 2, 0, 1, 8),
)


def word_isomorphism(
    gens_a: Sequence, gens_b: Sequence, mul_a, mul_b, id_a, id_b
) -> dict | None:
    """Extend gens_a[i] -> gens_b[i] to a homomorphism along a BFS tree.

    Returns the element bijection if the map is a well-defined isomorphism,
    otherwise None.  Group elements must be hashable.
    """
    phi = {id_a: id_b}
    queue = deque([id_a])
    while queue:
        x = queue.popleft()
        for ga, gb in zip(gens_a, gens_b):
            y = mul_a(x, ga)
            img = mul_b(phi[x], gb)
            if y in phi:
                if phi[y] != img:
                    return None
            else:
                phi[y] = img
                queue.append(y)
    if len(set(phi.values())) != len(phi):
        return None
    return phi


def u_p_elements(p: int) -> list[PSL2Elem]:
    """Upper-triangular subgroup U_p of PSL(2, Z_p)."""
    return [
        PSL2Elem.make(pow(mu, -1, p), lam, 0, mu, p)
        for mu in range(1, (p - 1) // 2 + 1)
        for lam in range(p)
    ]


def u_p_connection_set(p: int) -> list[PSL2Elem]:
    return sorted({PSL2Elem.make(a, 1, 0, pow(a, -1, p), p) for a in range(1, p)})


def u_p_cayley(p: int):
    """Cay(U_p, S) with S the elements whose upper-right entry is 1."""
    from .graph import LabeledGraph

    if p < 5 or not sympy.isprime(p):
        raise ValueError("p must be a prime >= 5")
    elems = sorted(u_p_elements(p))
    index = {g: i for i, g in enumerate(elems)}
    S = u_p_connection_set(p)
    edges = set()
    for g in elems:
        for s in S:
            u, v = index[g], index[g * s]
            edges.add((min(u, v), max(u, v)))
    return LabeledGraph(
        len(elems),
        sorted(edges),
        tags={"matrix": [list(g.as_tuple()) for g in elems]},
    )
