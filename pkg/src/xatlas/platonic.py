"""Platonic graphs Pi_N over Z_N, the modified graphs Pi'_p, axes and wheels."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

import numpy as np
import sympy

from .graph import LabeledGraph, complete_graph
from .modular import INF, ProjPair, line_class, projective_point
from .spectral import Cluster, Spectrum

MAX_N = 64


@dataclass
class PlatonicGraph:
    base: LabeledGraph
    N: int
    coords: list[tuple[int, int]]
    axis: list[int]
    wheel: list[int] | None = None  # wheel index 1..n, or 0 on the removed principal axis
    principal: list[bool] | None = None

    @property
    def n(self) -> int:
        return self.base.n

    def index(self, lam: int, mu: int) -> int:
        v = ProjPair.make(lam, mu, self.N)
        return self._lookup[(v.lam, v.mu)]

    def __post_init__(self) -> None:
        self._lookup = {c: i for i, c in enumerate(self.coords)}


def _pairs(N: int) -> list[tuple[int, int]]:
    out = set()
    for lam, mu in product(range(N), repeat=2):
        if gcd(gcd(lam, mu), N) == 1:
            v = ProjPair.make(lam, mu, N)
            out.add((v.lam, v.mu))
    return sorted(out)


def build_platonic(N: int) -> PlatonicGraph:
    """Pi_N: +-classes of unimodular pairs, joined when the determinant is +-1."""
    if not 2 <= N <= MAX_N:
        raise ValueError(f"N must lie in [2, {MAX_N}]")
    coords = _pairs(N)
    c = np.array(coords, dtype=np.int64)
    det = (c[:, 0][:, None] * c[:, 1][None, :] - c[:, 1][:, None] * c[:, 0][None, :]) % N
    adj = (det == 1) | (det == N - 1)
    iu, ju = np.nonzero(np.triu(adj, 1))
    edges = list(zip(iu.tolist(), ju.tolist()))
    classes = sorted({line_class(ProjPair(l, m, N)) for l, m in coords})
    cid = {cl: i for i, cl in enumerate(classes)}
    axis = [cid[line_class(ProjPair(l, m, N))] for l, m in coords]
    principal = [m == 0 for _, m in coords]
    tags = {"coords": [list(x) for x in coords], "axis": axis}
    wheel = None
    if sympy.isprime(N) and N >= 5:
        wheel = _wheel_ids(coords, N)
        tags["wheel"] = wheel
    g = LabeledGraph(len(coords), edges, tags=tags)
    return PlatonicGraph(g, N, coords, axis, wheel, principal)


def _wheel_ids(coords: list[tuple[int, int]], p: int) -> list[int]:
    # [i, 0] is the centre of W_i and [mu, i^-1] its boundary (1 <= i <= n).
    n = (p - 1) // 2
    out = []
    for lam, mu in coords:
        if mu == 0:
            i = min(lam, p - lam)
        else:
            i = pow(mu, -1, p)
            i = min(i, p - i)
        if not 1 <= i <= n:
            raise RuntimeError("wheel assignment failed")
        out.append(i)
    return out


def principal_axis(g: PlatonicGraph) -> list[int]:
    return [i for i, (_, mu) in enumerate(g.coords) if mu == 0]


def build_modified(p: int) -> PlatonicGraph:
    """Pi'_p: Pi_p with the principal axis deleted."""
    if p < 5 or not sympy.isprime(p):
        raise ValueError("p must be a prime >= 5")
    full = build_platonic(p)
    return remove_axis(full, full.axis[principal_axis(full)[0]])


def remove_axis(g: PlatonicGraph, axis_id: int) -> PlatonicGraph:
    keep = [i for i in range(g.n) if g.axis[i] != axis_id]
    sub = g.base.induced(keep)
    wheel = [g.wheel[i] for i in keep] if g.wheel is not None else None
    return PlatonicGraph(
        sub,
        g.N,
        [g.coords[i] for i in keep],
        [g.axis[i] for i in keep],
        wheel,
        [g.principal[i] for i in keep] if g.principal is not None else None,
    )


def wheels(g: PlatonicGraph) -> dict[int, list[int]]:
    """W_i = {[i, 0]} plus its neighbours, for 1 <= i <= (p - 1) / 2.

    Checks that the wheels partition the vertices and each boundary is a p-cycle.
    """
    p = g.N
    if p < 5 or not sympy.isprime(p):
        raise ValueError("wheels need a prime p >= 5")
    nb = g.base.neighbors()
    out: dict[int, list[int]] = {}
    covered: set[int] = set()
    for i in range(1, (p - 1) // 2 + 1):
        centre = g.index(i, 0)
        members = [centre] + sorted(nb[centre])
        if covered & set(members):
            raise RuntimeError("wheels overlap")
        covered |= set(members)
        out[i] = members
        ring = g.base.induced(members[1:])
        if ring.n != p or ring.m != p or set(ring.degrees().tolist()) != {2}:
            raise RuntimeError(f"boundary of W_{i} is not a {p}-cycle")
        if len(_cycle_order(ring)) != p:
            raise RuntimeError(f"boundary of W_{i} is disconnected")
    if len(covered) != g.n:
        raise RuntimeError("wheels do not cover the vertex set")
    return out


def _cycle_order(ring: LabeledGraph) -> list[int]:
    nb = ring.neighbors()
    order = [0]
    prev, cur = -1, 0
    while True:
        nxt = nb[cur][0] if nb[cur][0] != prev else nb[cur][1]
        if nxt == 0:
            return order
        order.append(nxt)
        prev, cur = cur, nxt


def covering_map(g: PlatonicGraph) -> list[int]:
    """pi([lam, mu]) = lam / mu on P^1(Z_p), INF for mu = 0."""
    return [projective_point(ProjPair(l, m, g.N)) for l, m in g.coords]


def covering_is_local_isomorphism(g: PlatonicGraph) -> bool:
    """pi is a homomorphism onto K_{p+1} mapping every neighbourhood bijectively."""
    pi = covering_map(g)
    p = g.N
    points = set(range(p)) | {INF}
    for v, nbrs in enumerate(g.base.neighbors()):
        images = [pi[w] for w in nbrs]
        if len(set(images)) != len(images) or set(images) != points - {pi[v]}:
            return False
    return True


def covering_target(p: int) -> LabeledGraph:
    return complete_graph(p + 1)


@dataclass(frozen=True)
class Counts:
    axes: int
    vertices: int
    edges: int


def count_formulas(N: int) -> Counts:
    """Closed forms: N prod(1 + 1/p), N^2/2 prod(1 - 1/p^2), N^3/4 prod(1 - 1/p^2)."""
    if N < 3:
        raise ValueError("N must be >= 3")
    plus, minus = Fraction(1), Fraction(1)
    for q in sympy.primefactors(N):
        plus *= 1 + Fraction(1, q)
        minus *= 1 - Fraction(1, q * q)
    vals = (N * plus, Fraction(N * N, 2) * minus, Fraction(N**3, 4) * minus)
    if any(v.denominator != 1 for v in vals):
        raise ArithmeticError("non-integer count")
    return Counts(*(int(v) for v in vals))


def constructed_counts(g: PlatonicGraph) -> Counts:
    return Counts(len(set(g.axis)), g.n, g.base.m)


def expected_spectrum_modified(p: int) -> Spectrum:
    """{p-1: 1, -1: p-1, 0: (p-3)/2, +-sqrt(p): (p-1)(p-3)/4 each}."""
    if p < 5 or not sympy.isprime(p):
        raise ValueError("p must be a prime >= 5")
    r = float(np.sqrt(p))
    half = (p - 1) * (p - 3) // 4
    clusters = [
        Cluster(float(p - 1), 1, 0.0, "int", str(p - 1)),
        Cluster(r, half, 0.0, "sqrt", f"sqrt({p})"),
        Cluster(0.0, (p - 3) // 2, 0.0, "int", "0"),
        Cluster(-1.0, p - 1, 0.0, "int", "-1"),
        Cluster(-r, half, 0.0, "sqrt", f"-sqrt({p})"),
    ]
    return Spectrum(clusters, p * (p - 1) // 2)


@dataclass(frozen=True)
class WheelLemma:
    disjoint_paths: bool
    two_neighbours: bool
    matching: bool

    def __bool__(self) -> bool:
        return self.disjoint_paths and self.two_neighbours and self.matching


def _arcs(order: list[int], a: int, b: int) -> list[frozenset]:
    """Vertex sets of the two arcs joining a and b along a cycle."""
    if a == b:
        return [frozenset([a])]
    n = len(order)
    i, j = order.index(a), order.index(b)
    fwd = [order[(i + t) % n] for t in range((j - i) % n + 1)]
    bwd = [order[(i - t) % n] for t in range((i - j) % n + 1)]
    return [frozenset(fwd), frozenset(bwd)]


def _two_paths(order: list[int], x1: int, x2: int, y1: int, y2: int) -> bool:
    for ya, yb in ((y1, y2), (y2, y1)):
        for p1 in _arcs(order, x1, ya):
            for p2 in _arcs(order, x2, yb):
                if not p1 & p2:
                    return True
    return False


def wheel_lemma_check(g: PlatonicGraph, exhaustive_limit: int = 11, samples: int = 2000, seed: int = 0) -> WheelLemma:
    """Verify the three wheel facts on Pi_p.

    (a) any two pairs in a boundary cycle are joined by disjoint paths
        (exhaustive up to ``exhaustive_limit``, seeded samples beyond);
    (b) every non-axis vertex has exactly two neighbours in each boundary;
    (c) mu -> i + i j^-1 mu matches boundary i to boundary j along edges.
    """
    p = g.N
    W = wheels(g)
    nb = [set(x) for x in g.base.neighbors()]
    rng = np.random.default_rng(seed)
    ok_a = True
    for i, members in W.items():
        boundary = members[1:]
        ring = g.base.induced(boundary)
        order = [boundary[t] for t in _cycle_order(ring)]
        if p <= exhaustive_limit:
            quads = (
                (x1, x2, y1, y2)
                for x1, x2 in product(boundary, repeat=2)
                if x1 != x2
                for y1, y2 in product(boundary, repeat=2)
                if y1 != y2
            )
        else:
            quads = (
                tuple(rng.choice(boundary, 2, replace=False).tolist() + rng.choice(boundary, 2, replace=False).tolist())
                for _ in range(samples)
            )
        for x1, x2, y1, y2 in quads:
            if not _two_paths(order, x1, x2, y1, y2):
                ok_a = False
    ok_b = True
    boundaries = {i: set(m[1:]) for i, m in W.items()}
    for v in range(g.n):
        if g.coords[v][1] == 0:
            continue  # the lemma excludes the principal axis
        for bset in boundaries.values():
            if len(nb[v] & bset) != 2:
                ok_b = False
    ok_c = True
    n = (p - 1) // 2
    for i, j in product(range(1, n + 1), repeat=2):
        if i == j:
            continue
        ii, jj = pow(i, -1, p), pow(j, -1, p)
        images = set()
        for mu in range(p):
            phi = (i + i * jj * mu) % p
            v, w = g.index(mu, ii), g.index(phi, jj)
            images.add(w)
            if w not in nb[v] or w not in boundaries[j] or v not in boundaries[i]:
                ok_c = False
        if len(images) != p:
            ok_c = False
    return WheelLemma(ok_a, ok_b, ok_c)
