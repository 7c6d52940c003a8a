"""Euler characteristic, genus, face data and non-flatness ratios."""

from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import sympy

from .graph import LabeledGraph, coset_faces, dual_tk
from .toeplitz import GENERATOR_INDICES, GroupTable, element_order, enumerate_group, make_generator

CSV_COLUMNS = ("family", "param", "V", "E", "F", "genus", "ratio")


def r_and_K(k: int) -> tuple[int, int]:
    """r = floor(log2 k) + 1 and K = 8 floor(k/3) + 3 (k mod 3)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return k.bit_length(), 8 * (k // 3) + 3 * (k % 3)


def generator_orders(k: int) -> tuple[int, ...]:
    return tuple(element_order(make_generator(i, k)) for i in GENERATOR_INDICES)


def mu_k(table_or_k: GroupTable | int) -> Fraction:
    """Sum of reciprocal orders of x_0, x_1, x_3."""
    k = table_or_k.k if isinstance(table_or_k, GroupTable) else table_or_k
    return sum((Fraction(1, o) for o in generator_orders(k)), Fraction(0))


def _integral(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"{what} is not an integer: {x}")
    return int(x)


def genus_surface_tk(table: GroupTable, cross_check: bool = True) -> int:
    """g = 1 + (1 - mu_k)/2 |G_k|, checked against the face data of the dual."""
    g = _integral(1 + (1 - mu_k(table)) / 2 * table.order, "genus")
    if cross_check:
        s = summarize_tk(table)
        if s.genus != g:
            raise ArithmeticError(f"Euler genus {s.genus} disagrees with {g}")
    return g


def _prime_product(N: int) -> Fraction:
    out = Fraction(1)
    for q in sympy.primefactors(N):
        out *= 1 - Fraction(1, q * q)
    return out


def genus_platonic_surface(N: int) -> int:
    """1 + N^2 (N - 6) / 24 prod(1 - 1/p^2), checked against chi with F = 2E/3."""
    if N < 3:
        raise ValueError("N must be >= 3")
    g = _integral(1 + Fraction(N * N * (N - 6), 24) * _prime_product(N), "genus")
    s = summarize_platonic(N)
    if s.genus != g:
        raise ArithmeticError(f"Euler genus {s.genus} disagrees with {g}")
    return g


def genus_prime_closed_form(p: int) -> int:
    return _integral(Fraction((p + 2) * (p - 3) * (p - 5), 24), "genus")


@dataclass(frozen=True)
class TessellationSummary:
    family: str
    param: int
    V: int
    E: int
    F: int
    face_sizes: tuple[int, ...] = field(default=())

    @property
    def euler(self) -> int:
        return self.V - self.E + self.F

    @property
    def genus(self) -> int:
        return _integral(1 - Fraction(self.euler, 2), "genus")

    @property
    def ratio(self) -> Fraction:
        return nonflatness_ratio(self)

    def row(self) -> dict:
        r = self.ratio
        return {
            "family": self.family,
            "param": self.param,
            "V": self.V,
            "E": self.E,
            "F": self.F,
            "genus": self.genus,
            "ratio": f"{r.numerator}/{r.denominator}",
        }


def nonflatness_ratio(s: TessellationSummary) -> Fraction:
    """6g/E.  For T_k the edge count equals that of the triangulating dual."""
    return Fraction(6 * s.genus, s.E)


def summarize_tk(table: GroupTable) -> TessellationSummary:
    """T_k on its surface: V = 2|G_k|, E = 3|G_k|, faces are generator cosets."""
    dual = dual_tk(table)
    _, face_of = coset_faces(table)
    sizes = tuple(sorted({2 * c for c in Counter(face_of.reshape(-1).tolist()).values()}))
    return TessellationSummary("tk", table.k, 2 * table.order, dual.m, dual.n, sizes)


def summarize_platonic(N: int, constructed: bool | None = None) -> TessellationSummary:
    """Pi_N as a triangulation: F = 2E/3.  Built explicitly when N <= 20 by default."""
    if N < 3:
        raise ValueError("N must be >= 3")
    if constructed is None:
        constructed = N <= 20
    if constructed:
        from .platonic import build_platonic

        g = build_platonic(N)
        V, E = g.n, g.base.m
    else:
        from .platonic import count_formulas

        c = count_formulas(N)
        V, E = c.vertices, c.edges
    if (2 * E) % 3:
        raise ArithmeticError("edge count not divisible by 3")
    return TessellationSummary("platonic", N, V, E, 2 * E // 3, (3,))


def tube_genus(t: LabeledGraph) -> int:
    """Genus of the boundary of a tubular neighbourhood of a trivalent graph."""
    deg = t.degrees()
    if t.n and (deg.min() != 3 or deg.max() != 3):
        raise ValueError("graph is not trivalent")
    if t.n % 2:
        raise ValueError("odd vertex count")
    return 1 + t.n // 2


@dataclass(frozen=True)
class TkCounts:
    k: int
    r: int
    K: int
    vertices_ok: bool
    edges_ok: bool
    faces_ok: bool
    face_size_ok: bool
    genus_ok: bool
    displayed_genus: int  # V - E + F, the uncorrected reading
    genus: int

    def __bool__(self) -> bool:
        return self.vertices_ok and self.edges_ok and self.faces_ok and self.face_size_ok and self.genus_ok


def tk_counts(table: GroupTable) -> TkCounts:
    """|V| = 2^K, |E| = 3 2^(K-1), |F| = 3 2^(K-r-1), faces 2^(r+1)-gons, g = 1 + 2^(K-2) - 3 2^(K-r-2)."""
    k = table.k
    r, K = r_and_K(k)
    s = summarize_tk(table)
    expect_g = 1 + Fraction(2) ** (K - 2) - 3 * Fraction(2) ** (K - r - 2)
    return TkCounts(
        k,
        r,
        K,
        s.V == 2**K,
        s.E == 3 * 2 ** (K - 1),
        Fraction(s.F) == 3 * Fraction(2) ** (K - r - 1),
        s.face_sizes == (2 ** (r + 1),),
        Fraction(s.genus) == expect_g,
        s.euler,
        s.genus,
    )


def noniso_inequality(k: int) -> bool:
    """3 floor(log2 k) + 3 >= K."""
    r, K = r_and_K(k)
    return 3 * (r - 1) + 3 >= K


def trend(family: str, params: Iterable[int], tables: dict[int, GroupTable] | None = None) -> list[TessellationSummary]:
    out = []
    for p in params:
        if family == "tk":
            t = (tables or {}).get(p) or enumerate_group(p)
            out.append(summarize_tk(t))
        elif family == "platonic":
            out.append(summarize_platonic(p))
        else:
            raise ValueError(f"unknown family {family!r}")
    return out


def strictly_increasing(values: Sequence[Fraction]) -> bool:
    return all(a < b for a, b in zip(values, values[1:]))


def write_trend_csv(rows: Sequence[TessellationSummary], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        for s in rows:
            w.writerow(s.row())
