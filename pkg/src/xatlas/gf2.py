"""Bit-packed 3x3 matrices over GF(2) and small GF(2) linear algebra.

A ``Mat3`` is a plain ``int`` in ``range(512)``: entry ``(i, j)`` lives in
bit ``3 * i + j`` (row-major, low bits first).  Addition is XOR.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

Mat3 = int

ZERO: Mat3 = 0
IDENTITY: Mat3 = 0b100010001


def _build_table() -> list[int]:
    codes = np.arange(512)
    mats = ((codes[:, None] >> np.arange(9)) & 1).reshape(512, 3, 3)
    prod = np.einsum("aij,bjk->abik", mats, mats) & 1
    packed = (prod.reshape(512, 512, 9) << np.arange(9)).sum(axis=2)
    return packed.reshape(-1).tolist()


# Product lookup: MUL[(a << 9) | b] == a * b.
MUL: list[int] = _build_table()


def mat3_from_rows(rows: Sequence[str | Sequence[int]]) -> Mat3:
    """Pack three rows such as ``["011", "001", "000"]``."""
    if len(rows) != 3:
        raise ValueError("need 3 rows")
    out = 0
    for i, row in enumerate(rows):
        bits = [int(c) for c in row]
        if len(bits) != 3 or any(b not in (0, 1) for b in bits):
            raise ValueError(f"bad row {row!r}")
        for j, b in enumerate(bits):
            out |= b << (3 * i + j)
    return out


def mat3_to_rows(a: Mat3) -> list[str]:
    return ["".join(str((a >> (3 * i + j)) & 1) for j in range(3)) for i in range(3)]


def mat3_to_array(a: Mat3) -> np.ndarray:
    return ((a >> np.arange(9)) & 1).reshape(3, 3).astype(np.uint8)


def mat3_add(a: Mat3, b: Mat3) -> Mat3:
    return a ^ b


def mat3_mul(a: Mat3, b: Mat3) -> Mat3:
    """Boolean matrix product over GF(2)."""
    return MUL[(a << 9) | b]


def blocks_from_display(rows: Sequence[str]) -> tuple[Mat3, Mat3, Mat3]:
    """Split a 3x9 display into three consecutive 3x3 column blocks."""
    rows = [r.replace(" ", "") for r in rows]
    if len(rows) != 3 or any(len(r) != 9 for r in rows):
        raise ValueError("expected a 3x9 display")
    return tuple(mat3_from_rows([r[3 * j : 3 * j + 3] for r in rows]) for j in range(3))  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# GF(2) vectors as Python ints (bit i = coordinate i).


def rref(rows: Iterable[int]) -> tuple[list[int], list[int]]:
    """Reduced row echelon form; returns (rows, pivot columns)."""
    basis: list[int] = []
    pivots: list[int] = []
    for v in rows:
        for b, p in zip(basis, pivots):
            if (v >> p) & 1:
                v ^= b
        if not v:
            continue
        p = (v & -v).bit_length() - 1
        for i, b in enumerate(basis):
            if (b >> p) & 1:
                basis[i] = b ^ v
        basis.append(v)
        pivots.append(p)
    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    return [basis[i] for i in order], [pivots[i] for i in order]


def rank(rows: Iterable[int]) -> int:
    return len(rref(rows)[0])


def solve(cols: Sequence[int], rhs: int) -> int | None:
    """Solve ``sum_j x_j * cols[j] == rhs``; free variables are set to zero.

    ``cols`` are column vectors packed as ints; the result packs ``x``.
    """
    basis: list[tuple[int, int]] = []  # (vector, combination tag)
    for j, c in enumerate(cols):
        tag = 1 << j
        for b, t in basis:
            p = (b & -b).bit_length() - 1
            if (c >> p) & 1:
                c ^= b
                tag ^= t
        if c:
            basis.append((c, tag))
    v, tag = rhs, 0
    for b, t in basis:
        p = (b & -b).bit_length() - 1
        if (v >> p) & 1:
            v ^= b
            tag ^= t
    return None if v else tag


def nullspace(cols: Sequence[int]) -> list[int]:
    """Basis of ``{x : sum_j x_j * cols[j] == 0}``, packed as ints."""
    basis: list[tuple[int, int]] = []
    kernel: list[int] = []
    for j, c in enumerate(cols):
        tag = 1 << j
        for b, t in basis:
            p = (b & -b).bit_length() - 1
            if (c >> p) & 1:
                c ^= b
                tag ^= t
        if c:
            basis.append((c, tag))
        else:
            kernel.append(tag)
    return kernel
