"""Truncated unipotent block-Toeplitz representation of G and its quotients G_k.

Elements are upper-triangular matrices with identity 3x3 blocks on the main
diagonal and GF(2) blocks above it.  Block rows repeat with period 3, so a
super-diagonal is described by three ``Mat3`` values, one per residue class
of the block-row index.  When all three agree the matrix is plain
block-Toeplitz.

The group G is generated by x_0, x_1 with x_3 = x_1^-1 x_0^-1.  G_k is the
image of G after truncating every matrix to its first k super-diagonals.
"""

from __future__ import annotations

import logging
import struct
import warnings
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from . import gf2
from .gf2 import MUL, Mat3, blocks_from_display

log = logging.getLogger(__name__)

Blocks = tuple[Mat3, Mat3, Mat3]


# ---------------------------------------------------------------------------
# Seeds


@dataclass(frozen=True)
class GeneratorSeed:
    index: int
    alpha: Blocks
    beta: Blocks


def _seed(index: int, alpha: Sequence[str], beta: Sequence[str]) -> GeneratorSeed:
    return GeneratorSeed(index, blocks_from_display(alpha), blocks_from_display(beta))


# The six constant matrices as displayed, rows of 3x9 arrays.
SEEDS: dict[int, GeneratorSeed] = {
    0: _seed(
        0,
        ["000000000", "001001001", "011011011"],
        ["000000000", "011011011", "010010010"],
    ),
    1: _seed(
        1,
        ["000011010", "010100001", "111000010"],
        ["000011010", "010100001", "111000010"],
    ),
    3: _seed(
        3,
        ["000011010", "011101000", "100011001"],
        ["000001011", "110011000", "011001100"],
    ),
}

GENERATOR_INDICES = (0, 1, 3)
# Signed generator order used for BFS and Cayley graphs.
SIGNED_GENERATORS = ((0, 1), (0, -1), (1, 1), (1, -1), (3, 1), (3, -1))

# Relators over a = x_0, A = x_0^-1, b = x_1, B = x_1^-1.
RELATORS: dict[str, str] = {
    "r1": "bababaBBBAAA",  # (x1 x0)^3 x1^-3 x0^-3
    "r2": "bABAAAbbAbab",  # x1 x0^-1 x1^-1 x0^-3 x1^2 x0^-1 x1 x0 x1
    "r3": "bbbAbabaabbaba",  # x1^3 x0^-1 x1 x0 x1 x0^2 x1^2 x0 x1 x0
}


# ---------------------------------------------------------------------------
# Elements


@dataclass(frozen=True)
class ToeplitzElement:
    """Unipotent element truncated at depth ``k``.

    ``data[3 * d + r]`` is the block on super-diagonal ``d + 1`` in block rows
    congruent to ``r`` mod 3.
    """

    k: int
    data: tuple[Mat3, ...]

    def __post_init__(self) -> None:
        if len(self.data) != 3 * self.k:
            raise ValueError("data length must be 3k")

    @classmethod
    def identity(cls, k: int) -> ToeplitzElement:
        return cls(k, (0,) * (3 * k))

    @classmethod
    def from_diagonals(cls, diags: Sequence[Blocks | Mat3]) -> ToeplitzElement:
        data: list[int] = []
        for d in diags:
            data.extend((d, d, d) if isinstance(d, int) else d)
        return cls(len(diags), tuple(data))

    @property
    def diag(self) -> tuple[Blocks, ...]:
        return tuple(self.data[3 * d : 3 * d + 3] for d in range(self.k))  # type: ignore[misc]

    def is_identity(self) -> bool:
        return not any(self.data)

    def truncate(self, k: int) -> ToeplitzElement:
        if k > self.k:
            raise ValueError("cannot truncate to a larger depth")
        return ToeplitzElement(k, self.data[: 3 * k])

    def pad(self, k: int) -> ToeplitzElement:
        if k < self.k:
            return self.truncate(k)
        return ToeplitzElement(k, self.data + (0,) * (3 * (k - self.k)))

    def __mul__(self, other: ToeplitzElement) -> ToeplitzElement:
        return toeplitz_mul(self, other)

    def to_bytes(self) -> bytes:
        return struct.pack(f"<{len(self.data)}H", *self.data)


def _mul(x: Sequence[int], y: Sequence[int], k: int) -> tuple[int, ...]:
    out = [0] * (3 * k)
    for d in range(k):
        base = 3 * d
        for r in range(3):
            s = x[base + r] ^ y[base + r]
            for e in range(d):
                a = x[3 * e + r]
                if a:
                    b = y[3 * (d - e - 1) + (r + e + 1) % 3]
                    if b:
                        s ^= MUL[(a << 9) | b]
            out[base + r] = s
    return tuple(out)


def _inv(x: Sequence[int], k: int) -> tuple[int, ...]:
    # Solve x * y = 1 one diagonal at a time (signs vanish in characteristic 2).
    y = [0] * (3 * k)
    for d in range(k):
        for r in range(3):
            s = x[3 * d + r]
            for e in range(d):
                a = x[3 * e + r]
                if a:
                    b = y[3 * (d - e - 1) + (r + e + 1) % 3]
                    if b:
                        s ^= MUL[(a << 9) | b]
            y[3 * d + r] = s
    return tuple(y)


def toeplitz_mul(a: ToeplitzElement, b: ToeplitzElement) -> ToeplitzElement:
    if a.k != b.k:
        raise ValueError(f"depth mismatch: {a.k} != {b.k}")
    return ToeplitzElement(a.k, _mul(a.data, b.data, a.k))


def toeplitz_inv(a: ToeplitzElement) -> ToeplitzElement:
    return ToeplitzElement(a.k, _inv(a.data, a.k))


def toeplitz_pow(a: ToeplitzElement, n: int) -> ToeplitzElement:
    if n < 0:
        return toeplitz_pow(toeplitz_inv(a), -n)
    result, base = ToeplitzElement.identity(a.k), a
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


def element_order(g: ToeplitzElement, max_order: int = 1 << 20) -> int:
    """Least n >= 1 with g^n = 1.

    Unipotent elements over GF(2) have 2-power order, so repeated squaring
    finds it; the loop bound guards against misuse.
    """
    n, x = 1, g
    while not x.is_identity():
        x = x * x
        n *= 2
        if n > max_order:
            raise RuntimeError("order exceeds cap")
    return n


def evaluate_word(word: str, x0: ToeplitzElement, x1: ToeplitzElement) -> ToeplitzElement:
    k = x0.k
    letters = {"a": x0.data, "A": _inv(x0.data, k), "b": x1.data, "B": _inv(x1.data, k)}
    acc: tuple[int, ...] = (0,) * (3 * k)
    for c in word:
        acc = _mul(acc, letters[c], k)
    return ToeplitzElement(k, acc)


# ---------------------------------------------------------------------------
# Conventions


class NoValidConvention(RuntimeError):
    pass


class AmbiguousConvention(UserWarning):
    pass


class UncalibratedConvention(RuntimeError):
    pass


LAYOUTS = ("residue", "periodic", "band")


@dataclass(frozen=True)
class Convention:
    """How the displayed seeds become generator matrices.

    ``layout``
        ``residue``: super-diagonal 1 carries seed block r in block rows of
        residue r; ``periodic``: super-diagonal d carries seed block
        (d - 1) mod 3 in every row; ``band``: as periodic but stops at d = 3.
    ``reverse``
        read the three seed blocks right to left.
    ``swap``
        seed x_i with beta_i instead of alpha_i.
    ``corrections``
        extra blocks on super-diagonals 2..depth for x_0 and x_1, found by
        lifting so that the relators hold through ``depth``.
    """

    layout: str
    reverse: bool = False
    swap: bool = False
    depth: int = 0
    corrections: tuple[tuple[int, ...], tuple[int, ...]] = ((), ())
    repaired_beta: tuple[tuple[int, Blocks], ...] = ()
    notes: tuple[str, ...] = field(default=(), compare=False)

    @property
    def name(self) -> str:
        return f"{self.layout}{'-rev' if self.reverse else ''}{'-swap' if self.swap else ''}"

    def seed_blocks(self, i: int, which: str = "alpha") -> Blocks:
        s = SEEDS[i]
        if self.swap:
            which = "beta" if which == "alpha" else "alpha"
        blocks = s.alpha if which == "alpha" else dict(self.repaired_beta).get(i, s.beta)
        return blocks[::-1] if self.reverse else blocks

    def pattern(self, blocks: Blocks, lead: int, k: int) -> ToeplitzElement:
        """Element whose first ``lead`` super-diagonals vanish and whose next
        ones follow ``blocks`` (only the leading one for the residue layout)."""
        data = [0] * (3 * k)
        for d in range(lead, k):
            t = d - lead
            if self.layout == "residue":
                if t == 0:
                    data[3 * d : 3 * d + 3] = blocks
            elif self.layout == "periodic" or t < 3:
                data[3 * d : 3 * d + 3] = (blocks[t % 3],) * 3
        return ToeplitzElement(k, tuple(data))

    def seed_depth(self) -> int:
        """Number of super-diagonals fixed by the seeds alone."""
        return 1 if self.layout == "residue" else 3


def _leading(conv: Convention, i: int, k: int) -> ToeplitzElement:
    return conv.pattern(conv.seed_blocks(i), 0, k)


def make_generator(i: int, k: int, convention: Convention | None = None) -> ToeplitzElement:
    """Image of x_i in the depth-``k`` truncation."""
    conv = convention if convention is not None else default_convention()
    if i == 3:
        x0, x1 = make_generator(0, k, conv), make_generator(1, k, conv)
        return toeplitz_inv(x1) * toeplitz_inv(x0)
    if i not in (0, 1):
        raise ValueError("generator index must be 0, 1 or 3")
    g = _leading(conv, i, k)
    corr = conv.corrections[i]
    if not corr:
        return g
    extra = (corr + (0,) * (3 * k))[: 3 * k]
    return ToeplitzElement(k, tuple(a ^ b for a, b in zip(g.data, extra)))


def generators(k: int, convention: Convention | None = None) -> tuple[ToeplitzElement, ...]:
    return tuple(make_generator(i, k, convention) for i in GENERATOR_INDICES)


def relators_hold(x0: ToeplitzElement, x1: ToeplitzElement) -> dict[str, bool]:
    return {name: evaluate_word(w, x0, x1).is_identity() for name, w in RELATORS.items()}


def power_formula_check(i: int, l: int, k: int, convention: Convention | None = None) -> bool:
    """x_i^(2^l) = M_{2^l - 1}(alpha_i or beta_i, ...) on its leading diagonal.

    alpha for even l, beta for odd l.  Only the first non-vanishing
    super-diagonal is determined by the seeds; the trailing "..." is not.
    """
    conv = convention if convention is not None else default_convention()
    lead = 2**l - 1
    if lead > k:
        raise ValueError("need 2^l - 1 <= k")
    x = toeplitz_pow(make_generator(i, k, conv), 2**l)
    target = conv.pattern(conv.seed_blocks(i, "alpha" if l % 2 == 0 else "beta"), lead, k)
    span = min(lead + 1, k)
    return x.data[: 3 * span] == target.data[: 3 * span]


def _bfs_order(gens: Sequence[ToeplitzElement], cap: int) -> int:
    """Order of the group generated by ``gens`` and their inverses, or -1 past ``cap``."""
    k = gens[0].k
    moves = [g.data for g in gens] + [_inv(g.data, k) for g in gens]
    start = (0,) * (3 * k)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for m in moves:
            y = _mul(x, m, k)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    return -1
                queue.append(y)
    return len(seen)


# ---------------------------------------------------------------------------
# Calibration


def _derived_beta(conv: Convention, i: int) -> Blocks:
    """Leading blocks of x_i^2 under ``conv`` (uncorrected seeds)."""
    sq = toeplitz_pow(_leading(conv, i, 2), 2)
    return sq.data[3:6]  # type: ignore[return-value]


def _gate(conv: Convention) -> list[str]:
    """Leading-order checks a reading convention must pass; returns failures."""
    failures = []
    x0, x1 = _leading(conv, 0, 4), _leading(conv, 1, 4)
    for k in (2, 3, 4):
        ok = relators_hold(x0.truncate(k), x1.truncate(k))
        if not all(ok.values()):
            failures.append(f"relators at k={k}: {ok}")
    sd = conv.seed_depth()
    x3 = make_generator(3, sd, conv)
    if x3 != _leading(conv, 3, sd):
        failures.append("x3 = x1^-1 x0^-1 disagrees with the x3 seed")
    g2 = generators(2, conv)
    orders = [element_order(g) for g in g2]
    if orders != [4, 4, 4]:
        failures.append(f"generator orders at k=2: {orders}")
    n2 = _bfs_order(g2, 64)
    if n2 != 32:
        failures.append(f"|G_2| = {n2}")
    for i in GENERATOR_INDICES:
        for l in range(4):
            if not power_formula_check(i, l, 8, conv):
                failures.append(f"power formula i={i} l={l}")
    return failures


def _repair_betas(conv: Convention) -> Convention:
    """Replace a displayed beta_i that merely repeats alpha_i by the value x_i^2 forces."""
    repairs = []
    notes = []
    for i in GENERATOR_INDICES:
        s = SEEDS[i]
        if s.beta == s.alpha:
            derived = _derived_beta(conv, i)
            if conv.reverse:
                derived = derived[::-1]
            repairs.append((i, derived))
            notes.append(f"beta_{i} display repeats alpha_{i}; using leading blocks of x_{i}^2")
    return Convention(conv.layout, conv.reverse, conv.swap, repaired_beta=tuple(repairs), notes=tuple(notes))


def candidate_conventions() -> Iterator[Convention]:
    for layout, reverse, swap in product(LAYOUTS, (False, True), (False, True)):
        yield Convention(layout, reverse, swap)


def _relator_diag(x0: tuple[int, ...], x1: tuple[int, ...], m: int) -> int:
    """Super-diagonal m of all relators at depth m, packed into an int."""
    t0, t1 = x0[: 3 * m], x1[: 3 * m]
    out = 0
    letters = {"a": t0, "A": _inv(t0, m), "b": t1, "B": _inv(t1, m)}
    for j, w in enumerate(RELATORS.values()):
        acc: tuple[int, ...] = (0,) * (3 * m)
        for c in w:
            acc = _mul(acc, letters[c], m)
        for r in range(3):
            out |= acc[3 * (m - 1) + r] << (27 * j + 9 * r)
    return out


def _get_diag(x: tuple[int, ...], d: int) -> int:
    i = 3 * (d - 1)
    return x[i] | (x[i + 1] << 9) | (x[i + 2] << 18)


def _set_diag(x: tuple[int, ...], d: int, v: int) -> tuple[int, ...]:
    i = 3 * (d - 1)
    y = list(x)
    y[i : i + 3] = [v & 511, (v >> 9) & 511, (v >> 18) & 511]
    return tuple(y)


def _apply(x0, x1, d, v):
    return (
        _set_diag(x0, d, _get_diag(x0, d) ^ (v & ((1 << 27) - 1))),
        _set_diag(x1, d, _get_diag(x1, d) ^ (v >> 27)),
    )


def _gauge(x0, x1, d, depth):
    """Changes on super-diagonal d induced by conjugating with 1 + E, E on d - 1."""
    vecs = []
    for bit in range(27):
        y = _set_diag((0,) * (3 * depth), d - 1, 1 << bit)
        yi = _inv(y, depth)
        c0 = _mul(_mul(y, x0, depth), yi, depth)
        c1 = _mul(_mul(y, x1, depth), yi, depth)
        vecs.append((_get_diag(c0, d) ^ _get_diag(x0, d)) | ((_get_diag(c1, d) ^ _get_diag(x1, d)) << 27))
    return vecs


def _lift(x0, x1, m: int, depth: int, stats: dict) -> tuple | None:
    """Depth-first search for corrections making relators vanish up to ``depth``.

    At level m the relator diagonal m depends affinely on super-diagonal m - 3
    of the generators.  Solutions are enumerated modulo conjugation.
    """
    stats["nodes"] = stats.get("nodes", 0) + 1
    if m > depth:
        return x0, x1
    d = m - 3
    c = _relator_diag(x0, x1, m)
    cols = []
    for bit in range(54):
        y0, y1 = _apply(x0, x1, d, 1 << bit)
        cols.append(_relator_diag(y0, y1, m) ^ c)
    p = gf2.solve(cols, c)
    if p is None:
        return None
    span = gf2.rref(_gauge(x0, x1, d, depth))[0]
    free: list[int] = []
    for v in gf2.nullspace(cols):
        if gf2.rank(span + free + [v]) > len(span) + len(free):
            free.append(v)
    log.debug("level %d: kernel mod gauge %d", m, len(free))
    for t in range(1 << len(free)):
        v = p
        for j, b in enumerate(free):
            if (t >> j) & 1:
                v ^= b
        y0, y1 = _apply(x0, x1, d, v)
        found = _lift(y0, y1, m + 1, depth, stats)
        if found is not None:
            return found
    return None


def lift_convention(conv: Convention, depth: int = 6) -> Convention:
    """Add higher-diagonal corrections so relators hold through ``depth``."""
    x0, x1 = _leading(conv, 0, depth).data, _leading(conv, 1, depth).data
    stats: dict = {}
    found = _lift(x0, x1, 5, depth, stats)
    if found is None:
        raise NoValidConvention(f"no lift of {conv.name} to depth {depth}")
    y0, y1 = found
    corr0 = tuple(a ^ b for a, b in zip(y0, x0))
    corr1 = tuple(a ^ b for a, b in zip(y1, x1))
    log.info("lifted %s to depth %d after %d nodes", conv.name, depth, stats["nodes"])
    return Convention(
        conv.layout, conv.reverse, conv.swap, depth, (corr0, corr1), conv.repaired_beta, conv.notes
    )


def calibrate_convention(depth: int = 6) -> Convention:
    """Pick the seed reading that reproduces the known leading-order facts,
    then lift it so all relators hold through ``depth``."""
    passing = []
    for cand in candidate_conventions():
        cand = _repair_betas(cand)
        failures = _gate(cand)
        log.debug("%s: %s", cand.name, failures or "pass")
        if not failures:
            passing.append(cand)
    if not passing:
        raise NoValidConvention("no reading convention passes the gate")
    passing.sort(key=lambda c: c.name)
    if len(passing) > 1:
        warnings.warn(
            f"several conventions pass: {[c.name for c in passing]}; using {passing[0].name}",
            AmbiguousConvention,
            stacklevel=2,
        )
    conv = lift_convention(passing[0], depth) if depth >= 5 else passing[0]
    x0, x1 = make_generator(0, depth, conv), make_generator(1, depth, conv)
    for k in range(1, depth + 1):
        if not all(relators_hold(x0.truncate(k), x1.truncate(k)).values()):
            raise NoValidConvention(f"relators fail at k={k} after lifting")
    return conv


@lru_cache(maxsize=None)
def default_convention() -> Convention:
    return calibrate_convention()


# ---------------------------------------------------------------------------
# Enumeration


@dataclass
class GroupTable:
    """Enumerated G_k with canonical BFS indexing.

    ``gen_action[j][g]`` is the index of ``g * s_j`` for the j-th signed
    generator in ``SIGNED_GENERATORS``.
    """

    k: int
    elements: list[ToeplitzElement]
    gen_action: list[np.ndarray]
    inv: np.ndarray
    _index: dict | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, g: ToeplitzElement) -> int:
        if self._index is None:
            self._index = {e.data: i for i, e in enumerate(self.elements)}
        return self._index[g.data]

    def act(self, g: int, i: int, sign: int = 1) -> int:
        return int(self.gen_action[SIGNED_GENERATORS.index((i, sign))][g])

    # Binary cache: "XGRP1", u32 k, u32 order, u16 blocks, 7 u32 permutations.
    def save(self, path: str | Path) -> None:
        with open(path, "wb") as fh:
            fh.write(b"XGRP1")
            fh.write(struct.pack("<II", self.k, self.order))
            blocks = np.array([e.data for e in self.elements], dtype="<u2").reshape(-1)
            fh.write(blocks.tobytes())
            for perm in list(self.gen_action) + [self.inv]:
                fh.write(np.asarray(perm, dtype="<u4").tobytes())

    @classmethod
    def load(cls, path: str | Path) -> GroupTable:
        raw = Path(path).read_bytes()
        if raw[:5] != b"XGRP1":
            raise ValueError("bad magic")
        k, order = struct.unpack_from("<II", raw, 5)
        off = 13
        nblk = order * 3 * k
        blocks = np.frombuffer(raw, dtype="<u2", count=nblk, offset=off)
        off += 2 * nblk
        if len(raw) != off + 7 * 4 * order:
            raise ValueError("truncated group file")
        perms = [
            np.frombuffer(raw, dtype="<u4", count=order, offset=off + 4 * order * j).astype(np.int64)
            for j in range(7)
        ]
        if np.any(blocks > 511):
            raise ValueError("block out of range")
        rows = blocks.reshape(order, 3 * k).tolist()
        elements = [ToeplitzElement(k, tuple(r)) for r in rows]
        table = cls(k, elements, perms[:6], perms[6])
        table.validate()
        return table

    def validate(self) -> None:
        if not self.elements[0].is_identity():
            raise ValueError("element 0 must be the identity")
        n = self.order
        if n & (n - 1):
            raise ValueError("order is not a power of 2")
        ident = np.arange(n)
        for perm in list(self.gen_action) + [self.inv]:
            if len(perm) != n or perm.min() < 0 or perm.max() >= n:
                raise ValueError("permutation entry out of range")
        for j in range(0, 6, 2):
            f, g = self.gen_action[j], self.gen_action[j + 1]
            if not (np.array_equal(f[g], ident) and np.array_equal(g[f], ident)):
                raise ValueError("generator actions are not mutually inverse")
        if not np.array_equal(self.inv[self.inv], ident):
            raise ValueError("inverse map is not an involution")


def enumerate_group(
    k: int, convention: Convention | None = None, max_order: int = 1 << 20
) -> GroupTable:
    """BFS closure of the identity under the six signed generators."""
    if k < 1:
        raise ValueError("k must be >= 1")
    conv = convention if convention is not None else default_convention()
    if conv.layout == "residue" and k > max(conv.depth, 4):
        raise UncalibratedConvention(f"convention certified only through depth {conv.depth}")
    gens = generators(k, conv)
    moves: list[tuple[int, ...]] = []
    for g in gens:
        moves.append(g.data)
        moves.append(_inv(g.data, k))
    start = (0,) * (3 * k)
    index = {start: 0}
    elements = [start]
    actions: list[list[int]] = [[] for _ in moves]
    head = 0
    while head < len(elements):
        x = elements[head]
        head += 1
        for j, m in enumerate(moves):
            y = _mul(x, m, k)
            idx = index.get(y)
            if idx is None:
                idx = len(elements)
                if idx >= max_order:
                    raise RuntimeError(f"group order exceeds cap {max_order}")
                index[y] = idx
                elements.append(y)
            actions[j].append(idx)
    inv = np.array([index[_inv(x, k)] for x in elements], dtype=np.int64)
    table = GroupTable(
        k,
        [ToeplitzElement(k, x) for x in elements],
        [np.array(a, dtype=np.int64) for a in actions],
        inv,
    )
    table._index = index
    return table
