"""Adjacency spectra: dense and Lanczos solvers, clustering, and spectral checks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from .graph import LabeledGraph, TrianglePartition, delta_y

FULL_SPECTRUM_CAP = 4096
SELF_CHECK_CAP = 2048
SNAP_TOL = 1e-8
SNAP_MAX_RADICAND = 64


@dataclass(frozen=True)
class Cluster:
    value: float
    mult: int
    residual: float
    label: str  # "int", "sqrt" or "other"
    symbol: str


@dataclass
class Spectrum:
    clusters: list[Cluster]
    n: int

    def __post_init__(self) -> None:
        if sum(c.mult for c in self.clusters) != self.n:
            raise ValueError("multiplicities do not sum to n")

    def as_dict(self) -> dict[float, int]:
        return {c.value: c.mult for c in self.clusters}

    def by_symbol(self) -> dict[str, int]:
        return {c.symbol: c.mult for c in self.clusters}

    def mult(self, value: float, tol: float = 1e-6) -> int:
        return sum(c.mult for c in self.clusters if abs(c.value - value) <= tol)

    def values(self) -> list[float]:
        return [c.value for c in self.clusters]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "clusters": [
                {"value": c.value, "label": c.label, "mult": c.mult, "residual": c.residual}
                for c in self.clusters
            ],
        }


@dataclass
class EigenFunction:
    values: np.ndarray
    eigenvalue: float

    def residual(self, g: LabeledGraph) -> float:
        a = g.adjacency()
        return float(np.max(np.abs(a @ self.values - self.eigenvalue * self.values)))

    def verify(self, g: LabeledGraph, tol: float = 1e-9) -> bool:
        norm = float(g.degrees().max()) if g.n else 1.0
        return self.residual(g) <= tol * norm * max(1.0, float(np.max(np.abs(self.values))))


def snap(x: float, tol: float = SNAP_TOL) -> tuple[float, str, str]:
    """Exact value, label and symbol if x is an integer or +-sqrt(m), m <= 64."""
    r = round(x)
    if abs(x - r) <= tol:
        return float(r), "int", str(int(r))
    sq = x * x
    m = round(sq)
    if 1 < m <= SNAP_MAX_RADICAND and math.isqrt(m) ** 2 != m:
        exact = math.copysign(math.sqrt(m), x)
        if abs(x - exact) <= tol:
            return exact, "sqrt", f"{'-' if x < 0 else ''}sqrt({m})"
    return x, "other", repr(x)


def cluster_eigenvalues(
    w: np.ndarray, residuals: np.ndarray | None = None, tol: float = 1e-7, snap_tol: float = SNAP_TOL
) -> list[Cluster]:
    order = np.argsort(-w)
    w = w[order]
    res = np.zeros_like(w) if residuals is None else residuals[order]
    groups: list[list[int]] = []
    for i in range(len(w)):
        if groups and w[groups[-1][-1]] - w[i] <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    out = []
    for grp in groups:
        vals = w[grp]
        value, label, symbol = snap(float(vals.mean()), snap_tol)
        resid = float(np.max(np.abs(vals - value) + res[grp]))
        out.append(Cluster(value, len(grp), resid, label, symbol))
    return out


def full_spectrum(
    g: LabeledGraph, tol: float = 1e-7, self_check: bool = True, allow_multi: bool = False
) -> Spectrum:
    """All eigenvalues via LAPACK's symmetric tridiagonal reduction."""
    if not allow_multi:
        g.require_simple()
    if g.n > FULL_SPECTRUM_CAP:
        raise ValueError(f"n = {g.n} exceeds {FULL_SPECTRUM_CAP}; use extreme_eigs")
    a = g.dense()
    w, q = np.linalg.eigh(a)
    resid = np.linalg.norm(a @ q - q * w, axis=0)
    if self_check and g.n <= SELF_CHECK_CAP:
        d = max(1.0, float(g.degrees().max()))
        worst = float(np.max(np.abs(a @ q - q * w)))
        if worst > 1e-9 * d:
            raise ArithmeticError(f"eigensolver residual {worst:.2e} too large")
    return Spectrum(cluster_eigenvalues(w, resid, tol), g.n)


def lanczos_extreme(
    matvec: Callable[[np.ndarray], np.ndarray],
    n: int,
    deflate: Sequence[np.ndarray] = (),
    which: str = "largest",
    tol: float = 1e-6,
    maxiter: int = 800,
    seed: int = 0,
) -> tuple[float, float]:
    """Extreme eigenvalue of a symmetric operator on the complement of ``deflate``.

    Lanczos with full reorthogonalisation.  Returns (Ritz value, residual
    norm); the residual bounds the distance to the spectrum.
    """
    rng = np.random.default_rng(seed)
    defl = [v / np.linalg.norm(v) for v in deflate]

    def project(x: np.ndarray) -> np.ndarray:
        for v in defl:
            x = x - (v @ x) * v
        return x

    q = project(rng.standard_normal(n))
    q /= np.linalg.norm(q)
    maxiter = min(maxiter, n - len(defl))
    basis = np.empty((maxiter + 1, n))
    basis[0] = q
    alphas: list[float] = []
    betas: list[float] = []
    theta, resid = math.nan, math.inf
    for j in range(maxiter):
        w = project(matvec(basis[j]))
        alphas.append(float(basis[j] @ w))
        w -= alphas[-1] * basis[j]
        if j:
            w -= betas[-1] * basis[j - 1]
        for _ in range(2):
            w -= basis[: j + 1].T @ (basis[: j + 1] @ w)
        beta = float(np.linalg.norm(w))
        if j % 10 == 9 or beta < 1e-12 or j == maxiter - 1:
            evals, evecs = scipy.linalg.eigh_tridiagonal(np.array(alphas), np.array(betas))
            pick = -1 if which == "largest" else 0
            theta = float(evals[pick])
            resid = abs(beta * evecs[-1, pick])
            if resid <= tol or beta < 1e-12:
                return theta, resid
        betas.append(beta)
        basis[j + 1] = w / beta
    raise RuntimeError(f"Lanczos did not converge: residual {resid:.2e} after {maxiter} steps")


def extreme_eigs(
    g: LabeledGraph,
    which: str = "largest-nontrivial",
    tol: float = 1e-6,
    deflate_bipartite: bool = False,
    maxiter: int = 800,
) -> float:
    """Largest nontrivial or smallest adjacency eigenvalue of a connected regular graph."""
    deg = g.degrees()
    if deg.min() != deg.max():
        raise ValueError("graph is not regular")
    a = g.adjacency()
    deflate = []
    if which == "largest-nontrivial":
        deflate.append(np.ones(g.n))
        mode = "largest"
    elif which == "smallest":
        mode = "smallest"
    else:
        raise ValueError(f"unknown mode {which!r}")
    if deflate_bipartite:
        from .graph import bipartition

        color = bipartition(g)
        if color is None:
            raise ValueError("graph is not bipartite")
        deflate.append(1.0 - 2.0 * np.asarray(color, dtype=float))
    if g.n <= len(deflate) + 1:
        return full_spectrum(g).values()[1 if mode == "largest" else -1]
    theta, _ = lanczos_extreme(lambda x: a @ x, g.n, deflate, mode, tol, maxiter)
    return theta


def largest_nontrivial(s: Spectrum, degree: float, tol: float = 1e-7) -> float:
    """Largest eigenvalue after removing one copy of the degree."""
    vals = []
    for c in s.clusters:
        m = c.mult - (1 if abs(c.value - degree) <= tol else 0)
        if m > 0:
            vals.append(c.value)
    return max(vals)


# ---------------------------------------------------------------------------
# Correspondence between X_k and its Delta-Y transform


def correspondence_check(
    x: LabeledGraph, t: LabeledGraph, embedding: Sequence[int] | None = None, diagonal: int = 3
) -> bool:
    """Exact check that 2-walk counts in t on old vertices equal A_x + diagonal * I."""
    emb = np.arange(x.n) if embedding is None else np.asarray(embedding)
    at = t.adjacency(np.int64)
    two = (at @ at)[emb][:, emb]
    target = x.adjacency(np.int64) + diagonal * sp.identity(x.n, dtype=np.int64, format="csr")
    return (two != target).nnz == 0


def lift_eigenfunction(
    f: EigenFunction, x: LabeledGraph, t: TrianglePartition, sign: int = 1
) -> EigenFunction:
    """F_+- on the Delta-Y transform: copy f, put lambda^-1 * (triangle sum) on new vertices."""
    mu = f.eigenvalue
    if abs(mu + 3) < 1e-12:
        raise ZeroDivisionError("mu = -3: use kernel_lift_check")
    lam = math.copysign(math.sqrt(mu + 3), sign)
    tri = np.asarray(t.triples)
    new = f.values[tri].sum(axis=1) / lam
    return EigenFunction(np.concatenate([f.values, new]), lam)


def expanded(s: Spectrum) -> np.ndarray:
    return np.sort(np.concatenate([np.full(c.mult, c.value) for c in s.clusters]))


def transform_spectrum_check(sx: Spectrum, st: Spectrum, tol: float = 1e-6) -> bool:
    """sigma(T) = {+-sqrt(mu + 3) : mu in sigma(X)} plus zeros for the surplus vertices."""
    mus = expanded(sx)
    if mus.size and mus.min() < -3 - tol:
        return False
    roots = np.sqrt(np.clip(mus + 3, 0.0, None))
    extra = st.n - 2 * sx.n
    if extra < 0:
        return False
    predicted = np.sort(np.concatenate([roots, -roots, np.zeros(extra)]))
    return bool(np.max(np.abs(predicted - expanded(st)), initial=0.0) <= tol)


def kernel_lift_check(
    f: EigenFunction, x: LabeledGraph, t: TrianglePartition, tol: float = 1e-9
) -> bool:
    """True iff every triangle sum of f vanishes; then the zero extension is
    verified as a 0-eigenfunction of the transform."""
    tri = np.asarray(t.triples) if t.triples else np.zeros((0, 3), dtype=int)
    sums = f.values[tri].sum(axis=1) if len(tri) else np.zeros(0)
    if np.any(np.abs(sums) > tol):
        return False
    ext = EigenFunction(np.concatenate([f.values, np.zeros(len(t.triples))]), 0.0)
    if not np.any(f.values):
        return True
    ty = delta_y(x, t)
    return ext.residual(ty) <= tol * max(1.0, float(np.max(np.abs(f.values)))) * 3


# ---------------------------------------------------------------------------
# Spectral predicates


@dataclass(frozen=True)
class RamanujanResult:
    is_ramanujan: bool
    bound: float
    worst: float

    @property
    def margin(self) -> float:
        return self.bound - self.worst


def ramanujan_check(g: LabeledGraph | Spectrum, d: int, tol: float = 1e-9) -> RamanujanResult:
    s = full_spectrum(g) if isinstance(g, LabeledGraph) else g
    bound = 2 * math.sqrt(d - 1)
    worst = max((abs(c.value) for c in s.clusters if abs(abs(c.value) - d) > 1e-7), default=0.0)
    return RamanujanResult(worst <= bound + tol, bound, worst)


def ramanujan_from_extreme(worst: float, d: int, tol: float = 1e-9) -> RamanujanResult:
    bound = 2 * math.sqrt(d - 1)
    return RamanujanResult(worst <= bound + tol, bound, worst)


def spectrum_inclusion(small: Spectrum, big: Spectrum, tol: float = 1e-6) -> bool:
    bv = np.array(big.values())
    return all(np.min(np.abs(bv - v)) <= tol for v in small.values())


def sqrt_pairing_check(s: Spectrum, K: int, tol: float = 1e-6) -> bool:
    r = math.sqrt(K)
    return s.mult(r, tol) == s.mult(-r, tol)


# ---------------------------------------------------------------------------
# Exact integer certification


def _int_matrix(g: LabeledGraph) -> np.ndarray:
    return g.dense(np.int64).astype(object)


def poly_matrix(a: np.ndarray, coeffs: Sequence[int]) -> np.ndarray:
    """sum_i coeffs[i] * A^i with exact integers."""
    n = a.shape[0]
    out = np.zeros((n, n), dtype=object)
    power = np.identity(n, dtype=np.int64).astype(object)
    for c in coeffs:
        if c:
            out = out + c * power
        power = power.dot(a)
    return out


def integer_annihilator_check(g: LabeledGraph, factors: Sequence[Sequence[int]]) -> bool:
    """Exactly evaluate prod_f f(A) (big integers) and test for zero.

    Each factor is a coefficient list, lowest degree first: ``[-p, 0, 1]`` is A^2 - p.
    """
    g.require_simple()
    a = _int_matrix(g)
    m = np.identity(g.n, dtype=np.int64).astype(object)
    for f in factors:
        m = m.dot(poly_matrix(a, f))
    return not np.any(m != 0)


def bareiss_rank(m: np.ndarray) -> int:
    """Rank of an integer matrix by fraction-free Gaussian elimination."""
    a = [[int(v) for v in row] for row in np.asarray(m, dtype=object)]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    rank = 0
    prev = 1
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if a[r][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][c]
        for r in range(rank + 1, rows):
            arc = a[r][c]
            row_r, row_k = a[r], a[rank]
            for j in range(c + 1, cols):
                row_r[j] = (p * row_r[j] - arc * row_k[j]) // prev
            row_r[c] = 0
        prev = p
        rank += 1
        if rank == rows:
            break
    return rank


def exact_multiplicity(g: LabeledGraph, factor: Sequence[int]) -> int:
    """dim ker f(A): the number of eigenvalues (with multiplicity) that are roots of f.

    For f = A^2 - K this counts +sqrt(K) and -sqrt(K) together.
    """
    a = _int_matrix(g)
    return g.n - bareiss_rank(poly_matrix(a, factor))
