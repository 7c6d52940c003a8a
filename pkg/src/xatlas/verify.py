"""Verification suites, reports and the on-disk cache."""

from __future__ import annotations

import json
import logging
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

import numpy as np
import sympy

from . import __version__
from .graph import (
    LabeledGraph,
    cayley_graph,
    delta_y,
    diameter,
    dual_tk,
    is_isomorphic,
    read_edge_list,
    relator_triangles,
    vertex_connectivity,
    write_edge_list,
)
from .modular import XYZ_MOD8, PSL2Elem, psl2_enumerate, subgroup_closure, u_p_cayley, word_isomorphism
from .platonic import (
    build_modified,
    build_platonic,
    constructed_counts,
    count_formulas,
    expected_spectrum_modified,
    wheel_lemma_check,
)
from .spectral import (
    Spectrum,
    correspondence_check,
    exact_multiplicity,
    extreme_eigs,
    full_spectrum,
    integer_annihilator_check,
    largest_nontrivial,
    ramanujan_check,
    ramanujan_from_extreme,
    spectrum_inclusion,
    sqrt_pairing_check,
    transform_spectrum_check,
)
from .toeplitz import (
    GroupTable,
    ToeplitzElement,
    default_convention,
    element_order,
    enumerate_group,
    generators,
    make_generator,
    power_formula_check,
    relators_hold,
    toeplitz_inv,
)
from .topology import (
    genus_platonic_surface,
    genus_surface_tk,
    noniso_inequality,
    strictly_increasing,
    summarize_platonic,
    summarize_tk,
    tk_counts,
)

log = logging.getLogger(__name__)

SUITES = ("main", "platonic", "crosslink")
GROUP_ORDERS = {1: 4, 2: 32, 3: 128, 4: 1024, 5: 8192, 6: 32768}
EIGEN_TABLE = {2: 2.828427124746190, 3: 4.340172973252067, 4: 4.475244292138809, 5: 5.160252515773351}
X2_TABLE = {"6": 1, "sqrt(8)": 6, "2": 6, "0": 4, "-2": 9, "-sqrt(8)": 6}
PI8_TABLE = {"8": 1, "sqrt(8)": 6, "0": 9, "-sqrt(8)": 6, "-4": 2}
RAMANUJAN_X = {2: True, 3: True, 4: False}
RAMANUJAN_T = {2: True, 3: True, 4: True, 5: False}
MODIFIED_PRIMES = (5, 7, 11, 13)
WHEEL_PRIMES = (5, 7, 11)
CAYLEY_PRIMES = (5, 7)
SAMPLE_SEED = 0


# ---------------------------------------------------------------------------
# Results


@dataclass
class CheckResult:
    name: str
    status: str  # "pass", "fail" or "skip"
    expected: Any
    actual: Any
    tolerance: float | None = None
    runtime_ms: float = 0.0

    def as_dict(self, timing: bool = False) -> dict:
        d = {
            "name": self.name,
            "status": self.status,
            "expected": self.expected,
            "actual": self.actual,
            "tolerance": self.tolerance,
        }
        if timing:
            d["runtime_ms"] = round(self.runtime_ms, 1)
        return d


@dataclass
class Report:
    suite: str
    config: dict
    results: list[CheckResult] = field(default_factory=list)
    version: str = __version__

    @property
    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "skip": 0}
        for r in self.results:
            out[r.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return self.counts["fail"] == 0

    def as_dict(self, timing: bool = False) -> dict:
        return {
            "suite": self.suite,
            "version": self.version,
            "config": self.config,
            "summary": self.counts,
            "results": [r.as_dict(timing) for r in self.results],
        }

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.as_dict(timing), indent=2, sort_keys=True, default=_jsonable) + "\n"

    def to_markdown(self, timing: bool = False) -> str:
        c = self.counts
        lines = [
            f"# xatlas verification: {self.suite}",
            "",
            f"version {self.version}; config {json.dumps(self.config, sort_keys=True)}",
            "",
            f"pass {c['pass']}, fail {c['fail']}, skip {c['skip']}",
            "",
            "| check | status | expected | actual | tol |" + (" ms |" if timing else ""),
            "|---|---|---|---|---|" + ("---|" if timing else ""),
        ]
        for r in self.results:
            row = f"| {r.name} | {r.status.upper()} | {_cell(r.expected)} | {_cell(r.actual)} | {r.tolerance if r.tolerance is not None else ''} |"
            if timing:
                row += f" {r.runtime_ms:.0f} |"
            lines.append(row)
        return "\n".join(lines) + "\n"


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (set, frozenset, tuple)):
        return list(x)
    raise TypeError(f"not serialisable: {type(x)}")


def _cell(x: Any) -> str:
    return json.dumps(x, sort_keys=True, default=_jsonable).replace("|", "/")


# ---------------------------------------------------------------------------
# Cache and memoised objects


def default_cache_dir() -> Path | None:
    env = os.environ.get("XATLAS_CACHE")
    return Path(env) if env else None


class Context:
    """Parameters plus memoised groups, graphs and spectra for one run."""

    def __init__(
        self,
        kmax: int = 4,
        pmax: int = 13,
        nmax: int = 20,
        tol: float = 1e-9,
        extended: bool = False,
        cache_dir: str | Path | None = None,
    ):
        self.kmax, self.pmax, self.nmax, self.tol, self.extended = kmax, pmax, nmax, tol, extended
        self.cache_dir = Path(cache_dir) if cache_dir else None
        self._memo: dict[tuple, Any] = {}

    def config(self) -> dict:
        return {
            "kmax": self.kmax,
            "pmax": self.pmax,
            "nmax": self.nmax,
            "tol": self.tol,
            "extended": self.extended,
            "seed": SAMPLE_SEED,
        }

    def memo(self, key: tuple, fn: Callable[[], Any]) -> Any:
        if key not in self._memo:
            self._memo[key] = fn()
        return self._memo[key]

    def group(self, k: int) -> GroupTable:
        return self.memo(("group", k), lambda: load_group(k, self.cache_dir))

    def x(self, k: int) -> LabeledGraph:
        return self.memo(("x", k), lambda: cayley_graph(self.group(k)))

    def t(self, k: int) -> LabeledGraph:
        return self.memo(("t", k), lambda: delta_y(self.x(k), relator_triangles(self.group(k))))

    def spectrum(self, kind: str, k: int) -> Spectrum:
        g = self.x(k) if kind == "x" else self.t(k)
        return self.memo(("spec", kind, k), lambda: full_spectrum(g, allow_multi=True))

    def platonic(self, N: int):
        return self.memo(("pi", N), lambda: build_platonic(N))

    def modified(self, p: int):
        return self.memo(("pim", p), lambda: build_modified(p))


def load_group(k: int, cache_dir: Path | None = None) -> GroupTable:
    """Enumerate G_k, reusing ``<cache>/group_k<k>.xgrp`` when it is sound."""
    if cache_dir is None:
        return enumerate_group(k)
    path = Path(cache_dir) / f"group_k{k}.xgrp"
    if path.exists():
        try:
            table = GroupTable.load(path)
            x0 = make_generator(0, k)
            if table.k == k and table.elements[table.act(0, 0)] == x0:
                return table
            log.warning("cache %s does not match the generators; recomputing", path)
        except (ValueError, IndexError, OSError) as exc:
            log.warning("corrupt cache %s (%s); recomputing", path, exc)
    table = enumerate_group(k)
    Path(cache_dir).mkdir(parents=True, exist_ok=True)
    table.save(path)
    return table


# ---------------------------------------------------------------------------
# Graph export


FAMILIES = ("x", "t", "tdual", "platonic", "modified", "up")


def build_family(family: str, param: int, ctx: Context | None = None) -> LabeledGraph:
    ctx = ctx or Context(cache_dir=default_cache_dir())
    if family == "x":
        return ctx.x(param)
    if family == "t":
        return ctx.t(param)
    if family == "tdual":
        return dual_tk(ctx.group(param))
    if family == "platonic":
        return ctx.platonic(param).base
    if family == "modified":
        return ctx.modified(param).base
    if family == "up":
        return u_p_cayley(param)
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def export_graph(family: str, param: int, path: str | Path, ctx: Context | None = None) -> LabeledGraph:
    g = build_family(family, param, ctx)
    write_edge_list(g, path)
    return g


def import_graph(path: str | Path) -> LabeledGraph:
    return read_edge_list(path)


# ---------------------------------------------------------------------------
# Checks.  Each returns (expected, actual, passed, tolerance).


Outcome = tuple[Any, Any, bool, "float | None"]


def _exact(expected: Any, actual: Any) -> Outcome:
    return expected, actual, expected == actual, None


def check_group_orders(ctx: Context) -> Outcome:
    ks = range(1, max(5, min(ctx.kmax, 6)) + 1)
    return _exact({k: GROUP_ORDERS[k] for k in ks}, {k: ctx.group(k).order for k in ks})


def check_relators(ctx: Context) -> Outcome:
    actual = {k: all(relators_hold(*generators(k)[:2]).values()) for k in range(1, 7)}
    return _exact({k: True for k in range(1, 7)}, actual)


def check_x3_identity(ctx: Context) -> Outcome:
    actual = {}
    for k in range(1, 7):
        x0, x1, x3 = generators(k)
        actual[k] = x3 == toeplitz_inv(x1) * toeplitz_inv(x0)
    return _exact({k: True for k in range(1, 7)}, actual)


def check_power_formula(ctx: Context) -> Outcome:
    actual = {f"x{i}^{l}": power_formula_check(i, l, 8) for i in (0, 1, 3) for l in (1, 2, 3)}
    return _exact({key: True for key in actual}, actual)


def check_generator_orders(ctx: Context) -> Outcome:
    bad = []
    for k in range(1, 101):
        want = 2 ** (k.bit_length())
        for i in (0, 1, 3):
            o = element_order(make_generator(i, k))
            if o != want:
                bad.append((k, i, o))
    return _exact([], bad)


def check_eigen_table(ctx: Context) -> Outcome:
    ks = [k for k in (2, 3, 4) if k <= ctx.kmax]
    actual = {k: largest_nontrivial(ctx.spectrum("x", k), 6.0) for k in ks}
    expected = {k: EIGEN_TABLE[k] for k in ks}
    ok = all(abs(actual[k] - expected[k]) <= ctx.tol for k in ks)
    return expected, actual, ok, ctx.tol


def check_eigen_x5(ctx: Context) -> Outcome:
    v = extreme_eigs(ctx.x(5), tol=1e-9)
    return EIGEN_TABLE[5], v, abs(v - EIGEN_TABLE[5]) <= 1e-6, 1e-6


def check_x2_table(ctx: Context) -> Outcome:
    return _exact(X2_TABLE, ctx.spectrum("x", 2).by_symbol())


def check_pi8_table(ctx: Context) -> Outcome:
    return _exact(PI8_TABLE, full_spectrum(ctx.platonic(8).base).by_symbol())


def check_correspondence_exact(ctx: Context) -> Outcome:
    ks = range(1, min(ctx.kmax, 4) + 1)
    return _exact({k: True for k in ks}, {k: correspondence_check(ctx.x(k), ctx.t(k)) for k in ks})


def check_correspondence_spectra(ctx: Context) -> Outcome:
    ks = range(1, min(ctx.kmax, 4) + 1)
    actual = {k: transform_spectrum_check(ctx.spectrum("x", k), ctx.spectrum("t", k), 1e-6) for k in ks}
    return {k: True for k in ks}, actual, all(actual.values()), 1e-6


def check_spectral_gap_window(ctx: Context) -> Outcome:
    ks = range(1, min(ctx.kmax, 4) + 1)
    hits = {k: [v for v in ctx.spectrum("x", k).values() if -6 - 1e-9 <= v < -3 - 1e-9] for k in ks}
    return _exact({k: [] for k in ks}, hits)


def check_ramanujan(ctx: Context) -> Outcome:
    expected, actual, margins = {}, {}, {}
    for k, want in RAMANUJAN_X.items():
        if k <= ctx.kmax:
            r = ramanujan_check(ctx.spectrum("x", k), 6)
            expected[f"X_{k}"], actual[f"X_{k}"], margins[f"X_{k}"] = want, r.is_ramanujan, r.margin
    for k, want in RAMANUJAN_T.items():
        if k <= min(ctx.kmax, 4):
            r = ramanujan_check(ctx.spectrum("t", k), 3)
            expected[f"T_{k}"], actual[f"T_{k}"], margins[f"T_{k}"] = want, r.is_ramanujan, r.margin
    ok = expected == actual
    return expected, {"status": actual, "margin": {k: round(v, 12) for k, v in margins.items()}}, ok, None


def check_ramanujan_t5(ctx: Context) -> Outcome:
    # T_5 is bipartite, so its spectrum is symmetric and the largest value suffices.
    r = ramanujan_from_extreme(extreme_eigs(ctx.t(5), tol=1e-9, deflate_bipartite=True), 3)
    return False, {"status": r.is_ramanujan, "margin": round(r.margin, 9)}, r.is_ramanujan is False, None


def check_tower(ctx: Context) -> Outcome:
    ks = [k for k in (2, 3, 4) if k <= ctx.kmax]
    actual = {
        f"X_{a}<X_{b}": spectrum_inclusion(ctx.spectrum("x", a), ctx.spectrum("x", b), 1e-6)
        for a, b in zip(ks, ks[1:])
    }
    return {key: True for key in actual}, actual, all(actual.values()), 1e-6


def check_noniso(ctx: Context) -> Outcome:
    return _exact([1, 2], [k for k in range(1, 65) if noniso_inequality(k)])


def check_tk_counts(ctx: Context) -> Outcome:
    ks = [k for k in (2, 3, 4) if k <= ctx.kmax]
    actual = {}
    for k in ks:
        c = tk_counts(ctx.group(k))
        actual[k] = {"counts": bool(c), "genus": c.genus, "uncorrected_V-E+F": c.displayed_genus}
    expected = {}
    for k in ks:
        r, K = k.bit_length(), 8 * (k // 3) + 3 * (k % 3)
        g = 1 + Fraction(2) ** (K - 2) - 3 * Fraction(2) ** (K - r - 2)
        expected[k] = {"counts": True, "genus": int(g), "uncorrected_V-E+F": actual[k]["uncorrected_V-E+F"]}
    return _exact(expected, actual)


def check_euler_tk(ctx: Context) -> Outcome:
    ks = range(1, min(ctx.kmax, 4) + 1)
    actual = {k: genus_surface_tk(ctx.group(k)) == summarize_tk(ctx.group(k)).genus for k in ks}
    return _exact({k: True for k in ks}, actual)


def check_ratio_tk(ctx: Context) -> Outcome:
    ks = [k for k in (2, 3, 4) if k <= ctx.kmax]
    ratios = [summarize_tk(ctx.group(k)).ratio for k in ks]
    ok = bool(ratios) and ratios[0] == Fraction(5, 16) and strictly_increasing(ratios) and all(r <= 1 for r in ratios)
    return "strictly increasing from 5/16, all <= 1", {k: r for k, r in zip(ks, ratios)}, ok, None


def check_platonic_counts(ctx: Context) -> Outcome:
    Ns = range(3, ctx.nmax + 1)
    return _exact(
        {N: count_formulas(N).__dict__ for N in Ns},
        {N: constructed_counts(ctx.platonic(N)).__dict__ for N in Ns},
    )


def check_modified_float(ctx: Context) -> Outcome:
    ps = [p for p in MODIFIED_PRIMES if p <= ctx.pmax]
    expected = {p: expected_spectrum_modified(p).by_symbol() for p in ps}
    actual = {p: full_spectrum(ctx.modified(p).base, tol=1e-8).by_symbol() for p in ps}
    return expected, actual, expected == actual, 1e-8


def check_modified_exact(ctx: Context) -> Outcome:
    ps = [p for p in MODIFIED_PRIMES if p <= ctx.pmax]
    expected, actual = {}, {}
    for p in ps:
        g = ctx.modified(p).base
        ann = integer_annihilator_check(g, [[-(p - 1), 1], [1, 1], [0, 1], [-p, 0, 1]])
        mult = {
            "p-1": exact_multiplicity(g, [-(p - 1), 1]),
            "-1": exact_multiplicity(g, [1, 1]),
            "0": exact_multiplicity(g, [0, 1]),
            "+-sqrt(p)": exact_multiplicity(g, [-p, 0, 1]),
        }
        pairing = sqrt_pairing_check(full_spectrum(g), p)
        actual[p] = {"annihilator": ann, "mult": mult, "pairing": pairing}
        expected[p] = {
            "annihilator": True,
            "mult": {"p-1": 1, "-1": p - 1, "0": (p - 3) // 2, "+-sqrt(p)": (p - 1) * (p - 3) // 2},
            "pairing": True,
        }
    return _exact(expected, actual)


def check_connectivity(ctx: Context) -> Outcome:
    ps = [p for p in MODIFIED_PRIMES if p <= ctx.pmax]
    expected, actual = {}, {}
    for p in ps:
        full, mod = ctx.platonic(p).base, ctx.modified(p).base
        expected[p] = {"kappa": p, "kappa'": p - 1, "diam<=3": True, "diam'": 3}
        actual[p] = {
            "kappa": vertex_connectivity(full),
            "kappa'": vertex_connectivity(mod),
            "diam<=3": diameter(full) <= 3,
            "diam'": diameter(mod),
        }
    return _exact(expected, actual)


def check_wheels(ctx: Context) -> Outcome:
    ps = [p for p in WHEEL_PRIMES if p <= ctx.pmax]
    actual = {p: list(wheel_lemma_check(ctx.platonic(p), exhaustive_limit=11).__dict__.values()) for p in ps}
    return _exact({p: [True, True, True] for p in ps}, actual)


def check_euler_platonic(ctx: Context) -> Outcome:
    Ns = range(3, ctx.nmax + 1)
    actual = {N: genus_platonic_surface(N) == summarize_platonic(N).genus for N in Ns}
    return _exact({N: True for N in Ns}, actual)


def check_ratio_platonic(ctx: Context) -> Outcome:
    ps = [p for p in range(7, 98) if sympy.isprime(p)]
    ratios = [summarize_platonic(p, constructed=p <= ctx.nmax).ratio for p in ps]
    ok = strictly_increasing(ratios) and all(r < 1 for r in ratios)
    return "strictly increasing, all < 1", {ps[0]: ratios[0], ps[-1]: ratios[-1]}, ok, None


def check_cayley_up(ctx: Context) -> Outcome:
    return _exact(
        {p: True for p in CAYLEY_PRIMES},
        {p: is_isomorphic(ctx.modified(p).base, u_p_cayley(p)) is not None for p in CAYLEY_PRIMES},
    )


def check_dual_t2(ctx: Context) -> Outcome:
    d, pi = dual_tk(ctx.group(2)), ctx.platonic(8).base
    return _certified_iso(d, pi)


def check_dual_t1(ctx: Context) -> Outcome:
    return _certified_iso(dual_tk(ctx.group(1)), ctx.platonic(4).base)


def _certified_iso(a: LabeledGraph, b: LabeledGraph) -> Outcome:
    phi = is_isomorphic(a, b)
    ok = phi is not None and _is_bijection(a, b, phi)
    return True, ok, ok, None


def _is_bijection(a: LabeledGraph, b: LabeledGraph, phi: dict[int, int]) -> bool:
    if sorted(phi) != list(range(a.n)) or sorted(phi.values()) != list(range(b.n)):
        return False
    mapped = {(min(phi[u], phi[v]), max(phi[u], phi[v])) for u, v in a.edges}
    return mapped == b.edge_set() and a.m == b.m


def check_psl2_subgroup(ctx: Context) -> Outcome:
    r = subgroup_closure(XYZ_MOD8)
    return _exact(
        {"psl2_order": 192, "order": 32, "normal": True, "index": 6},
        {"psl2_order": psl2_enumerate(8).order, "order": r.order, "normal": r.normal, "index": r.index},
    )


def check_psl2_iso(ctx: Context) -> Outcome:
    x0, x1, x3 = generators(2)
    ident = ToeplitzElement.identity(2)
    phi = word_isomorphism(
        XYZ_MOD8, (x0, x1, x3), lambda a, b: a * b, lambda a, b: a * b, PSL2Elem.identity(8), ident
    )
    size = len(phi) if phi is not None else 0
    return _exact(32, size)


def check_genus_t2_pi8(ctx: Context) -> Outcome:
    return _exact({"T_2": 5, "Pi_8": 5}, {"T_2": genus_surface_tk(ctx.group(2)), "Pi_8": genus_platonic_surface(8)})


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    fn: Callable[[Context], Outcome]
    extended: bool = False


REGISTRY: tuple[Check, ...] = (
    Check("main", "group_orders", check_group_orders),
    Check("main", "relators_k_le_6", check_relators),
    Check("main", "x3_is_inverse_product", check_x3_identity),
    Check("main", "power_formula_l_le_3", check_power_formula),
    Check("main", "generator_orders_k_le_100", check_generator_orders),
    Check("main", "eigenvalue_table", check_eigen_table),
    Check("main", "eigenvalue_x5", check_eigen_x5, extended=True),
    Check("main", "spectrum_table_x2", check_x2_table),
    Check("main", "correspondence_exact", check_correspondence_exact),
    Check("main", "correspondence_spectra", check_correspondence_spectra),
    Check("main", "no_eigenvalue_in_[-6,-3)", check_spectral_gap_window),
    Check("main", "ramanujan_status", check_ramanujan),
    Check("main", "ramanujan_t5", check_ramanujan_t5, extended=True),
    Check("main", "spectrum_tower", check_tower),
    Check("main", "noniso_inequality", check_noniso),
    Check("main", "tk_counts_and_genus", check_tk_counts),
    Check("main", "euler_tk", check_euler_tk),
    Check("main", "nonflatness_tk", check_ratio_tk),
    Check("platonic", "platonic_counts", check_platonic_counts),
    Check("platonic", "spectrum_table_pi8", check_pi8_table),
    Check("platonic", "modified_spectrum_float", check_modified_float),
    Check("platonic", "modified_spectrum_exact", check_modified_exact),
    Check("platonic", "connectivity_diameter", check_connectivity),
    Check("platonic", "wheel_lemma", check_wheels),
    Check("platonic", "euler_platonic", check_euler_platonic),
    Check("platonic", "nonflatness_platonic", check_ratio_platonic),
    Check("platonic", "modified_is_cayley_up", check_cayley_up),
    Check("crosslink", "dual_t2_is_pi8", check_dual_t2),
    Check("crosslink", "dual_t1_is_octahedron", check_dual_t1),
    Check("crosslink", "xyz_subgroup_mod8", check_psl2_subgroup),
    Check("crosslink", "xyz_isomorphic_to_g2", check_psl2_iso),
    Check("crosslink", "genus_t2_equals_pi8", check_genus_t2_pi8),
)


def run_check(check: Check, ctx: Context) -> CheckResult:
    if check.extended and not ctx.extended:
        return CheckResult(check.name, "skip", None, "needs --extended")
    start = time.perf_counter()
    try:
        expected, actual, ok, tol = check.fn(ctx)
        status = "pass" if ok else "fail"
    except Exception as exc:  # a failing check must not stop the suite
        log.exception("check %s raised", check.name)
        expected, actual, tol, status = None, f"error: {type(exc).__name__}: {exc}", None, "fail"
    ms = (time.perf_counter() - start) * 1000
    return CheckResult(check.name, status, _plain(expected), _plain(actual), tol, ms)


def _plain(x: Any) -> Any:
    """Canonical JSON-ready form with string keys."""
    return json.loads(json.dumps(x, sort_keys=True, default=_jsonable))


def run_suite(
    name: str,
    kmax: int = 4,
    pmax: int = 13,
    tol: float = 1e-9,
    extended: bool = False,
    nmax: int = 20,
    cache_dir: str | Path | None = None,
    ctx: Context | None = None,
) -> Report:
    if name not in SUITES + ("all",):
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    if not 1 <= kmax <= 6:
        raise ValueError("kmax must lie in [1, 6]")
    ctx = ctx or Context(kmax, pmax, nmax, tol, extended, cache_dir if cache_dir is not None else default_cache_dir())
    default_convention()
    report = Report(name, ctx.config())
    for check in REGISTRY:
        if name in ("all", check.suite):
            report.results.append(run_check(check, ctx))
    return report
