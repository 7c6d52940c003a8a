"""The fifteen acceptance criteria, each at its stated tolerance.

Every test prints one ``PASS``/``FAIL`` line, including on unexpected errors.
"""

import math
import time
from fractions import Fraction

import pytest
import sympy

from xatlas.graph import diameter, dual_tk, is_isomorphic, vertex_connectivity
from xatlas.modular import XYZ_MOD8, PSL2Elem, psl2_enumerate, subgroup_closure, u_p_cayley, word_isomorphism
from xatlas.platonic import build_platonic, constructed_counts, count_formulas, wheel_lemma_check
from xatlas.spectral import (
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
from xatlas.toeplitz import (
    ToeplitzElement,
    element_order,
    enumerate_group,
    generators,
    make_generator,
    power_formula_check,
    relators_hold,
    toeplitz_inv,
)
from xatlas.topology import (
    genus_platonic_surface,
    genus_surface_tk,
    noniso_inequality,
    r_and_K,
    summarize_platonic,
    summarize_tk,
    tk_counts,
)


@pytest.fixture
def verdict(capsys):
    """Run a criterion body returning (ok, detail) and print its verdict line."""

    def run(n: int, title: str, body):
        try:
            ok, detail = body()
        except Exception as exc:
            ok, detail = False, f"error {type(exc).__name__}: {exc}"
            with capsys.disabled():
                print(f"\nFAIL criterion {n:2d}: {title} | {detail}")
            raise
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n:2d}: {title} | {detail}")
        assert ok, detail

    return run


def test_c01_group_orders(verdict):
    def body():
        start = time.perf_counter()
        orders = {k: enumerate_group(k, max_order=2**20).order for k in range(1, 6)}
        secs = time.perf_counter() - start
        ok = orders == {1: 4, 2: 32, 3: 128, 4: 1024, 5: 8192} and secs < 60
        return ok, f"{orders} in {secs:.1f}s"

    verdict(1, "group orders", body)


def test_c02_calibration_gate(verdict):
    def body():
        start = time.perf_counter()
        relators = all(all(relators_hold(*generators(k)[:2]).values()) for k in range(1, 7))
        x3 = all(g[2] == toeplitz_inv(g[1]) * toeplitz_inv(g[0]) for g in map(generators, range(1, 7)))
        power = all(power_formula_check(i, l, 8) for i in (0, 1, 3) for l in (0, 1, 2, 3))
        orders = all(
            element_order(make_generator(i, k)) == 2 ** (math.floor(math.log2(k)) + 1)
            for k in range(1, 101)
            for i in (0, 1, 3)
        )
        secs = time.perf_counter() - start
        ok = relators and x3 and power and orders and secs < 60
        return ok, f"relators={relators} x3={x3} power={power} orders<=100={orders} in {secs:.1f}s"

    verdict(2, "calibration gate", body)


def test_c03_eigenvalue_table(verdict, ctx):
    table = {2: 2.828427124746190, 3: 4.340172973252067, 4: 4.475244292138809}

    def body():
        start = time.perf_counter()
        got = {k: largest_nontrivial(full_spectrum(ctx.x(k)), 6.0) for k in table}
        secs = time.perf_counter() - start
        dense_ok = all(abs(got[k] - table[k]) <= 1e-9 for k in table) and secs < 300
        x5 = extreme_eigs(ctx.x(5), tol=1e-9)
        x5_ok = abs(x5 - 5.160252515773351) <= 1e-6
        errs = {k: f"{abs(got[k] - table[k]):.1e}" for k in table}
        return dense_ok and x5_ok, f"errors {errs}; X_5 {x5:.12f} ({secs:.1f}s dense)"

    verdict(3, "largest nontrivial eigenvalues", body)


def test_c04_spectrum_tables(verdict, ctx):
    def body():
        start = time.perf_counter()
        x2 = full_spectrum(ctx.x(2)).by_symbol()
        pi8 = full_spectrum(build_platonic(8).base).by_symbol()
        secs = time.perf_counter() - start
        ok = (
            x2 == {"6": 1, "sqrt(8)": 6, "2": 6, "0": 4, "-2": 9, "-sqrt(8)": 6}
            and pi8 == {"8": 1, "sqrt(8)": 6, "0": 9, "-sqrt(8)": 6, "-4": 2}
            and secs < 5
        )
        return ok, f"X_2 {x2}; Pi_8 {pi8}"

    verdict(4, "spectrum tables of X_2 and Pi_8", body)


def test_c05_correspondence(verdict, ctx):
    def body():
        exact = {k: correspondence_check(ctx.x(k), ctx.t(k)) for k in range(1, 5)}
        spectra = {k: transform_spectrum_check(ctx.spectrum("x", k), ctx.spectrum("t", k), 1e-6) for k in range(1, 5)}
        window = {
            k: [v for v in ctx.spectrum("x", k).values() if -6 <= v < -3 and abs(v + 3) > 1e-6] for k in range(1, 5)
        }
        ok = all(exact.values()) and all(spectra.values()) and not any(window.values())
        return ok, f"A_T^2 = A_X + 3 {exact}; sqrt map {spectra}; in [-6,-3) {window}"

    verdict(5, "Delta-Y spectral correspondence", body)


def test_c06_ramanujan(verdict, ctx):
    def body():
        want = {"X_2": True, "X_3": True, "X_4": False, "T_2": True, "T_3": True, "T_4": True, "T_5": False}
        got, margin = {}, {}
        for k in (2, 3, 4):
            r = ramanujan_check(ctx.spectrum("x", k), 6)
            got[f"X_{k}"], margin[f"X_{k}"] = r.is_ramanujan, r.margin
            r = ramanujan_check(ctx.spectrum("t", k), 3)
            got[f"T_{k}"], margin[f"T_{k}"] = r.is_ramanujan, r.margin
        r = ramanujan_from_extreme(extreme_eigs(ctx.t(5), tol=1e-9, deflate_bipartite=True), 3)
        got["T_5"], margin["T_5"] = r.is_ramanujan, r.margin
        return got == want, "margins " + ", ".join(f"{k}={v:+.4f}" for k, v in sorted(margin.items()))

    verdict(6, "Ramanujan statuses", body)


def test_c07_tower(verdict, ctx):
    def body():
        a = spectrum_inclusion(ctx.spectrum("x", 2), ctx.spectrum("x", 3), 1e-6)
        b = spectrum_inclusion(ctx.spectrum("x", 3), ctx.spectrum("x", 4), 1e-6)
        return a and b, f"X_2 in X_3: {a}; X_3 in X_4: {b}"

    verdict(7, "spectrum tower", body)


def test_c08_platonic_counts(verdict):
    def body():
        bad = [N for N in range(3, 21) if constructed_counts(build_platonic(N)) != count_formulas(N)]
        return not bad, f"mismatches {bad} over 3 <= N <= 20"

    verdict(8, "Platonic graph counts", body)


def test_c09_modified_spectra(verdict, ctx):
    def body():
        start = time.perf_counter()
        detail = []
        ok = True
        for p in (5, 7, 11, 13):
            g = ctx.modified(p).base
            half = (p - 1) * (p - 3) // 4
            want = {str(p - 1): 1, "-1": p - 1, "0": (p - 3) // 2, f"sqrt({p})": half, f"-sqrt({p})": half}
            flt = full_spectrum(g, tol=1e-8).by_symbol() == want
            ann = integer_annihilator_check(g, [[-(p - 1), 1], [1, 1], [0, 1], [-p, 0, 1]])
            mults = (
                exact_multiplicity(g, [-(p - 1), 1]),
                exact_multiplicity(g, [1, 1]),
                exact_multiplicity(g, [0, 1]),
                exact_multiplicity(g, [-p, 0, 1]),
            )
            exact = ann and mults == (1, p - 1, (p - 3) // 2, 2 * half) and sqrt_pairing_check(full_spectrum(g), p)
            ok = ok and flt and exact
            detail.append(f"p={p} float={flt} exact={exact}")
        secs = time.perf_counter() - start
        return ok and secs < 120, "; ".join(detail) + f" ({secs:.1f}s)"

    verdict(9, "spectra of modified Platonic graphs", body)


def test_c10_connectivity_diameter(verdict, ctx):
    def body():
        start = time.perf_counter()
        got = {}
        for p in (5, 7, 11, 13):
            full, mod = ctx.platonic(p).base, ctx.modified(p).base
            got[p] = (vertex_connectivity(full), vertex_connectivity(mod), diameter(full), diameter(mod))
        secs = time.perf_counter() - start
        ok = all(k == p and km == p - 1 and d <= 3 and dm == 3 for p, (k, km, d, dm) in got.items()) and secs < 120
        return ok, f"(kappa, kappa', diam, diam') {got} in {secs:.1f}s"

    verdict(10, "connectivity and diameter", body)


def test_c11_wheel_lemma(verdict, ctx):
    def body():
        got = {p: wheel_lemma_check(ctx.platonic(p), exhaustive_limit=11) for p in (5, 7, 11)}
        return all(got.values()), ", ".join(
            f"p={p} (a)={r.disjoint_paths} (b)={r.two_neighbours} (c)={r.matching}" for p, r in got.items()
        )

    verdict(11, "wheel lemma", body)


def test_c12_isomorphisms(verdict, ctx):
    def certified(a, b):
        phi = is_isomorphic(a, b)
        if phi is None:
            return False
        image = {(min(phi[u], phi[v]), max(phi[u], phi[v])) for u, v in a.edges}
        return sorted(phi.values()) == list(range(b.n)) and image == b.edge_set()

    def body():
        start = time.perf_counter()
        t2 = certified(dual_tk(ctx.group(2)), build_platonic(8).base)
        t1 = certified(dual_tk(ctx.group(1)), build_platonic(4).base)
        up = {p: certified(ctx.modified(p).base, u_p_cayley(p)) for p in (5, 7)}
        sub = subgroup_closure(XYZ_MOD8)
        psl = psl2_enumerate(8).order
        mul = lambda a, b: a * b  # noqa: E731
        phi = word_isomorphism(XYZ_MOD8, generators(2), mul, mul, PSL2Elem.identity(8), ToeplitzElement.identity(2))
        iso = phi is not None and len(phi) == 32 == ctx.group(2).order
        secs = time.perf_counter() - start
        ok = t2 and t1 and all(up.values()) and (sub.order, sub.normal, sub.index, psl) == (32, True, 6, 192)
        ok = ok and iso and secs < 60
        return ok, (
            f"T_2*=Pi_8 {t2}; T_1*=Pi_4 {t1}; Pi'_p=Cay(U_p,S) {up}; "
            f"<X,Y,Z> order {sub.order} normal {sub.normal} index {sub.index} in {psl}; iso to G_2 {iso}"
        )

    verdict(12, "isomorphisms", body)


def test_c13_noniso_inequality(verdict):
    def body():
        holds = [k for k in range(1, 65) if noniso_inequality(k)]
        direct = [k for k in range(1, 65) if 3 * int(math.log2(k)) + 3 >= 8 * (k // 3) + 3 * (k % 3)]
        return holds == direct == [1, 2], f"holds for k in {holds}"

    verdict(13, "non-isomorphism inequality", body)


def test_c14_genus_topology(verdict, ctx):
    def body():
        g_t2, g_pi8 = genus_surface_tk(ctx.group(2)), genus_platonic_surface(8)
        euler_t = all(
            (s := summarize_tk(ctx.group(k))).V - s.E + s.F == 2 - 2 * s.genus for k in range(1, 5)
        )
        euler_p = all(
            (s := summarize_platonic(N)).V - s.E + s.F == 2 - 2 * s.genus for N in range(3, 21)
        )
        counts = {}
        for k in (2, 3, 4):
            c = tk_counts(ctx.group(k))
            r, K = r_and_K(k)
            g = 1 + Fraction(2) ** (K - 2) - 3 * Fraction(2) ** (K - r - 2)
            counts[k] = bool(c) and c.genus == g
        ok = g_t2 == 5 == g_pi8 and euler_t and euler_p and all(counts.values())
        return ok, f"g(T_2)={g_t2} g(Pi_8)={g_pi8}; Euler T={euler_t} Pi={euler_p}; closed-form counts {counts}"

    verdict(14, "genus and topology", body)


def test_c15_nonflatness_trend(verdict, ctx):
    def body():
        ps = [p for p in range(7, 98) if sympy.isprime(p)]
        pr = [summarize_platonic(p, constructed=p <= 20).ratio for p in ps]
        pi_ok = all(a < b for a, b in zip(pr, pr[1:])) and all(r < 1 for r in pr)
        tr = [summarize_tk(ctx.group(k)).ratio for k in (2, 3, 4)]
        tk_ok = tr[0] == Fraction(5, 16) and all(a < b for a, b in zip(tr, tr[1:])) and all(r <= 1 for r in tr)
        shown = ", ".join(f"{r} ({float(r):.4f})" for r in tr)
        return pi_ok and tk_ok, (
            f"Pi_p increasing={pi_ok} ({float(pr[0]):.4f} .. {float(pr[-1]):.4f}); "
            f"T_k increasing={tk_ok} [{shown}]"
        )

    verdict(15, "non-flatness trend", body)
