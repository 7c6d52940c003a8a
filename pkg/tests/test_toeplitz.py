import struct

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from xatlas import gf2
from xatlas.toeplitz import (
    GroupTable,
    ToeplitzElement,
    UncalibratedConvention,
    candidate_conventions,
    default_convention,
    element_order,
    enumerate_group,
    evaluate_word,
    generators,
    make_generator,
    power_formula_check,
    relators_hold,
    toeplitz_inv,
    toeplitz_mul,
    toeplitz_pow,
)


def dense(g: ToeplitzElement, blocks: int) -> np.ndarray:
    """Explicit 3*blocks square matrix over GF(2) for an element of depth k."""
    m = np.eye(3 * blocks, dtype=np.int64)
    for row in range(blocks):
        for d in range(1, g.k + 1):
            col = row + d
            if col < blocks:
                m[3 * row : 3 * row + 3, 3 * col : 3 * col + 3] = gf2.mat3_to_array(g.data[3 * (d - 1) + row % 3])
    return m


def truncate_dense(m: np.ndarray, k: int) -> np.ndarray:
    out = m.copy()
    n = m.shape[0] // 3
    for r in range(n):
        for c in range(n):
            if c - r > k:
                out[3 * r : 3 * r + 3, 3 * c : 3 * c + 3] = 0
    return out


elements = st.integers(1, 5).flatmap(
    lambda k: st.tuples(*[st.lists(st.integers(0, 511), min_size=3 * k, max_size=3 * k) for _ in range(3)]).map(
        lambda t: tuple(ToeplitzElement(k, tuple(x)) for x in t)
    )
)


@given(elements)
def test_product_matches_dense_matrices(triple):
    a, b, _ = triple
    n = a.k + 4
    want = truncate_dense((dense(a, n) @ dense(b, n)) % 2, a.k)
    assert np.array_equal(dense(a * b, n), want)


@given(elements)
def test_group_axioms(triple):
    a, b, c = triple
    one = ToeplitzElement.identity(a.k)
    assert (a * b) * c == a * (b * c)
    assert a * toeplitz_inv(a) == one == toeplitz_inv(a) * a
    assert a * one == a
    assert toeplitz_inv(a * b) == toeplitz_inv(b) * toeplitz_inv(a)


@given(elements, st.integers(-9, 9), st.integers(-9, 9))
def test_power_laws(triple, m, n):
    a = triple[0]
    assert toeplitz_pow(a, m) * toeplitz_pow(a, n) == toeplitz_pow(a, m + n)


@given(elements)
def test_truncation_is_a_homomorphism(triple):
    a, b, _ = triple
    for j in range(1, a.k + 1):
        assert (a * b).truncate(j) == a.truncate(j) * b.truncate(j)


def test_depth_mismatch_rejected():
    with pytest.raises(ValueError):
        toeplitz_mul(ToeplitzElement.identity(2), ToeplitzElement.identity(3))
    with pytest.raises(ValueError):
        ToeplitzElement(2, (0,) * 5)


def test_calibration_selects_unique_residue_reading():
    conv = default_convention()
    assert conv.name == "residue"
    assert conv.depth == 6
    assert len(list(candidate_conventions())) == 12
    # The displayed beta_1 repeats alpha_1; the repair comes from x_1^2.
    assert dict(conv.repaired_beta)[1] == gf2.blocks_from_display(["000011010", "100010111", "111000010"])


@pytest.mark.parametrize("k", range(1, 7))
def test_relators_trivial(k):
    x0, x1, _ = generators(k)
    assert all(relators_hold(x0, x1).values())


def test_relators_words_are_not_trivial_free_words():
    x0, x1, _ = generators(2)
    assert not evaluate_word("ab", x0, x1).is_identity()
    assert evaluate_word("aA", x0, x1).is_identity()


def test_x3_is_inverse_product():
    for k in range(1, 7):
        x0, x1, x3 = generators(k)
        assert x3 == toeplitz_inv(x1) * toeplitz_inv(x0)
        assert x0 * x1 * x3 == ToeplitzElement.identity(k)


@pytest.mark.parametrize("i", [0, 1, 3])
@pytest.mark.parametrize("l", [0, 1, 2, 3])
def test_power_formula(i, l):
    assert power_formula_check(i, l, 8)


def test_generator_orders_small():
    expected = {1: 2, 2: 4, 3: 4, 4: 8, 7: 8, 8: 16, 15: 16, 16: 32, 31: 32, 32: 64}
    for k, o in expected.items():
        assert [element_order(make_generator(i, k)) for i in (0, 1, 3)] == [o, o, o]


@pytest.mark.parametrize("k,order", [(1, 4), (2, 32), (3, 128), (4, 1024)])
def test_group_orders(tables, k, order):
    t = tables[k]
    assert t.order == order
    t.validate()


def test_group_table_actions(tables):
    t = tables[2]
    for g in range(t.order):
        for i in (0, 1, 3):
            h = t.act(g, i)
            assert t.elements[h] == t.elements[g] * make_generator(i, 2)
            assert t.act(h, i, -1) == g
        assert t.elements[t.inv[g]] == toeplitz_inv(t.elements[g])


def test_uncalibrated_depth_rejected():
    with pytest.raises(UncalibratedConvention):
        enumerate_group(7)


def test_order_cap():
    with pytest.raises(RuntimeError):
        enumerate_group(3, max_order=100)


def test_xgrp_round_trip(tables, tmp_path):
    path = tmp_path / "g.xgrp"
    t = tables[3]
    t.save(path)
    raw = path.read_bytes()
    assert raw[:5] == b"XGRP1"
    assert struct.unpack_from("<II", raw, 5) == (3, 128)
    u = GroupTable.load(path)
    assert u.elements == t.elements
    assert all(np.array_equal(a, b) for a, b in zip(u.gen_action, t.gen_action))
    assert np.array_equal(u.inv, t.inv)


def test_xgrp_rejects_corruption(tables, tmp_path):
    path = tmp_path / "g.xgrp"
    tables[2].save(path)
    raw = bytearray(path.read_bytes())
    with pytest.raises(ValueError):
        path.write_bytes(b"XGRP0" + raw[5:])
        GroupTable.load(path)
    with pytest.raises(ValueError):
        path.write_bytes(bytes(raw[:-4]))
        GroupTable.load(path)
    bad = bytearray(raw)
    bad[-1] ^= 0x01  # break the inverse permutation
    path.write_bytes(bytes(bad))
    with pytest.raises(ValueError):
        GroupTable.load(path)
