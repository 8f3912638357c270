"""Carry-safe labels: window placement, key packing, and the closure
property that keeps progression companions inside the grid."""

import math
from itertools import product

import pytest

from rainbowap import (
    ParamError,
    Params,
    aux_label,
    closure_violation,
    ensure_closed,
    label3,
    label_general,
    label_key,
    log_label_count,
    rational_combination,
)
from rainbowap.labels import companion_coefficients, coordinate_label_table

P16 = Params.create(C=16, d=2, epsilon="1/50")


def test_label3_examples():
    lab = label3((5, 12), P16)
    assert lab.parities == (1, 0)
    assert lab.buckets == (3, -3)
    p1 = Params.create(C=16, d=1, epsilon="1/50")
    assert label3((0,), p1) == ((0,), (1,))
    assert label3((15,), p1) == ((1,), (-1,))


def test_label3_requires_k3():
    p = Params.create(C=16, d=1, epsilon="1/50", k=4)
    with pytest.raises(ParamError):
        label3((3,), p)


def test_label_general_examples():
    p3 = Params.create(C=16, d=1, epsilon="1/50", k=3)
    lab = label_general((7,), p3)
    assert lab.parities == (1,)  # 7 mod 3! = 1
    assert lab.buckets == (6,)  # (3/2)^5 = 7.59 <= 8 < 11.39 = (3/2)^6
    assert label_general((0,), p3).buckets == (1,)
    p4 = Params.create(C=20, d=1, epsilon="1/50", k=4)
    lab4 = label_general((5,), p4)
    assert lab4.parities == (5,)  # 5 mod 4! = 5
    assert lab4.buckets == (7,)  # (4/3)^6 = 5.62 <= 6 < 7.49 = (4/3)^7


def test_aux_label_dispatch():
    assert aux_label((5, 12), P16) == label3((5, 12), P16)
    p5 = Params.create(C=12, d=2, epsilon="1/10", k=5)
    assert aux_label((3, 4), p5) == label_general((3, 4), p5)


def test_bucket_sanity():
    """Windows partition the coordinate range; the sign tracks the side."""
    for C in (3, 4, 8, 10, 16, 32, 100):
        for k in (3, 4, 5):
            p = Params.create(C=C, d=1, epsilon="1/10", k=k)
            base = 2.0 if k == 3 else k / (k - 1)
            cap = math.ceil(math.log(C) / math.log(base)) + 1
            for x in range(C):
                b = aux_label((x,), p).buckets[0]
                assert b != 0
                assert (b > 0) == (2 * x <= C)
                assert abs(b) <= cap


@pytest.mark.parametrize("C,d,k", [(10, 2, 3), (16, 2, 3), (8, 3, 3), (12, 2, 4)])
def test_key_injective_on_labels(C, d, k):
    p = Params.create(C=C, d=d, epsilon="1/10", k=k)
    by_label = {}
    for x in product(range(C), repeat=d):
        lab = aux_label(x, p)
        key = label_key(x, p)
        assert by_label.setdefault(lab, key) == key
    keys = set(by_label.values())
    assert len(keys) == len(by_label)


def test_key_canonical_zero():
    # all-zero point has residues 0 and buckets +1, the canonical key 0
    for C, k in [(10, 3), (16, 3), (12, 4)]:
        p = Params.create(C=C, d=3, epsilon="1/10", k=k)
        assert label_key((0, 0, 0), p) == 0


def test_key_distinguishes_bucket_sign():
    p = Params.create(C=16, d=2, epsilon="1/50")
    # coordinates 3 and 11 share parity and bucket magnitude, not the sign
    a, b = label3((5, 3), p), label3((5, 11), p)
    assert a.parities == b.parities
    assert a.buckets == (3, 3) and b.buckets == (3, -3)
    assert label_key((5, 3), p) != label_key((5, 11), p)


def test_log_label_count_examples():
    p = Params.create(C=16, d=1, epsilon="1/50")
    assert log_label_count(p) == pytest.approx(math.log(16))
    p2 = Params.create(C=16, d=2, epsilon="1/50")
    assert log_label_count(p2) == pytest.approx(2 * log_label_count(p))


def test_distinct_labels_within_bound():
    for C, d, k in [(10, 2, 3), (16, 2, 3), (12, 1, 4), (12, 1, 5)]:
        p = Params.create(C=C, d=d, epsilon="1/10", k=k)
        distinct = {label_key(x, p) for x in product(range(C), repeat=d)}
        assert math.log(len(distinct)) <= log_label_count(p) + 1e-9


def test_companion_coefficients_k3():
    assert companion_coefficients(3) == ((-1, 1), (1, 2), (2, 1))


def test_companion_coefficients_range():
    for k in (4, 5, 6):
        coeffs = companion_coefficients(k)
        assert all(1 <= q <= k - 1 for _, q in coeffs)
        assert all(-(k - 2) <= p <= 2 * (k - 1) for p, _ in coeffs)


@pytest.mark.parametrize("C", [4, 8, 16, 32])
@pytest.mark.parametrize("d", [1, 2])
@pytest.mark.parametrize("k", [3, 4, 5])
def test_closure_exhaustive(C, d, k):
    """Every same-label pair keeps every position-required companion inside
    the grid, exhaustively over the full d-dimensional grid."""
    p = Params.create(C=C, d=d, epsilon="1/10", k=k)
    groups = {}
    for x in product(range(C), repeat=d):
        groups.setdefault(label_key(x, p), []).append(x)
    coeffs = companion_coefficients(k)
    for members in groups.values():
        for x in members:
            for y in members:
                if x == y:
                    continue
                for p_num, q_den in coeffs:
                    assert rational_combination(x, y, p_num, q_den, p) is not None, (
                        f"C={C} d={d} k={k}: companion ({p_num}/{q_den}) of "
                        f"{x},{y} leaves the grid"
                    )


def test_closure_check_passes_acceptance_grid():
    for C, k in [(10, 3), (16, 3), (12, 4), (12, 5), (16, 4), (16, 5), (3, 3)]:
        assert closure_violation(C, k) is None
        ensure_closed(Params.create(C=C, d=2, epsilon="1/10", k=k))


def test_closure_all_small_sides():
    """The one-dimensional check (equivalent to any d, labels act
    componentwise) over every side up to 24."""
    for C in range(3, 25):
        for k in (3, 4, 5):
            assert closure_violation(C, k) is None, (C, k)


def test_label_table_radix_covers_indices():
    for C, k in [(10, 3), (16, 3), (12, 4), (30, 4)]:
        idx, radix = coordinate_label_table(C, k)
        assert len(idx) == C
        assert max(idx) < radix
        assert min(idx) >= 0
