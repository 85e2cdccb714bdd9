import pytest
from hypothesis import given, settings, strategies as st

from klein import series
from klein.series import (
    geom,
    mixed_II_kernel_series,
    mixed_II_main_series_parts,
    poincare_series,
    s_add,
    s_mul,
    s_shift,
    series_from_json,
    series_to_json,
    window_coefficient,
    x1_kernel_series,
)


def brute_window(s, w, h):
    """Expand x^s (1+...+x^(w-1)) (1+...+x^(h-1)) by convolution."""
    out = {}
    for i in range(w):
        for j in range(h):
            out[s + i + j] = out.get(s + i + j, 0) + 1
    return out


@given(
    st.integers(-6, 6), st.integers(1, 8), st.integers(1, 8), st.integers(-10, 22)
)
@settings(max_examples=300)
def test_window_coefficient_matches_expansion(s, w, h, a_prime):
    if w < h:
        w, h = h, w
    assert window_coefficient(s, w, h, a_prime) == brute_window(s, w, h).get(
        a_prime, 0
    )


def test_window_coefficient_examples():
    assert window_coefficient(0, 3, 1, 1) == 1
    assert window_coefficient(2, 2, 2, 3) == 2
    assert window_coefficient(0, 3, 1, 5) == 0


def test_window_coefficient_rejects_bad_shape():
    with pytest.raises(ValueError):
        window_coefficient(0, 1, 2, 0)
    with pytest.raises(ValueError):
        window_coefficient(0, 3, 0, 0)


def test_poincare_series_examples():
    assert poincare_series(2, 0, 0) == {0: 1, 1: 1, 2: 1}
    assert poincare_series(1, 1, 1) == {0: 1, 1: 3, 2: 2, 3: 1}
    assert poincare_series(-2, -2, -2) == {-6: 1, -5: 2, -4: 3, -3: 1}
    assert poincare_series(1, -3, 1) == {-3: 1, -2: 2, -1: 2}


def test_series_symmetric_under_index_permutations():
    import itertools

    for p in range(-4, 5):
        for b in range(-4, 5):
            for q in range(-4, 5):
                base = poincare_series(p, b, q)
                for perm in itertools.permutations((p, b, q)):
                    assert poincare_series(*perm) == base, (p, b, q, perm)


def test_series_nonnegative_with_bounded_support():
    for p in range(-4, 5):
        for b in range(-4, 5):
            for q in range(-4, 5):
                s = poincare_series(p, b, q)
                w = abs(p) + abs(b) + abs(q) + 3
                for e, c in s.items():
                    assert c > 0
                    assert -w <= e <= w


def test_boundary_formulas_agree_with_two_index():
    # The positive-cone polynomial at a zero index collapses to the
    # two-index product formula.
    for l in range(0, 5):
        for m in range(0, 5):
            assert series._positive_series(l, m, 0) == series._two_index_series(
                l, m, 0
            )
            assert series._positive_series(l, 0, m) == series._two_index_series(
                l, 0, m
            )
            assert series._positive_series(0, l, m) == series._two_index_series(
                0, l, m
            )


def test_mixed_I_case_overlap_agrees():
    # When k exceeds both positive entries, either swap gives the answer.
    for k in range(2, 7):
        for l in range(1, k):
            for m in range(1, k):
                via_l = s_add(
                    s_shift(s_mul(geom(0, l), geom(0, l - 1)), -(l + 1)),
                    s_shift(s_mul(geom(0, k - l - 2), geom(0, l + m)), -k),
                )
                via_m = s_add(
                    s_shift(s_mul(geom(0, m), geom(0, m - 1)), -(m + 1)),
                    s_shift(s_mul(geom(0, k - m - 2), geom(0, l + m)), -k),
                )
                assert via_l == via_m, (k, l, m)


def test_mixed_II_case_overlap_agrees():
    # When l dominates both negative entries, either swap agrees.
    for l in range(1, 6):
        for j in range(1, l + 1):
            for k in range(1, l + 1):
                a = s_add(
                    s_shift(s_mul(geom(0, j - 2), geom(0, l - k)), -j),
                    s_shift(s_mul(geom(0, l - 1), geom(0, k - 1)), -k),
                )
                b = s_add(
                    s_shift(s_mul(geom(0, k - 2), geom(0, l - j)), -k),
                    s_shift(s_mul(geom(0, l - 1), geom(0, j - 1)), -j),
                )
                assert a == b, (j, k, l)


def test_mixed_II_kernel_series_examples():
    assert mixed_II_kernel_series(-2, 1, -2) == {-2: 1, -1: 1}
    # Full-kernel case coincides with the whole group series.
    assert mixed_II_kernel_series(-1, 2, -1) == poincare_series(-1, 2, -1)
    with pytest.raises(ValueError):
        mixed_II_kernel_series(-1, 0, -2)


def test_mixed_II_kernel_series_other_frames():
    # iota_1 and iota_3 regions go through the index permutation.
    assert mixed_II_kernel_series(1, -2, -2) == s_shift(
        s_mul(geom(0, 1), geom(0, 0)), -2
    )
    assert mixed_II_kernel_series(-2, -2, 1) == s_shift(
        s_mul(geom(0, 1), geom(0, 0)), -2
    )


def test_x1_kernel_series():
    assert x1_kernel_series(-1, 2, -2) == {-2: 1}
    assert x1_kernel_series(-2, 3, -1) == {-3: 1, -2: 1, -1: 1}
    with pytest.raises(ValueError):
        x1_kernel_series(0, 1, -2)


def test_main_region_parts_sum_to_series():
    # The kappa-power and iota-chain sub-series fill the b+q >= 0 region.
    for p in range(-5, 0):
        for q in range(-5, 0):
            for b in range(max(1, -q), 6):
                kp, io = mixed_II_main_series_parts(p, b, q)
                assert s_add(kp, io) == poincare_series(p, b, q), (p, b, q)


def test_json_round_trip():
    s = poincare_series(1, -3, 1)
    assert series_from_json(series_to_json(s)) == s
    assert series_from_json(series_to_json({})) == {}
