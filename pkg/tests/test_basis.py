import itertools

import pytest

from klein import basis, oracle, series
from klein.basis import (
    Label,
    canonical_basis,
    chain_to_label,
    coset_reduce,
    exps_from,
    is_basis_label,
    make_label,
    xslot,
    yslot,
)
from klein.grading import support_a_range


def test_single_generator_degrees():
    (k2,) = canonical_basis((-1, 1, -1, 1))
    assert k2 == make_label({"k2": 1})
    (i2,) = canonical_basis((1, -1, 1, -1))
    assert i2 == make_label({"k1": 1, "th3": 1})
    (nc,) = canonical_basis((2, -2, 1, -2))
    assert nc == make_label(
        {"k3": 1, "th1": 1}, den=exps_from({xslot(3): 1, yslot(1): 1})
    )


def test_positive_cone_normal_form():
    labels = canonical_basis((-1, 1, 1, 1))
    assert len(labels) == 3
    for lab in labels:
        assert not (lab.num[0] and lab.num[3] and lab.num[5])


def test_normal_form_excludes_f_leading_monomials():
    # Monomial count minus shifted count reproduces the basis size.
    for d in [(-2, 2, 2, 2), (-3, 3, 2, 1), (-1, 1, 2, 3)]:
        a, p, b, q = d
        total = len(oracle._monomials(d))
        shifted = len(oracle._monomials((a + 2, p - 1, b - 1, q - 1)))
        assert len(canonical_basis(d)) == total - shifted


def test_mixed_I_kernel_is_kappa_polynomial():
    # Thm: ker f in Mixed Cone I(2) matches kappa_2 Z/2[kappa_2,x1,y1,x3,y3].
    for p in range(0, 6):
        for q in range(0, 6):
            for b in range(-5, 0):
                sl = oracle.get_slice(p, b, q)
                for a in support_a_range(p, b, q):
                    want = len(basis._kappa_power_labels((a, p, b, q), 2))
                    assert sl.kernel_dim(a) == want, (a, p, b, q)


def test_negative_cone_count_matches_series():
    for p in range(-5, 0):
        for b in range(-5, 0):
            for q in range(-5, 0):
                s = series.poincare_series(p, b, q)
                for a in support_a_range(p, b, q):
                    assert len(basis._negative_labels((a, p, b, q))) == s.get(
                        -a, 0
                    ), (a, p, b, q)


def test_negative_cone_side_condition():
    for p in range(-4, 0):
        for b in range(-4, 0):
            for q in range(-4, 0):
                for a in support_a_range(p, b, q):
                    for lab in canonical_basis((a, p, b, q)):
                        r = dict(lab.heads)["k1"]
                        m2 = lab.den[yslot(2)]
                        m3 = lab.den[yslot(3)]
                        assert m3 >= r - 1 or m2 >= r


def test_mixed_II_main_region_counts_split():
    # kappa-side and iota-side label counts match the two sub-series.
    for p in range(-5, 0):
        for q in range(-5, 0):
            for b in range(max(1, -q), 6):
                kp, io = series.mixed_II_main_series_parts(p, b, q)
                for a in support_a_range(p, b, q):
                    d = (a, p, b, q)
                    ka = basis._kappa_theta_labels(a, 2, 1, 3, p, b, q)
                    ia = basis._iota_chain_labels(a, 2, 1, 3, p, b, q)
                    assert len(ka) == kp.get(-a, 0), d
                    assert len(ia) == io.get(-a, 0), d


def test_mixed_II_deep_kernel_counts():
    # Deep-region kappa/iota label counts match the kernel series.
    for p in range(-5, 0):
        for q in range(-5, 0):
            for b in range(1, 5):
                if b + p >= 0 or b + q >= 0:
                    continue
                ks = series.mixed_II_kernel_series(p, b, q)
                for a in support_a_range(p, b, q):
                    got = len(basis._deep_kappa_labels(a, 2, 1, 3, p, b, q)) + len(
                        basis._deep_iota_labels(a, 2, 1, 3, p, b, q)
                    )
                    assert got == ks.get(-a, 0), (a, p, b, q)


def test_coset_reduce_examples():
    d = (-2, 2, -2, 2)
    hit = chain_to_label(("th2", (0, 2, 0, 0, 0, 2)))  # th2 y1^2 y3^2
    assert coset_reduce(d, [hit]) == []
    d2 = (2, 0, -2, 0)
    th2 = chain_to_label(("th2", (0, 0, 0, 0, 0, 0)))
    assert coset_reduce(d2, [th2]) == [th2]


def test_coset_reduce_kills_images():
    # f of any domain chain reduces to zero.
    for pbq in [(2, -2, 2), (-1, 2, -3), (0, -3, 2)]:
        sl = oracle.get_slice(*pbq)
        for a, labs in sl.domain.items():
            for lab in labs:
                image = oracle.apply_f(lab)
                if not image:
                    continue
                d = (a + 1, *pbq)
                assert coset_reduce(d, [chain_to_label(c) for c in image]) == []


def test_coset_reduce_rejects_inhomogeneous():
    th2 = chain_to_label(("th2", (0, 0, 0, 0, 0, 0)))
    with pytest.raises(ValueError):
        coset_reduce((0, 0, 0, 0), [th2])


def test_is_basis_label():
    assert is_basis_label(make_label({"k2": 1}))
    assert not is_basis_label(make_label({"k2": 1, "th2": 1}))


def test_basis_deterministic_order():
    for d in [(-1, 1, 1, 1), (1, -2, 2, -2), (3, -2, -1, -1)]:
        labels = canonical_basis(d)
        assert list(labels) == sorted(labels)
