import itertools

import pytest

from klein import oracle
from klein.grading import support_a_range
from klein.oracle import (
    F2Matrix,
    apply_f,
    chain_basis,
    cokernel_basis,
    complex_heads,
    homology_dim,
    kernel_basis,
    label_degree,
)


def brute_side_labels(head, d, bound=6):
    """Independent enumeration: scan all exponent tuples up to a bound."""
    out = [
        (head, exps)
        for exps in itertools.product(range(bound), repeat=6)
        if label_degree((head, exps)) == d
    ]
    return sorted(out)


@pytest.mark.parametrize(
    "d",
    [
        (-1, 1, -1, 1),
        (-2, 2, -2, 2),
        (1, -1, 1, -1),
        (3, -1, -1, -1),
        (2, -2, 1, -2),
        (0, -2, 0, 3),
        (4, -2, -1, -1),
    ],
)
def test_chain_basis_matches_brute_enumeration(d):
    dom_head, tgt_head = complex_heads(d[1], d[2], d[3])
    dom, tgt = chain_basis(d)
    assert dom == brute_side_labels(dom_head, d)
    assert tgt == brute_side_labels(tgt_head, d)


def test_complex_selection_by_negative_indices():
    assert complex_heads(1, 1, 1) == ("poly", "poly")
    assert complex_heads(-1, 2, 0) == ("k1", "th1")
    assert complex_heads(1, -2, 3) == ("k2", "th2")
    assert complex_heads(-1, 1, -1) == ("i2", "th1th3")
    assert complex_heads(-1, -1, -1) == ("TH", "th1th2th3")


def test_chain_basis_examples():
    dom, tgt = chain_basis((-1, 1, -1, 1))
    assert dom == [("k2", (0, 0, 0, 0, 0, 0))]
    assert tgt == []
    # theta_2 alone in its own degree
    _, tgt = chain_basis((2, 0, -2, 0))
    assert tgt == [("th2", (0, 0, 0, 0, 0, 0))]


def test_apply_f_truncation():
    # kappa_2 itself dies: every term needs an eps-pair denominator.
    assert apply_f(("k2", (0, 0, 0, 0, 0, 0))) == []
    # kappa_2/x2 * y1 y3: only the y1 x2 y3 term survives.
    assert apply_f(("k2", (0, 1, 1, 0, 0, 1))) == [("th2", (0, 2, 0, 0, 0, 2))]
    # Theta-chain: full substitution rule on the triple complex.
    out = apply_f(("TH", (1, 0, 0, 1, 0, 1)))
    assert out == [("th1th2th3", (0, 0, 0, 0, 0, 0))]


def test_apply_f_is_degree_homogeneous():
    for p in range(-3, 4):
        for b in range(-3, 4):
            for q in range(-3, 4):
                if complex_heads(p, b, q)[0] == "poly":
                    continue
                sl = oracle.get_slice(p, b, q)
                for a, labels in sl.domain.items():
                    for lab in labels:
                        for out in apply_f(lab):
                            assert label_degree(out) == (a + 1, p, b, q)


def test_homology_dim_examples():
    assert homology_dim((0, 0, 0, 0)) == 1
    assert homology_dim((-1, 1, 1, 1)) == 3
    assert homology_dim((-2, 2, -2, 2)) == 1


def test_positive_octant_monomial_count():
    # Independent count at (-1,1,1,1): monomials minus f-multiples.
    monos = [
        e
        for e in itertools.product(range(4), repeat=6)
        if label_degree(("poly", e)) == (-1, 1, 1, 1)
    ]
    assert len(monos) == 3
    feeders = [
        e
        for e in itertools.product(range(4), repeat=6)
        if label_degree(("poly", e)) == (1, 0, 0, 0)
    ]
    assert len(feeders) == 0
    assert homology_dim((-1, 1, 1, 1)) == 3


def test_kernel_basis_examples():
    assert kernel_basis((-1, 1, -1, 1)) == [[("k2", (0, 0, 0, 0, 0, 0))]]
    assert kernel_basis((0, 1, 1, 1)) == []


def test_positive_octant_kernel_empty():
    # f is injective on the polynomial side: rank equals domain size.
    for d in [(-1, 1, 1, 1), (-2, 2, 1, 1), (-3, 2, 2, 2), (0, 3, 1, 2)]:
        a, p, b, q = d
        feed = (a + 2, p - 1, b - 1, q - 1)
        dom = oracle._monomials(feed)
        tgt = oracle._monomials(d)
        index = {lab: s for s, lab in enumerate(tgt)}
        rows = []
        for lab in dom:
            vec = 0
            for out in apply_f(lab):
                vec ^= 1 << index[out]
            rows.append(vec)
        assert F2Matrix(rows, len(tgt)).rank() == len(dom)


def test_cokernel_basis_examples():
    assert cokernel_basis((2, 0, -2, 0)) == [("th2", (0, 0, 0, 0, 0, 0))]
    assert cokernel_basis((-2, 2, -2, 2)) == []


def test_negative_cone_cokernel_always_empty():
    for p in range(-4, 0):
        for b in range(-4, 0):
            for q in range(-4, 0):
                for a in support_a_range(p, b, q):
                    assert cokernel_basis((a, p, b, q)) == [], (a, p, b, q)


def test_mixed_II_exclusive_degree_bands():
    # Deep region: kernels at a <= b+1, cokernels at a >= b+4, and the
    # band b+2 <= a <= b+3 is zero.
    for p in range(-5, 0):
        for q in range(-5, 0):
            for b in range(1, 5):
                if b + p >= 0 or b + q >= 0:
                    continue
                sl = oracle.get_slice(p, b, q)
                for a in support_a_range(p, b, q):
                    kd = sl.kernel_dim(a)
                    cd = sl.cokernel_dim(a)
                    if kd:
                        assert a <= b + 1
                    if cd:
                        assert a >= b + 4
                    if b + 2 <= a <= b + 3:
                        assert kd + cd == 0


def test_f2matrix_rank_and_kernel():
    m = F2Matrix([0b011, 0b110, 0b101], 3)
    assert m.rank() == 2
    kers = m.kernel_basis()
    assert kers == [0b111]
    assert m.in_row_span(0b101)
    assert not m.in_row_span(0b001)


def test_f2matrix_kernel_brute():
    import random

    rng = random.Random(0)
    for _ in range(50):
        rows = [rng.randrange(16) for _ in range(4)]
        m = F2Matrix(rows, 4)
        kers = m.kernel_basis()
        # every kernel mask really kills the rows
        for mask in kers:
            acc = 0
            for i in range(4):
                if mask >> i & 1:
                    acc ^= rows[i]
            assert acc == 0
        # dimension count: kernel + rank = #rows
        assert len(kers) + m.rank() == 4
