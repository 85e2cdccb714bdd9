"""Shared product-check sweeps used by the CLI and the acceptance tests.

Each function returns a list of error strings (empty = pass).  The
sweeps instantiate the quantified product families of the paper-level
statements over small exponent grids and drive them through the
multiplication engine.
"""

from __future__ import annotations

from itertools import product as iproduct
from typing import List

from . import ring, spaces
from .basis import exps_from, is_basis_label, make_label, xslot, yslot
from .ring import Element, element, multiply, mul_labels, nc_shape_valid, serialize_label


def _el(label) -> Element:
    return element(label.degree(), [label])


def _iota_b(n1, n3, m3, n2, m2):
    """kappa1/x1^n1 * th3/(x3^n3 y3^m3) * x2^n2 y2^m2 (needs n3+m3 <= n2+m2)."""
    return make_label(
        {"k1": 1, "th3": 1},
        exps_from({xslot(2): n2, yslot(2): m2}),
        exps_from({xslot(1): n1, xslot(3): n3, yslot(3): m3}),
    )


def _iota_a(m3, m1, n1, n2, m2):
    """kappa3^(m3+1) * th1/(x1^n1 y1^(m3+m1)) * x2^n2 y2^(m2-m3)."""
    return make_label(
        {"k3": m3 + 1, "th1": 1},
        exps_from({xslot(2): n2, yslot(2): m2 - m3}),
        exps_from({xslot(1): n1, yslot(1): m3 + m1}),
    )


def _theta_coset(i, nd, md, num):
    return make_label({f"th{i}": 1}, exps_from(num), exps_from({xslot(i): nd, yslot(i): md}))


def _neg_label(r, n2, m2, n3, m3):
    return make_label(
        {"k1": r, "th2": 1, "th3": 1},
        den=exps_from({xslot(2): n2, yslot(2): m2, xslot(3): n3, yslot(3): m3}),
    )


def _assert_zero(results: List[str], left, right, tag: str):
    out = mul_labels(left, right)
    if not out.determined:
        results.append(f"{tag}: undetermined ({out.reason})")
    elif not out.value.is_zero():
        results.append(
            f"{tag}: {serialize_label(left)} * {serialize_label(right)} != 0"
        )


def zero_product_errors(n: int) -> List[str]:
    """Quantified zero-product families over exponent grids <= n."""
    errors: List[str] = []
    rng = range(n + 1)

    iobs = [
        _iota_b(n1, n3, m3, n2, m2)
        for n1, n3, m3, n2, m2 in iproduct(rng, rng, rng, rng, rng)
        if n3 + m3 <= n2 + m2
    ]
    # Prop pz: pure theta_1 fractions kill the divided iota chains.
    for n1, m1 in iproduct(rng, rng):
        th = _theta_coset(1, n1, m1, {})
        for lab in iobs[:: max(1, len(iobs) // 40)]:
            _assert_zero(errors, th, lab, "pz")
    # Prop po: the divided iota-chain family has zero self-products.
    sample = iobs[:: max(1, len(iobs) // 25)]
    for a in sample:
        for b in sample:
            _assert_zero(errors, a, b, "po")
    # Prop po1: motivic theta_3 cosets kill the divided iota chains.
    f3 = [
        _theta_coset(3, n3, m3, {xslot(1): a1, yslot(1): b1, xslot(2): n2, yslot(2): m2})
        for n3, m3, a1, b1, n2, m2 in iproduct(rng, rng, (0, 1), (0, 1), rng, rng)
        if n2 + m2 >= n3 + m3 + 2
    ]
    for th in f3[:: max(1, len(f3) // 40)]:
        for lab in sample:
            _assert_zero(errors, th, lab, "po1")
    # Prop po3: theta_1 * theta_3 chain products vanish when b+q >= 0.
    for n1, m1, n3, m3, n2, m2 in iproduct(rng, rng, rng, rng, rng, rng):
        if n2 + m2 < n3 + m3 + 2:
            continue
        th1 = _theta_coset(1, n1, m1, {})
        th3 = _theta_coset(3, n3, m3, {xslot(2): n2, yslot(2): m2})
        _assert_zero(errors, th1, th3, "po3")

    # Negative x negative and negative x Mixed Cone II.
    negs = [
        _neg_label(r, n2, m2, n3, m3)
        for r, n2, m2, n3, m3 in iproduct(range(1, n + 1), rng, rng, rng, rng)
        if m3 >= r - 1 or m2 >= r
    ]
    nsample = negs[:: max(1, len(negs) // 20)]
    for a in nsample:
        for b in nsample:
            _assert_zero(errors, a, b, "neg*neg")
        for lab in sample:
            _assert_zero(errors, a, lab, "neg*mixedII")

    # Sampled nilpotents_1 x nilpotents_1 products.
    f1 = [
        _iota_a(m3, m1, n1, n2, m2)
        for m3, m1, n1, n2, m2 in iproduct(rng, range(1, n + 1), rng, rng, rng)
        if m2 >= m3
    ]
    f4 = [
        _theta_coset(1, n1, m1, {xslot(2): n2, yslot(2): m2, xslot(3): n3, yslot(3): m3})
        for n1, m1, n2, m2, n3, m3 in iproduct(rng, rng, rng, rng, (0, 1), (0, 1))
    ]
    fams = [
        f1[:: max(1, len(f1) // 12)],
        sample[:12],
        f3[:: max(1, len(f3) // 12)],
        f4[:: max(1, len(f4) // 12)],
    ]
    for i, fa in enumerate(fams):
        for j, fb in enumerate(fams):
            for a in fa:
                for b in fb:
                    _assert_zero(errors, a, b, f"nilpotents1 f{i + 1}*f{j + 1}")
    return errors


def _clear_and_compare(errors, tag, var, lab, n1, honest_base):
    """Check x1-clearing of var*label against the honest base product."""
    out = mul_labels(_parse_label(var), lab)
    if not out.determined:
        errors.append(f"{tag}: {var} * {serialize_label(lab)} undetermined")
        return
    for term in out.value.terms:
        if not (is_basis_label(term) or nc_shape_valid(term)):
            errors.append(f"{tag}: output {serialize_label(term)} not canonical")
    cleared = out.value
    for _ in range(n1):
        step = multiply(_el(_x1), cleared)
        if not step.determined:
            errors.append(f"{tag}: clearing undetermined")
            return
        cleared = step.value
    want = multiply(_el(_parse_label(var)), honest_base)
    if not want.determined:
        errors.append(f"{tag}: honest base undetermined")
        return
    if cleared.terms != want.value.terms:
        errors.append(
            f"{tag}: x1-clearing of {var} * {serialize_label(lab)} disagrees"
        )


_x1 = make_label({}, exps_from({xslot(1): 1}))


def _parse_label(text: str):
    el = ring.parse(text)
    (lab,) = el.terms
    return lab


def appendix_errors(n: int) -> List[str]:
    """Appendix product formulas reproduce their base-case identities."""
    errors: List[str] = []
    rng = range(n + 1)
    for n1 in range(1, n + 1):
        for n3, m3, n2, m2 in iproduct(rng, range(1, n + 1), rng, rng):
            if n3 + m3 > n2 + m2:
                continue
            lab = _iota_b(n1, n3, m3, n2, m2)
            base = _iota_b(0, n3, m3, n2, m2)  # honest: x1^n1 * lab
            for var in ("y1", "y3"):
                _clear_and_compare(errors, f"{var}case", var, lab, n1, _el(base))
            if n3 == 0:
                _clear_and_compare(errors, "x3case2", "x3", lab, n1, _el(base))
    return errors


def motivic_zero_errors(n: int) -> List[str]:
    """NC classes are annihilated by the four nilpotent families."""
    errors: List[str] = []
    rng = range(n + 1)
    ncs = []
    for b in range(1, n + 1):
        for q in range(-b - n - 1, -b):
            for p in range(-n, n + 1):
                for a in range(-n, b + n + 2):
                    try:
                        ncs.extend(spaces.nc_basis((a, p, b, q)))
                    except ValueError:
                        pass
    ncs = sorted(set(ncs))[:: max(1, len(set(ncs)) // 30)]
    fams = []
    fams += [
        _iota_a(m3, m1, n1, n2, m2)
        for m3, m1, n1, n2, m2 in iproduct(rng, range(1, n + 1), rng, rng, rng)
        if m2 >= m3
    ][::7]
    fams += [
        _iota_b(n1, n3, m3, n2, m2)
        for n1, n3, m3, n2, m2 in iproduct(rng, rng, rng, rng, rng)
        if n3 + m3 <= n2 + m2
    ][::7]
    fams += [
        _theta_coset(3, n3, m3, {xslot(2): n2, yslot(2): m2})
        for n3, m3, n2, m2 in iproduct(rng, rng, rng, rng)
        if n2 + m2 >= n3 + m3 + 2
    ][::3]
    fams += [
        _theta_coset(1, n1, m1, {xslot(2): n2, yslot(2): m2})
        for n1, m1, n2, m2 in iproduct(rng, rng, rng, rng)
    ][::3]
    for nc in ncs:
        for fam in fams:
            _assert_zero(errors, nc, fam, "nc*nilpotent")
    return errors
