"""Closed-form Poincare series for the point cohomology, per cone.

Series live in the homological variable a' = -a: the coefficient at
exponent a' is dim H^(-a', p, b, q).  They are stored sparsely as
finitely supported integer->integer maps; empty geometric sums (upper
bound below the lower) contribute the zero polynomial.
"""

from __future__ import annotations

import json
from typing import Dict

Series = Dict[int, int]


def geom(lo: int, hi: int) -> Series:
    """Sum of x^e for lo <= e <= hi; zero when hi < lo."""
    return {e: 1 for e in range(lo, hi + 1)}


def s_add(*parts: Series) -> Series:
    out: Series = {}
    for part in parts:
        for e, c in part.items():
            n = out.get(e, 0) + c
            if n:
                out[e] = n
            else:
                del out[e]
    return out


def s_mul(s1: Series, s2: Series) -> Series:
    out: Series = {}
    for e1, c1 in s1.items():
        for e2, c2 in s2.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return out


def s_shift(s: Series, k: int) -> Series:
    return {e + k: c for e, c in s.items()}


def coefficient(s: Series, a_prime: int) -> int:
    return s.get(a_prime, 0)


def window_coefficient(s: int, w: int, h: int, a_prime: int) -> int:
    """Coefficient of x^a' in x^s (1+...+x^(w-1)) (1+...+x^(h-1)).

    Piecewise (ramp up, plateau of height h, ramp down); requires
    w >= h >= 1 and vanishes outside [s, s+w+h-2].
    """
    if h < 1 or w < h:
        raise ValueError(f"window requires w >= h >= 1, got w={w}, h={h}")
    if a_prime < s or a_prime > s + w + h - 2:
        return 0
    if a_prime <= s + h - 1:
        return a_prime - s + 1
    if a_prime <= s + w - 1:
        return h
    return s + w + h - 1 - a_prime


def _two_index_series(p: int, b: int, q: int) -> Series:
    coords = [c for c in (p, b, q) if c != 0]
    if not coords:
        return {0: 1}
    if len(coords) == 1:
        n = coords[0]
        return geom(0, n) if n > 0 else geom(n, -2)
    c1, c2 = coords
    f1 = geom(0, c1) if c1 > 0 else geom(c1, -2)
    f2 = geom(0, c2) if c2 > 0 else geom(c2, -2)
    return s_mul(f1, f2)


def _positive_series(l: int, m: int, n: int) -> Series:
    return s_add(
        s_mul(geom(0, l), geom(0, m)),
        s_shift(s_mul(geom(0, l + m), geom(0, n - 1)), 1),
    )


def _mixed_I_series(k: int, l: int, m: int) -> Series:
    # k >= 1 is minus the negative coordinate; l, m the two positives.
    if k <= l and k <= m:
        return s_add(
            s_mul(geom(-k, -1), geom(0, k - 2)),
            s_shift(s_mul(geom(0, l - k), geom(0, m - k)), k),
        )
    if k > l:
        lo, hi = l, m
    else:
        lo, hi = m, l
    return s_add(
        s_shift(s_mul(geom(0, lo), geom(0, lo - 1)), -(lo + 1)),
        s_shift(s_mul(geom(0, k - lo - 2), geom(0, lo + hi)), -k),
    )


def _mixed_II_series(j: int, k: int, l: int) -> Series:
    # l >= 1 is the positive coordinate; j, k >= 1 minus the negatives.
    if j >= l + 1 and k >= l + 1:
        return s_add(
            s_shift(s_mul(geom(0, j - l - 2), geom(0, k - l - 2)), -(j + k - l)),
            s_shift(s_mul(geom(0, l), geom(0, l - 1)), -(l + 1)),
        )
    if l >= k:
        jj, kk = j, k
    else:
        jj, kk = k, j
    return s_add(
        s_shift(s_mul(geom(0, jj - 2), geom(0, l - kk)), -jj),
        s_shift(s_mul(geom(0, l - 1), geom(0, kk - 1)), -kk),
    )


def _negative_series(i: int, j: int, k: int) -> Series:
    inner = s_add(
        s_mul(geom(0, j + k - 2), geom(0, i - 2)),
        s_shift(s_mul(geom(0, k - 1), geom(0, j - 1)), i - 1),
    )
    return s_shift(inner, -(i + j + k))


def poincare_series(p: int, b: int, q: int) -> Series:
    """Poincare series of a' -> dim H^(-a', p, b, q).

    Dispatches on the cone of (p, b, q); degrees with a zero coordinate
    use the two-index formulas, which is the precedence convention when
    several closed forms overlap.
    """
    coords = (p, b, q)
    if 0 in coords:
        return _two_index_series(p, b, q)
    if min(coords) > 0:
        return _positive_series(p, b, q)
    if max(coords) < 0:
        return _negative_series(-p, -b, -q)
    negatives = [i for i, c in enumerate(coords) if c < 0]
    if len(negatives) == 1:
        t = negatives[0]
        k = -coords[t]
        l, m = (c for i, c in enumerate(coords) if i != t)
        return _mixed_I_series(k, l, m)
    t = next(i for i, c in enumerate(coords) if c > 0)
    l = coords[t]
    j, k = (-c for i, c in enumerate(coords) if i != t)
    return _mixed_II_series(j, k, l)


def _mixed_II_frame(p: int, b: int, q: int):
    """(P, B, Q) with B the positive coordinate, (P, Q) the negatives."""
    coords = (p, b, q)
    pos = [i for i, c in enumerate(coords) if c >= 1]
    neg = [i for i, c in enumerate(coords) if c <= -1]
    if len(pos) != 1 or len(neg) != 2:
        raise ValueError(f"degree (p,b,q)=({p},{b},{q}) is outside Mixed Cone II")
    P, Q = coords[neg[0]], coords[neg[1]]
    return P, coords[pos[0]], Q


def mixed_II_kernel_series(p: int, b: int, q: int) -> Series:
    """Series of per-degree kernel dimensions of f on the iota chains."""
    P, B, Q = _mixed_II_frame(p, b, q)
    if -P >= B + 1 and -Q >= B + 1:
        return s_shift(s_mul(geom(0, B), geom(0, B - 1)), -B - 1)
    if -Q <= B:
        PP, QQ = P, Q
    else:
        PP, QQ = Q, P
    return s_add(
        s_shift(s_mul(geom(0, -PP - 2), geom(0, B + QQ)), PP),
        s_shift(s_mul(geom(0, B - 1), geom(0, -QQ - 1)), QQ),
    )


def x1_kernel_series(p: int, b: int, q: int) -> Series:
    """Series for the kernel of multiplication by x1 one sigma-step below."""
    if b + q < 0:
        raise ValueError(f"x1 kernel series needs b+q >= 0, got b+q={b + q}")
    return s_shift(geom(0, b + q), p - 1)


def mixed_II_main_series_parts(p: int, b: int, q: int):
    """(kappa-power part, iota-chain part) of the b+q >= 0 region series.

    The two summands count the kappa_3^(m3+1)-type and the divided
    kappa_1-type generator families; their sum is the full series there.
    """
    kappa_part = s_shift(s_mul(geom(0, -p - 2), geom(0, b + q)), p)
    iota_part = s_shift(s_mul(geom(0, b - 1), geom(0, -q - 1)), q)
    return kappa_part, iota_part


def series_to_json(s: Series) -> str:
    a_min = min(s) if s else None
    return json.dumps(
        {"a_prime_min": a_min, "coeffs": {str(e): c for e, c in sorted(s.items())}}
    )


def series_from_json(text: str) -> Series:
    data = json.loads(text)
    return {int(e): int(c) for e, c in data["coeffs"].items()}
