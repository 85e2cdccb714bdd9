"""Named canonical bases for every cohomology group of the point.

A basis label is a formal product of head generators (kappa powers and
theta factors; iota and the top class TH are stored in their kappa*theta
normal form), a numerator monomial and a denominator monomial in the six
x/y variables.  The shapes follow the per-cone structure theorems:
positive-cone normal-form monomials, kappa-power plus theta-coset labels
in Mixed Cone I, the divided kappa/theta families in Mixed Cone II, and
kappa1-power double-theta fractions in the negative cone.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Tuple

from . import oracle
from .grading import (
    Degree,
    GENERATOR_DEGREES,
    VARS,
    cone_of,
    Cone,
    other_two,
    var_degree,
)

Exps = Tuple[int, int, int, int, int, int]
ZERO6: Exps = (0, 0, 0, 0, 0, 0)


def xslot(i: int) -> int:
    return 2 * (i - 1)


def yslot(i: int) -> int:
    return 2 * (i - 1) + 1


@dataclass(frozen=True, order=True)
class Label:
    """One F2 basis element: heads * numerator / denominator."""

    heads: Tuple[Tuple[str, int], ...]
    num: Exps = ZERO6
    den: Exps = ZERO6

    def degree(self) -> Degree:
        a = p = b = q = 0
        for name, e in self.heads:
            da, dp, db, dq = GENERATOR_DEGREES[name]
            a, p, b, q = a + e * da, p + e * dp, b + e * db, q + e * dq
        for s in range(6):
            da, dp, db, dq = var_degree(VARS[s])
            e = self.num[s] - self.den[s]
            a, p, b, q = a + e * da, p + e * dp, b + e * db, q + e * dq
        return (a, p, b, q)

    def head_dict(self) -> Dict[str, int]:
        return dict(self.heads)


def make_label(heads: Dict[str, int], num: Exps = ZERO6, den: Exps = ZERO6) -> Label:
    hs = tuple(sorted((n, e) for n, e in heads.items() if e))
    return Label(hs, tuple(num), tuple(den))


UNIT = make_label({})


def exps_from(pairs: Dict[int, int]) -> Exps:
    out = [0] * 6
    for s, e in pairs.items():
        out[s] = e
    return tuple(out)  # type: ignore[return-value]


def chain_to_label(chain: oracle.ChainLabel) -> Label:
    """Convert a theta-side chain label to its basis label."""
    head, exps = chain
    base, divided = oracle.HEAD_INFO[head]
    num = [0] * 6
    den = [0] * 6
    for s, e in enumerate(exps):
        (den if divided[s] else num)[s] = e
    names = head.split("th")
    heads = {f"th{part}": 1 for part in names if part}
    return make_label(heads, tuple(num), tuple(den))


def label_to_chain(label: Label) -> oracle.ChainLabel:
    """Inverse of chain_to_label for pure theta labels."""
    heads = label.head_dict()
    indices = sorted(int(n[2:]) for n in heads)
    head = "".join(f"th{i}" for i in indices)
    exps = tuple(label.num[s] + label.den[s] for s in range(6))
    return (head, exps)


def _pos_monomials(d: Degree) -> List[Label]:
    # Normal form mod f: monomials not divisible by x1*y2*y3.
    out = []
    for chain in oracle.chain_basis(d)[1]:
        exps = chain[1]
        if exps[0] >= 1 and exps[3] >= 1 and exps[5] >= 1:
            continue
        out.append(make_label({}, exps))
    return out


def _kappa_power_labels(d: Degree, i: int) -> List[Label]:
    a, *coords = d
    r = -coords[i - 1]
    if r < 1:
        return []
    j, k = other_two(i)
    sj = coords[j - 1] - r
    sk = coords[k - 1] - r
    if sj < 0 or sk < 0:
        return []
    out = []
    for mj in range(sj + 1):
        mk = -a - r - mj
        if 0 <= mk <= sk:
            num = exps_from(
                {xslot(j): sj - mj, yslot(j): mj, xslot(k): sk - mk, yslot(k): mk}
            )
            out.append(make_label({f"k{i}": r}, num))
    return out


def _coset_labels(d: Degree) -> List[Label]:
    return [chain_to_label(c) for c in oracle.cokernel_basis(d)]


def _mixed_II_frame(d: Degree):
    """(c, j, k, P, B, Q): positive index c, negatives (j, k) in order."""
    coords = d[1:]
    c = next(i for i in (1, 2, 3) if coords[i - 1] >= 1)
    j, k = other_two(c)
    return c, j, k, coords[j - 1], coords[c - 1], coords[k - 1]


def _iota_chain_labels(a, c, j, k, P, B, Q) -> List[Label]:
    """Divided kappa_j * theta_k labels (the iota-chain family)."""
    n1 = -1 - P
    out = []
    for m2 in range(B):
        m3 = a - 1 + m2
        n3 = -1 - Q - m3
        n2 = B - 1 - m2
        if m3 < 0 or n3 < 0:
            continue
        den = exps_from({xslot(j): n1, xslot(k): n3, yslot(k): m3})
        num = exps_from({xslot(c): n2, yslot(c): m2})
        out.append(make_label({f"k{j}": 1, f"th{k}": 1}, num, den))
    return out


def _kappa_theta_labels(a, c, j, k, P, B, Q) -> List[Label]:
    """kappa_k-power times divided theta_j labels (needs P <= -2)."""
    m3 = -Q - 1
    out = []
    for m2 in range(m3, B):
        m1 = m2 + Q + a
        n1 = -1 - P - m1
        if m1 < 1 or n1 < 0:
            continue
        den = exps_from({xslot(j): n1, yslot(j): m3 + m1})
        num = exps_from({xslot(c): B - 1 - m2, yslot(c): m2 - m3})
        out.append(make_label({f"k{k}": m3 + 1, f"th{j}": 1}, num, den))
    return out


def _deep_kappa_labels(a, c, j, k, P, B, Q) -> List[Label]:
    """Deep-region kappa_k-power labels divided by x_k (at most one)."""
    n = a - 2
    n1 = -P - a
    m3 = B - 1
    n3 = -Q - B - 1
    if n < 0 or n1 < 0 or n3 < 0 or not (n <= m3 <= n + n1):
        return []
    den = exps_from({xslot(k): n3 + 1, xslot(j): n1, yslot(j): m3 + 1 + n})
    return [make_label({f"k{k}": m3 + 1, f"th{j}": 1}, den=den)]


def _deep_iota_labels(a, c, j, k, P, B, Q) -> List[Label]:
    """Deep-region x_k-divided iota-chain labels."""
    out = []
    for m2 in range(B):
        m3 = a - 1 + m2
        n2 = B - 1 - m2
        if m3 < 0:
            continue
        n3 = n2 + m2 - m3
        gap = -2 - Q - m3
        n = gap - n3
        n1 = -2 - P - n2 - m2
        if n3 < 0 or n < 0 or n1 < 0:
            continue
        den = exps_from(
            {xslot(j): n2 + m2 + n1 + 1, xslot(k): n3 + n + 1, yslot(k): m3}
        )
        num = exps_from({xslot(c): n2, yslot(c): m2})
        out.append(make_label({f"k{j}": 1, f"th{k}": 1}, num, den))
    return out


def _mixed_II_basis(d: Degree) -> List[Label]:
    a = d[0]
    c, j, k, P, B, Q = _mixed_II_frame(d)
    if B + Q >= 0:
        return _kappa_theta_labels(a, c, j, k, P, B, Q) + _iota_chain_labels(
            a, c, j, k, P, B, Q
        )
    if B + P >= 0:
        # Mirror region: swap the roles of the two divided indices.
        return _kappa_theta_labels(a, c, k, j, Q, B, P) + _iota_chain_labels(
            a, c, k, j, Q, B, P
        )
    return (
        _deep_kappa_labels(a, c, j, k, P, B, Q)
        + _deep_iota_labels(a, c, j, k, P, B, Q)
        + _coset_labels(d)
    )


def _negative_labels(d: Degree) -> List[Label]:
    a, p, b, q = d
    r = -p
    out = []
    for m2 in range(r - 1 - b + 1):
        m3 = a + r - 4 - m2
        n2 = r - 2 - b - m2
        n3 = r - 2 - q - m3
        if m3 < 0 or n2 < 0 or n3 < 0:
            continue
        if not (m3 >= r - 1 or m2 >= r):
            continue
        den = exps_from({xslot(2): n2, yslot(2): m2, xslot(3): n3, yslot(3): m3})
        out.append(make_label({"k1": r, "th2": 1, "th3": 1}, den=den))
    return out


@lru_cache(maxsize=None)
def canonical_basis(d: Degree) -> Tuple[Label, ...]:
    """The named F2 basis of H^d(pt; Z/2), deterministically ordered."""
    kind = cone_of(d)
    if kind.cone == Cone.ZERO:
        labels = [UNIT]
    elif kind.cone == Cone.POSITIVE:
        labels = _pos_monomials(d)
    elif kind.cone == Cone.TWO_INDEX:
        if min(d[1:]) >= 0:
            labels = _pos_monomials(d)
        else:
            labels = _coset_labels(d)
    elif kind.cone == Cone.MIXED_I:
        labels = _kappa_power_labels(d, kind.index) + _coset_labels(d)
    elif kind.cone == Cone.MIXED_II:
        labels = _mixed_II_basis(d)
    else:
        labels = _negative_labels(d)
    return tuple(sorted(labels))


@lru_cache(maxsize=None)
def _basis_set(d: Degree):
    return frozenset(canonical_basis(d))


def is_basis_label(label: Label) -> bool:
    return label in _basis_set(label.degree())


def coset_reduce(d: Degree, terms: Iterable[Label]) -> List[Label]:
    """Reduce a homogeneous sum of theta-side labels modulo im f.

    Every term must be a pure theta label of degree d; the result is the
    canonical representative over non-pivot labels.
    """
    chains = []
    for t in terms:
        if t.degree() != d:
            raise ValueError("coset_reduce needs homogeneous input")
        chains.append(label_to_chain(t))
    reduced = oracle.reduce_target_vector(d, chains)
    return [chain_to_label(c) for c in reduced]
