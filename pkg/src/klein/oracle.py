"""Ground-truth homology engine for the point cohomology.

Each cone has one reduced chain complex 0 -> D --f--> T -> 0 where f is
multiplication by x1*y2*y3 + y1*x2*y3 + y1*y2*x3 after substituting the
head (kappa_i -> theta_i, iota_i -> theta_j*theta_k, Theta -> triple).
Chain labels are (head, exps) with exps the six exponents in the order
x1 y1 x2 y2 x3 y3; a slot is a denominator exponent when the head
divides that variable and a numerator exponent otherwise.  f raises the
cohomological a by one and fixes (p, b, q), so all linear algebra for a
fixed (p, b, q) happens inside one slice.

The complex serving a degree is selected by the set of strictly
negative coordinates among (p, b, q); boundary degrees (a zero
coordinate) are served by the unique adjacent complex that set picks.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .grading import (
    Degree,
    F_DEGREE,
    GENERATOR_DEGREES,
    VARS,
    negative_indices,
    other_two,
    var_degree,
)

ChainLabel = Tuple[str, Tuple[int, int, int, int, int, int]]

# head -> (base degree, divided-slot mask over the six variable slots)
_PAIR_SLOTS = {1: (0, 1), 2: (2, 3), 3: (4, 5)}


def _mask(indices) -> Tuple[bool, ...]:
    slots = [False] * 6
    for i in indices:
        for s in _PAIR_SLOTS[i]:
            slots[s] = True
    return tuple(slots)


def _pair_sum(degrees: Sequence[Degree]) -> Degree:
    a = p = b = q = 0
    for (da, dp, db, dq) in degrees:
        a, p, b, q = a + da, p + dp, b + db, q + dq
    return (a, p, b, q)


HEAD_INFO: Dict[str, Tuple[Degree, Tuple[bool, ...]]] = {
    "poly": ((0, 0, 0, 0), _mask(())),
}
for _i in (1, 2, 3):
    _j, _k = other_two(_i)
    HEAD_INFO[f"k{_i}"] = (GENERATOR_DEGREES[f"k{_i}"], _mask((_i,)))
    HEAD_INFO[f"th{_i}"] = (GENERATOR_DEGREES[f"th{_i}"], _mask((_i,)))
    HEAD_INFO[f"i{_i}"] = (GENERATOR_DEGREES[f"i{_i}"], _mask((_j, _k)))
    HEAD_INFO[f"th{_j}th{_k}"] = (
        _pair_sum([GENERATOR_DEGREES[f"th{_j}"], GENERATOR_DEGREES[f"th{_k}"]]),
        _mask((_j, _k)),
    )
HEAD_INFO["TH"] = (GENERATOR_DEGREES["TH"], _mask((1, 2, 3)))
HEAD_INFO["th1th2th3"] = ((6, -2, -2, -2), _mask((1, 2, 3)))

# D-head -> T-head of the complexes.
DIFFERENTIAL_TARGET = {
    "poly": "poly",
    "k1": "th1",
    "k2": "th2",
    "k3": "th3",
    "i1": "th2th3",
    "i2": "th1th3",
    "i3": "th1th2",
    "TH": "th1th2th3",
}


def complex_heads(p: int, b: int, q: int) -> Tuple[str, str]:
    """(D-head, T-head) of the complex serving all degrees over (p,b,q)."""
    neg = negative_indices((0, p, b, q))
    if not neg:
        return ("poly", "poly")
    if len(neg) == 1:
        return (f"k{neg[0]}", f"th{neg[0]}")
    if len(neg) == 2:
        t = next(i for i in (1, 2, 3) if i not in neg)
        return (f"i{t}", f"th{neg[0]}th{neg[1]}")
    return ("TH", "th1th2th3")


def label_degree(label: ChainLabel) -> Degree:
    head, exps = label
    base, divided = HEAD_INFO[head]
    a, p, b, q = base
    for s, e in enumerate(exps):
        if not e:
            continue
        da, dp, db, dq = var_degree(VARS[s])
        if divided[s]:
            a, p, b, q = a - e * da, p - e * dp, b - e * db, q - e * dq
        else:
            a, p, b, q = a + e * da, p + e * dp, b + e * db, q + e * dq
    return (a, p, b, q)


def apply_f(label: ChainLabel) -> List[ChainLabel]:
    """Image of a domain chain under f, as an F2 list of target chains.

    Multiplying a divided variable decrements its denominator exponent
    and kills the term at exponent zero; other variables increment
    their numerator exponent.
    """
    head, exps = label
    target = DIFFERENTIAL_TARGET[head]
    divided = HEAD_INFO[target][1]
    out: List[ChainLabel] = []
    for term in ((0, 3, 5), (1, 2, 5), (1, 3, 4)):  # x1y2y3, y1x2y3, y1y2x3
        new = list(exps)
        ok = True
        for s in term:
            if divided[s]:
                if new[s] == 0:
                    ok = False
                    break
                new[s] -= 1
            else:
                new[s] += 1
        if ok:
            out.append((target, tuple(new)))
    # F2 cancellation of repeated targets
    seen: Dict[ChainLabel, int] = {}
    for lab in out:
        seen[lab] = seen.get(lab, 0) ^ 1
    return sorted(lab for lab, c in seen.items() if c)


class F2Matrix:
    """Dense bit matrix over F2; rows are Python ints, bit s = column s."""

    def __init__(self, rows: List[int], cols: int):
        self.rows = list(rows)
        self.cols = cols

    def rank(self) -> int:
        return len(_echelon(self.rows)[0])

    def kernel_basis(self) -> List[int]:
        """Masks over row indices whose F2 row-combinations vanish.

        Deterministic: rows are inserted in order with lowest-column
        pivots, so the kernel masks are reproducible across runs.
        """
        basis: List[Tuple[int, int]] = []  # (Jordan-reduced row, tag)
        kernel: List[int] = []
        for i, vec in enumerate(self.rows):
            tag = 1 << i
            for rvec, rtag in basis:
                if vec & (rvec & -rvec):
                    vec ^= rvec
                    tag ^= rtag
            if vec:
                pivot = vec & -vec
                for j, (rvec, rtag) in enumerate(basis):
                    if rvec & pivot:
                        basis[j] = (rvec ^ vec, rtag ^ tag)
                basis.append((vec, tag))
            else:
                kernel.append(tag)
        return kernel

    def in_row_span(self, vec: int) -> bool:
        rows, _ = _echelon(self.rows)
        return _reduce_vec(vec, rows) == 0


def _echelon(rows: List[int]) -> Tuple[List[int], List[int]]:
    """Gauss-Jordan basis with lowest-bit pivots; returns (rows, pivot cols).

    Every returned row contains no other row's pivot, so a single pass
    of _reduce_vec is an exact reduction modulo the row space.
    """
    basis: List[int] = []
    pivots: List[int] = []
    for vec in rows:
        vec = _reduce_vec(vec, basis)
        if vec:
            pivot = vec & -vec
            for j, rvec in enumerate(basis):
                if rvec & pivot:
                    basis[j] = rvec ^ vec
            basis.append(vec)
            pivots.append(pivot.bit_length() - 1)
    return basis, pivots


def _reduce_vec(vec: int, basis: List[int]) -> int:
    for rvec in basis:
        if vec & (rvec & -rvec):
            vec ^= rvec
    return vec


def _lowest_bit_index(vec: int) -> int:
    return (vec & (-vec)).bit_length() - 1


class Slice:
    """All chain data of one complex over a fixed (p, b, q)."""

    def __init__(self, p: int, b: int, q: int):
        self.pbq = (p, b, q)
        self.d_head, self.t_head = complex_heads(p, b, q)
        self.domain = _enumerate_side(self.d_head, p, b, q, domain=True)
        self.target = _enumerate_side(self.t_head, p, b, q, domain=False)
        self._echelons: Dict[int, Tuple[List[int], List[int]]] = {}

    def matrix(self, a: int) -> F2Matrix:
        """Rows = f-images of the domain labels at cohomological degree a."""
        dom = self.domain.get(a, [])
        tgt = self.target.get(a + 1, [])
        index = {lab: s for s, lab in enumerate(tgt)}
        rows = []
        for lab in dom:
            vec = 0
            for out in apply_f(lab):
                vec ^= 1 << index[out]
            rows.append(vec)
        return F2Matrix(rows, len(tgt))

    def echelon_into(self, a: int) -> Tuple[List[int], List[int]]:
        """Echelon rows and pivot columns of the image landing in T_a."""
        if a not in self._echelons:
            self._echelons[a] = _echelon(self.matrix(a - 1).rows)
        return self._echelons[a]

    def kernel_dim(self, a: int) -> int:
        m = self.matrix(a)
        return len(m.rows) - m.rank()

    def cokernel_dim(self, a: int) -> int:
        return len(self.target.get(a, [])) - len(self.echelon_into(a)[0])


def _enumerate_side(head: str, p: int, b: int, q: int, domain: bool):
    """Bucket all labels of one side by cohomological degree a."""
    base, divided = HEAD_INFO[head]
    sums = []
    for i, c in zip((1, 2, 3), (p, b, q)):
        s0 = _PAIR_SLOTS[i][0]
        need = (base[i] - c) if divided[s0] else (c - base[i])
        if need < 0:
            return {}
        sums.append((s0, divided[s0], need))
    out: Dict[int, List[ChainLabel]] = {}
    (s1, d1, S1), (s2, d2, S2), (s3, d3, S3) = sums
    for m1 in range(S1 + 1):
        a1 = base[0] + (m1 if d1 else -m1)
        for m2 in range(S2 + 1):
            a2 = a1 + (m2 if d2 else -m2)
            for m3 in range(S3 + 1):
                a = a2 + (m3 if d3 else -m3)
                exps = [0] * 6
                exps[s1], exps[s1 + 1] = S1 - m1, m1
                exps[s2], exps[s2 + 1] = S2 - m2, m2
                exps[s3], exps[s3 + 1] = S3 - m3, m3
                out.setdefault(a, []).append((head, tuple(exps)))
    for labs in out.values():
        labs.sort()
    return out


@lru_cache(maxsize=None)
def get_slice(p: int, b: int, q: int) -> Slice:
    return Slice(p, b, q)


def chain_basis(d: Degree) -> Tuple[List[ChainLabel], List[ChainLabel]]:
    """(domain labels, target labels) of the serving complex at degree d."""
    a, p, b, q = d
    if complex_heads(p, b, q)[0] == "poly":
        mono = _monomials(d)
        return (mono, mono)
    sl = get_slice(p, b, q)
    return (list(sl.domain.get(a, [])), list(sl.target.get(a, [])))


def _monomials(d: Degree) -> List[ChainLabel]:
    a, p, b, q = d
    if p < 0 or b < 0 or q < 0:
        return []
    out = []
    for m1 in range(p + 1):
        for m2 in range(b + 1):
            m3 = -a - m1 - m2
            if 0 <= m3 <= q:
                out.append(
                    ("poly", (p - m1, m1, b - m2, m2, q - m3, m3))
                )
    out.sort()
    return out


def _monomial_count(d: Degree) -> int:
    a, p, b, q = d
    if p < 0 or b < 0 or q < 0:
        return 0
    total = 0
    for m1 in range(p + 1):
        lo = max(0, -a - m1 - q)
        hi = min(b, -a - m1)
        if hi >= lo:
            total += hi - lo + 1
    return total


def homology_dim(d: Degree) -> int:
    """dim of H^d(pt; Z/2) = ker f at d plus coker of f into degree d."""
    a, p, b, q = d
    if complex_heads(p, b, q)[0] == "poly":
        # f is injective on the polynomial side, so the quotient counts
        # monomials minus f-multiples.
        return _monomial_count(d) - _monomial_count(
            (a - F_DEGREE[0], p - F_DEGREE[1], b - F_DEGREE[2], q - F_DEGREE[3])
        )
    sl = get_slice(p, b, q)
    return sl.kernel_dim(a) + sl.cokernel_dim(a)


def kernel_basis(d: Degree) -> List[List[ChainLabel]]:
    """Deterministic F2 basis of ker f at degree d, as label sums."""
    a, p, b, q = d
    if complex_heads(p, b, q)[0] == "poly":
        return []
    sl = get_slice(p, b, q)
    dom = sl.domain.get(a, [])
    out = []
    for mask in sl.matrix(a).kernel_basis():
        out.append([dom[s] for s in range(len(dom)) if mask >> s & 1])
    return out


def cokernel_basis(d: Degree) -> List[ChainLabel]:
    """Target labels whose classes form a basis of T_d / f(D_(a-1))."""
    a, p, b, q = d
    if complex_heads(p, b, q)[0] == "poly":
        mono = _monomials(d)
        rows, _ = _echelon(
            [_poly_f_image_vec(lab, mono) for lab in _monomials(
                (a - F_DEGREE[0], p - F_DEGREE[1], b - F_DEGREE[2], q - F_DEGREE[3]))]
        )
        pivots = {_lowest_bit_index(r) for r in rows}
        return [lab for s, lab in enumerate(mono) if s not in pivots]
    sl = get_slice(p, b, q)
    tgt = sl.target.get(a, [])
    _, pivots = sl.echelon_into(a)
    pivot_set = set(pivots)
    return [lab for s, lab in enumerate(tgt) if s not in pivot_set]


def _poly_f_image_vec(label: ChainLabel, target_order: List[ChainLabel]) -> int:
    index = {lab: s for s, lab in enumerate(target_order)}
    vec = 0
    for out in apply_f(label):
        vec ^= 1 << index[out]
    return vec


def reduce_target_vector(d: Degree, terms: Sequence[ChainLabel]):
    """Reduce an F2 sum of T_d labels modulo the image of f.

    Returns the list of labels of the unique representative supported on
    non-pivot positions.  Labels must all live in degree d.
    """
    a, p, b, q = d
    sl = get_slice(p, b, q)
    tgt = sl.target.get(a, [])
    index = {lab: s for s, lab in enumerate(tgt)}
    vec = 0
    for lab in terms:
        vec ^= 1 << index[lab]
    rows, _ = sl.echelon_into(a)
    vec = _reduce_vec(vec, rows)
    return [tgt[s] for s in range(len(tgt)) if vec >> s & 1]
