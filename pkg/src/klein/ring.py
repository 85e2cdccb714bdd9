"""Multiplication engine for homogeneous elements of the point ring.

Products are computed pairwise on basis labels.  Labels built purely
from honest factors (kappa powers, theta fractions, monomials) multiply
through a small rewriting calculus on those factors; labels that involve
a division choice (kappa divided by its own Euler class: the divided
Mixed Cone II and motivic families) multiply only through the product
formulas stated for them.  Any pair outside both regimes yields the
Undetermined outcome; the engine never guesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

from . import basis as basis_mod
from .grading import (
    ALL_PERMS,
    Degree,
    GENERATOR_DEGREES,
    Perm,
    VARS,
    add,
    other_two,
    perm_apply,
    perm_inverse,
)
from .basis import (
    Exps,
    Label,
    UNIT,
    ZERO6,
    exps_from,
    is_basis_label,
    make_label,
    xslot,
    yslot,
)


class RingError(ValueError):
    pass


class ParseError(RingError):
    pass


class UndeterminedError(RingError):
    pass


@dataclass(frozen=True)
class Element:
    """Homogeneous F2 combination of labels; empty terms = zero."""

    degree: Degree
    terms: frozenset

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(serialize_label(t) for t in sorted(self.terms))


def element(degree: Degree, labels: Iterable[Label] = ()) -> Element:
    acc: Dict[Label, int] = {}
    for lab in labels:
        acc[lab] = acc.get(lab, 0) ^ 1
    return Element(degree, frozenset(l for l, c in acc.items() if c))


@dataclass(frozen=True)
class ProductOutcome:
    """Determined(element) or Undetermined(reason)."""

    determined: bool
    value: Optional[Element] = None
    reason: str = ""

    @staticmethod
    def of(el: Element) -> "ProductOutcome":
        return ProductOutcome(True, el)

    @staticmethod
    def undetermined(reason: str) -> "ProductOutcome":
        return ProductOutcome(False, None, reason)


# --- label anatomy -------------------------------------------------------


def _head_indices(label: Label):
    kappas = {}
    thetas = {}
    for name, e in label.heads:
        if name.startswith("k"):
            kappas[int(name[1])] = e
        else:
            thetas[int(name[2])] = e
    return kappas, thetas


def is_honest(label: Label) -> bool:
    """True when the label is a literal product of well-defined classes.

    Division is only honest inside a theta fraction; a denominator on a
    slot whose pair carries no theta head records a division choice.
    """
    _, thetas = _head_indices(label)
    for i in (1, 2, 3):
        if label.den[xslot(i)] or label.den[yslot(i)]:
            if thetas.get(i, 0) != 1:
                return False
    return True


def perm_label(pi: Perm, label: Label) -> Label:
    heads = {}
    for name, e in label.heads:
        if name.startswith("k"):
            heads[f"k{perm_apply(pi, int(name[1]))}"] = e
        else:
            heads[f"th{perm_apply(pi, int(name[2]))}"] = e
    num = [0] * 6
    den = [0] * 6
    for i in (1, 2, 3):
        t = perm_apply(pi, i)
        num[xslot(t)] = label.num[xslot(i)]
        num[yslot(t)] = label.num[yslot(i)]
        den[xslot(t)] = label.den[xslot(i)]
        den[yslot(t)] = label.den[yslot(i)]
    return make_label(heads, tuple(num), tuple(den))


def _pair_total(exps: Exps, i: int) -> int:
    return exps[xslot(i)] + exps[yslot(i)]


def nc_shape_valid(label: Label) -> bool:
    """Shape test for the motivic NC family in any frame.

    Standard frame: kappa_3^R / x3^D3 * theta_1/(x1^d y1^e) * x1-tower
    times a monomial in x2, y2, with e in {2R-1, 2R-2} and the x1
    numerator only when the x1 denominator is exhausted.
    """
    kappas, thetas = _head_indices(label)
    if len(kappas) != 1 or len(thetas) != 1:
        return False
    (u, r), (v, tv) = next(iter(kappas.items())), next(iter(thetas.items()))
    if tv != 1 or u == v or r < 1:
        return False
    c = next(i for i in (1, 2, 3) if i not in (u, v))
    if label.den[xslot(u)] < 1 or label.den[yslot(u)]:
        return False
    if label.den[xslot(c)] or label.den[yslot(c)]:
        return False
    if label.num[xslot(u)] or label.num[yslot(u)] or label.num[yslot(v)]:
        return False
    e1 = label.den[yslot(v)]
    if e1 not in (2 * r - 1, 2 * r - 2):
        return False
    if label.num[xslot(v)] and label.den[xslot(v)]:
        return False
    # The family lives where the kappa-side coordinate stays dominated.
    coords = label.degree()[1:]
    return coords[c - 1] + coords[u - 1] <= -1


KIND_UNIT = "unit"
KIND_POS = "pos"
KIND_KPOW = "kpow"
KIND_THC = "thc"
KIND_THTH = "thth"
KIND_NEG = "neg"
KIND_KTH = "kth"        # honest kappa-power * theta fraction (iota/A family)
KIND_KTDIV = "ktdiv"    # kappa divided by its own x (IOB/B2/NC families)
KIND_BAD = "bad"


def classify(label: Label) -> Tuple[str, tuple]:
    kappas, thetas = _head_indices(label)
    if not kappas and not thetas:
        if any(label.den):
            return (KIND_BAD, ())
        if not any(label.num):
            return (KIND_UNIT, ())
        return (KIND_POS, ())
    if not thetas:
        if len(kappas) != 1 or any(label.den):
            return (KIND_BAD, ())
        i, r = next(iter(kappas.items()))
        if _pair_total(label.num, i):
            return (KIND_BAD, ())
        return (KIND_KPOW, (i, r))
    if not kappas:
        idx = sorted(thetas)
        if any(e != 1 for e in thetas.values()):
            return (KIND_BAD, ())
        if len(idx) == 1:
            return (KIND_THC, (idx[0],))
        if len(idx) == 2:
            return (KIND_THTH, tuple(idx))
        return (KIND_BAD, ())
    if len(kappas) == 1 and len(thetas) == 2:
        i, r = next(iter(kappas.items()))
        if i in thetas or _pair_total(label.den, i) or any(label.num):
            return (KIND_BAD, ())
        return (KIND_NEG, (i, r))
    if len(kappas) == 1 and len(thetas) == 1:
        (u, r), (v, _) = next(iter(kappas.items())), next(iter(thetas.items()))
        if u == v or label.den[yslot(u)]:
            return (KIND_BAD, ())
        if label.den[xslot(u)]:
            return (KIND_KTDIV, (u, v, r))
        return (KIND_KTH, (u, v, r))
    return (KIND_BAD, ())


def is_nilpotent(label: Label) -> bool:
    """Negative-cone, Mixed Cone II and theta-fraction labels only."""
    kind, _ = classify(label)
    return kind in (KIND_THC, KIND_THTH, KIND_NEG, KIND_KTH, KIND_KTDIV)


# --- the honest rewriting calculus ---------------------------------------
#
# A state is (kappas, thetas, vars): a single kappa power at most after
# merging, theta fractions by index, and a plain variable monomial.
# Rewrites: variables act on theta fractions by truncation, kappa_i
# absorbs its own pair via kappa_i*x_i = x_j*y_k + x_k*y_j and
# kappa_i*y_i = y_j*y_k, and kappa powers of distinct index contract via
# kappa_i*kappa_j = y_k^2.  Same-index theta fractions annihilate and so
# does any triple theta product.

State = Tuple[Tuple[Tuple[int, int], ...], Tuple[Tuple[int, Tuple[int, int]], ...], Exps]


def _state_from_parts(kappas: Dict[int, int], thetas: Dict[int, Tuple[int, int]], nums: Exps):
    return (
        tuple(sorted((i, r) for i, r in kappas.items() if r)),
        tuple(sorted(thetas.items())),
        tuple(nums),
    )


def _merge_states(l1: Label, l2: Label) -> Optional[State]:
    """Combine two honest labels into one state; None means product 0."""
    kappas: Dict[int, int] = {}
    thetas: Dict[int, Tuple[int, int]] = {}
    nums = [a + b for a, b in zip(l1.num, l2.num)]
    for lab in (l1, l2):
        ks, ts = _head_indices(lab)
        for i, r in ks.items():
            kappas[i] = kappas.get(i, 0) + r
        for i, t_exp in ts.items():
            if t_exp >= 2 or i in thetas:
                return None  # same-index theta fractions multiply to zero
            thetas[i] = (lab.den[xslot(i)], lab.den[yslot(i)])
    if len(thetas) >= 3:
        return None  # triple divided theta product vanishes
    return _state_from_parts(kappas, thetas, tuple(nums))


def _state_step(state: State) -> Optional[List[State]]:
    """One rewrite; None when the state is terminal, [] when it is zero."""
    kappas = dict(state[0])
    thetas = dict(state[1])
    nums = list(state[2])
    for i in (1, 2, 3):
        xs, ys = xslot(i), yslot(i)
        if i in thetas and (nums[xs] or nums[ys]):
            nd, md = thetas[i]
            if nums[xs]:
                if nd == 0:
                    return []
                nums[xs] -= 1
                thetas[i] = (nd - 1, md)
            else:
                if md == 0:
                    return []
                nums[ys] -= 1
                thetas[i] = (nd, md - 1)
            return [_state_from_parts(kappas, thetas, tuple(nums))]
        if kappas.get(i) and (nums[xs] or nums[ys]):
            j, k = other_two(i)
            kappas[i] -= 1
            if nums[ys]:
                nums[ys] -= 1
                nums[yslot(j)] += 1
                nums[yslot(k)] += 1
                return [_state_from_parts(kappas, thetas, tuple(nums))]
            nums[xs] -= 1
            b1 = nums[:]
            b1[xslot(j)] += 1
            b1[yslot(k)] += 1
            b2 = nums[:]
            b2[xslot(k)] += 1
            b2[yslot(j)] += 1
            return [
                _state_from_parts(kappas, thetas, tuple(b1)),
                _state_from_parts(kappas, thetas, tuple(b2)),
            ]
    live = [i for i, r in kappas.items() if r]
    if len(live) >= 2:
        i, j = live[0], live[1]
        k = next(t for t in (1, 2, 3) if t not in (i, j))
        t = min(kappas[i], kappas[j])
        kappas[i] -= t
        kappas[j] -= t
        nums[yslot(k)] += 2 * t
        return [_state_from_parts(kappas, thetas, tuple(nums))]
    return None


def _run_states(initial: State) -> Dict[State, int]:
    """Rewrite to terminal states with F2 multiplicities."""
    pending = {initial: 1}
    terminal: Dict[State, int] = {}
    while pending:
        state, par = pending.popitem()
        if not par:
            continue
        nxt = _state_step(state)
        if nxt is None:
            terminal[state] = terminal.get(state, 0) ^ par
        else:
            for s in nxt:
                pending[s] = pending.get(s, 0) ^ 1
    return {s: c for s, c in terminal.items() if c}


@lru_cache(maxsize=None)
def _normal_form_monomial(num: Exps) -> Tuple[Exps, ...]:
    """Positive-cone normal form: rewrite x1y2y3 -> y1x2y3 + y1y2x3."""
    if num[0] >= 1 and num[3] >= 1 and num[5] >= 1:
        base = list(num)
        base[0] -= 1
        base[3] -= 1
        base[5] -= 1
        acc: Dict[Exps, int] = {}
        for bump in ((1, 2, 5), (1, 3, 4)):  # y1x2y3 and y1y2x3
            m = base[:]
            for s in bump:
                m[s] += 1
            for out in _normal_form_monomial(tuple(m)):
                acc[out] = acc.get(out, 0) ^ 1
        return tuple(sorted(m for m, c in acc.items() if c))
    return (num,)


def _theta_raw_label(thetas, nums) -> Label:
    heads = {f"th{i}": 1 for i in thetas}
    den = [0] * 6
    for i, (nd, md) in thetas.items():
        den[xslot(i)], den[yslot(i)] = nd, md
    return make_label(heads, tuple(nums), tuple(den))


def _assemble(state: State) -> Tuple[str, List[Label]]:
    """Terminal state -> canonical labels, or an undetermined verdict."""
    kappas, thetas, nums = dict(state[0]), dict(state[1]), state[2]
    if not thetas:
        if not kappas:
            return ("ok", [make_label({}, m) for m in _normal_form_monomial(nums)])
        i, r = next(iter(kappas.items()))
        return ("ok", [make_label({f"k{i}": r}, nums)])
    if not kappas:
        raw = _theta_raw_label(thetas, nums)
        reduced = basis_mod.coset_reduce(raw.degree(), [raw])
        return ("ok", reduced)
    i, r = next(iter(kappas.items()))
    if i in thetas:
        # kappa_i against theta_i is open; but with r = 1 and a bare
        # second theta the kappa*theta pair contracts to an iota, and
        # iota_k * theta_i (bare, k != i) vanishes.
        if (
            r == 1
            and len(thetas) == 2
            and all(e == 0 for e in thetas[i])
        ):
            j = next(t for t in thetas if t != i)
            if thetas[j] == (0, 0):
                return ("ok", [])
        return ("und", [])
    if len(thetas) == 1:
        v = next(iter(thetas))
        label = make_label(
            {f"k{i}": r, f"th{v}": 1},
            nums,
            _theta_raw_label(thetas, ZERO6).den,
        )
        if is_basis_label(label):
            return ("ok", [label])
        if r == 1 and thetas[v] == (0, 0):
            # kappa_i * theta_v = iota_c: rename to the canonical
            # kappa/theta pair of the iota_c frame.
            c = next(t for t in (1, 2, 3) if t not in (i, v))
            j, k = other_two(c)
            swapped = make_label({f"k{j}": 1, f"th{k}": 1}, nums)
            if is_basis_label(swapped):
                return ("ok", [swapped])
        return ("und", [])
    # kappa times a double theta fraction: the negative-cone raw shape.
    heads = {f"th{t}": 1 for t in thetas}
    heads[f"k{i}"] = r
    label = make_label(heads, nums, _theta_raw_label(thetas, ZERO6).den)
    if any(nums):
        return ("und", [])
    if not any(label.den):
        if r == 1:
            return ("ok", [make_label({"k1": 1, "th2": 1, "th3": 1})])
        return ("ok", [])  # kappa * TH = 0
    if i == 1 and is_basis_label(label):
        return ("ok", [label])
    return ("und", [])


def _honest_mul(l1: Label, l2: Label) -> ProductOutcome:
    initial = _merge_states(l1, l2)
    deg = add(l1.degree(), l2.degree())
    if initial is None:
        return ProductOutcome.of(element(deg))
    acc: Dict[Label, int] = {}
    for state in _run_states(initial):
        verdict, labels = _assemble(state)
        if verdict != "ok":
            return ProductOutcome.undetermined(
                f"no stated relation covers {serialize_label(l1)} * {serialize_label(l2)}"
            )
        for lab in labels:
            acc[lab] = acc.get(lab, 0) ^ 1
    return ProductOutcome.of(element(deg, [l for l, c in acc.items() if c]))


# --- divided-label product formulas ---------------------------------------


def _binom_mod2(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return 1 if (n & k) == k else 0


def _ktdiv_frame(label: Label):
    """(u, v, c, r, n1, n3, m3, n2, m2) of a divided kappa-theta label."""
    kappas, thetas = _head_indices(label)
    u, r = next(iter(kappas.items()))
    v = next(iter(thetas))
    c = next(i for i in (1, 2, 3) if i not in (u, v))
    return (
        u, v, c, r,
        label.den[xslot(u)],
        label.den[xslot(v)],
        label.den[yslot(v)],
        label.num[xslot(c)],
        label.num[yslot(c)],
    )


def _make_iob(u, v, c, n1, n3, m3, n2, m2) -> Label:
    return make_label(
        {f"k{u}": 1, f"th{v}": 1},
        exps_from({xslot(c): n2, yslot(c): m2}),
        exps_from({xslot(u): n1, xslot(v): n3, yslot(v): m3}),
    )


def _make_kth(u, v, r, nden, mden, num) -> Label:
    return make_label({f"k{u}": r, f"th{v}": 1}, num,
                      exps_from({xslot(v): nden, yslot(v): mden}))


def _mul_var_iob(slot: int, label: Label) -> Optional[List[Label]]:
    """One variable times a divided iota-chain label; None = not stated."""
    u, v, c, r, n1, n3, m3, n2, m2 = _ktdiv_frame(label)
    if slot == xslot(c):
        return [_make_iob(u, v, c, n1, n3, m3, n2 + 1, m2)]
    if slot == yslot(c):
        return [_make_iob(u, v, c, n1, n3, m3, n2, m2 + 1)]
    if slot == xslot(u):
        # x_u divides out one choice level exactly.
        return [_make_iob(u, v, c, n1 - 1, n3, m3, n2, m2)]
    if slot == yslot(u):
        if m3 == 0:
            return []  # y_u and y_v annihilate the m3 = 0 shapes
        total = n2 + m2
        if m2 >= m3 - 1:
            lo, hi = n2, m3 - 1 + n2
        else:
            lo, hi = n2 - n3 - 1, n2 - 1
        out = []
        for t in range(max(lo, 0), hi + 1):
            out.append(
                _make_iob(u, v, c, n1 - 1, n3 - n2 + t + 1, m3 + n2 - t - 1,
                          t, total - t)
            )
        return out
    if slot == yslot(v):
        if m3 == 0:
            return []
        out = [_make_iob(u, v, c, n1, n3, m3 - 1, n2, m2)]
        if 2 <= m3 - m2 <= n1 + 1:
            if _binom_mod2(n3 + m3 - m2 - 2, n3):
                out.append(
                    make_label(
                        {f"k{v}": n3 + m3, f"th{u}": 1},
                        exps_from({xslot(c): n2 + m2 - n3 - m3 + 1}),
                        exps_from(
                            {xslot(u): m2 - m3 + n1 + 1,
                             yslot(u): 2 * m3 + n3 - m2 - 2}
                        ),
                    )
                )
        return out
    if slot == xslot(v):
        if n3 > 0 or m3 == 0:
            return None  # x_v action stated only for pure y_v fractions
        if 2 <= m3 - m2 <= n1:
            return [
                make_label(
                    {f"k{v}": m3, f"th{u}": 1},
                    exps_from({xslot(c): n2 + m2 - m3 + 1}),
                    exps_from({xslot(u): m2 - m3 + n1,
                               yslot(u): 2 * m3 - m2 - 1}),
                )
            ]
        if m3 - m2 <= 1:
            return [
                make_label(
                    {f"k{v}": m3, f"th{u}": 1},
                    exps_from({xslot(c): n2, yslot(c): m2 - m3 + 1}),
                    exps_from({xslot(u): n1 - 1, yslot(u): m3}),
                )
            ]
        return []
    return None


def _mul_var_b2(slot: int, label: Label) -> Optional[List[Label]]:
    u, v, c, r, n1, n3, m3, n2, m2 = _ktdiv_frame(label)
    if slot == xslot(u):
        if n1 - 1 >= n2 + m2 + 1:
            return [_make_iob(u, v, c, n1 - 1, n3, m3, n2, m2)]
        return None
    if slot == xslot(v):
        cand = _make_iob(u, v, c, n1, n3 - 1, m3, n2, m2)
        if is_basis_label(cand):
            return [cand]
        return None
    return None


def _mul_var_a2(slot: int, label: Label) -> Optional[List[Label]]:
    """x-actions on the deep kappa-power family (x_u and x_v towers)."""
    u, v, c, r, *_ = _ktdiv_frame(label)
    num = list(label.num)
    den = list(label.den)
    if slot == xslot(u):
        if den[slot] >= 2:
            den[slot] -= 1
            return [Label(label.heads, tuple(num), tuple(den))]
        den[slot] = 0
        cand = Label(label.heads, tuple(num), tuple(den))
        return [cand] if is_basis_label(cand) else None
    if slot == xslot(v):
        if den[slot] == 0:
            return []  # the x_v-undivided deep shapes die under x_v
        den[slot] -= 1
        cand = Label(label.heads, tuple(num), tuple(den))
        if is_basis_label(cand) or nc_shape_valid(cand):
            return [cand]
        return None
    return None


def _mul_var_ncm(slot: int, label: Label) -> Optional[List[Label]]:
    u, v, c, r, *_ = _ktdiv_frame(label)
    num = list(label.num)
    den = list(label.den)
    if slot in (xslot(c), yslot(c)):
        num[slot] += 1
        cand = Label(label.heads, tuple(num), tuple(den))
        if nc_shape_valid(cand):
            return [cand]
        return None
    if slot == xslot(v):
        if den[slot]:
            den[slot] -= 1
        else:
            num[slot] += 1
        return [Label(label.heads, tuple(num), tuple(den))]
    if slot == xslot(u):
        if den[slot] >= 2:
            den[slot] -= 1
            return [Label(label.heads, tuple(num), tuple(den))]
        # bottom of the x_u tower: the boundary kappa-theta label
        den[slot] = 0
        cand = Label(label.heads, tuple(num), tuple(den))
        if is_basis_label(cand):
            return [cand]
        return None
    return None


def _ktdiv_role(label: Label) -> str:
    """'iob', 'b2', 'a2' or 'ncm' behaviour of a divided kappa-theta label.

    Canonical basis membership wins over the motivic NC shape: a label
    in the additive-structure basis follows its cone's product rules.
    """
    if is_basis_label(label):
        u, v, c, r, n1, n3, m3, n2, m2 = _ktdiv_frame(label)
        coords = label.degree()[1:]
        deep = (
            coords[c - 1] + coords[u - 1] < 0
            and coords[c - 1] + coords[v - 1] < 0
        )
        if not deep:
            return "iob"
        if n2 == m2 == 0 and m3 >= 1:
            return "a2"
        return "b2"
    if nc_shape_valid(label):
        return "ncm"
    return "bad"


def _mul_pos_divided(mono: Label, label: Label) -> ProductOutcome:
    """Peel a monomial onto a divided Mixed Cone II label."""
    role = _ktdiv_role(label)
    if role == "bad":
        return ProductOutcome.undetermined(
            f"label {serialize_label(label)} is not a recognized class"
        )
    table = {
        "iob": _mul_var_iob,
        "b2": _mul_var_b2,
        "a2": _mul_var_a2,
        "ncm": _mul_var_ncm,
    }
    # Peel denominator-clearing variables first so later steps see the
    # shallowest (most determined) divided shapes.
    order = []
    for i in (1, 2, 3):
        order.extend([xslot(i)] * mono.num[xslot(i)])
    for i in (1, 2, 3):
        order.extend([yslot(i)] * mono.num[yslot(i)])
    current: Dict[Label, int] = {label: 1}
    for slot in order:
        nxt: Dict[Label, int] = {}
        for lab, par in current.items():
            if not par:
                continue
            kind, _ = classify(lab)
            if kind == KIND_KTDIV:
                rl = _ktdiv_role(lab)
                if rl == "bad":
                    return ProductOutcome.undetermined(
                        f"intermediate label {serialize_label(lab)} unrecognized"
                    )
                outs = table[rl](slot, lab)
            else:
                var = make_label({}, exps_from({slot: 1}))
                res = mul_labels(var, lab)
                if not res.determined:
                    return res
                outs = list(res.value.terms)
            if outs is None:
                return ProductOutcome.undetermined(
                    f"{VARS[slot]} * {serialize_label(lab)} is not stated"
                )
            for out in outs:
                nxt[out] = nxt.get(out, 0) ^ 1
        current = nxt
    deg = add(mono.degree(), label.degree())
    return ProductOutcome.of(element(deg, [l for l, c in current.items() if c]))


# --- motivic nilpotent families (zero products) ----------------------------


def _motivic_nilpotent_std(label: Label) -> bool:
    """Membership in nilpotents_1 in the standard (iota_2) frame."""
    kind, info = classify(label)
    if kind == KIND_THC:
        i = info[0]
        if i == 1:
            return True
        if i == 3:
            return _pair_total(label.num, 2) >= _pair_total(label.den, 3) + 2
        return False
    if kind in (KIND_KTH, KIND_KTDIV):
        if kind == KIND_KTH:
            u, v, _ = info
        else:
            u, v, c, *_ = _ktdiv_frame(label)
        # iota-side families carry kappa_1, kappa-side families kappa_3.
        if is_basis_label(label):
            return (u, v) in ((1, 3), (3, 1))
        return nc_shape_valid(label) and (u, v) == (3, 1)
    return False


def _common_motivic_frame(l1: Label, l2: Label) -> bool:
    for pi in ALL_PERMS:
        inv = perm_inverse(pi)
        if _motivic_nilpotent_std(perm_label(inv, l1)) and _motivic_nilpotent_std(
            perm_label(inv, l2)
        ):
            return True
    return False


def _torsion_bound(label: Label, i: int) -> Optional[int]:
    """N with x_i^N * label = 0, certified by an honest theta_i factor."""
    if not is_honest(label):
        return None
    _, thetas = _head_indices(label)
    if i in thetas:
        return label.den[xslot(i)] + 1
    return None


def _divisible_indices(label: Label) -> Tuple[int, ...]:
    """Indices i with label infinitely divisible by x_i."""
    kind, info = classify(label)
    if kind != KIND_KTDIV:
        return ()
    u, v, c, *_ = _ktdiv_frame(label)
    role = _ktdiv_role(label)
    if role == "iob":
        return (u,)
    if role in ("b2", "a2", "ncm"):
        return (u, v)
    return ()


# --- the dispatcher --------------------------------------------------------


def mul_labels(l1: Label, l2: Label) -> ProductOutcome:
    deg = add(l1.degree(), l2.degree())
    k1, _ = classify(l1)
    k2, _ = classify(l2)
    if k1 == KIND_UNIT:
        return ProductOutcome.of(element(deg, [l2]))
    if k2 == KIND_UNIT:
        return ProductOutcome.of(element(deg, [l1]))
    if k1 == KIND_BAD or k2 == KIND_BAD:
        return ProductOutcome.undetermined("unrecognized label in product")

    honest1, honest2 = is_honest(l1), is_honest(l2)
    if honest1 and honest2:
        out = _honest_mul(l1, l2)
        if out.determined:
            return out
    else:
        if k1 == KIND_POS:
            return _mul_pos_divided(l1, l2)
        if k2 == KIND_POS:
            return _mul_pos_divided(l2, l1)
        if k1 == KIND_NEG or k2 == KIND_NEG:
            # The negative cone kills the whole Mixed Cone of Type II.
            return ProductOutcome.of(element(deg))

    if _common_motivic_frame(l1, l2):
        return ProductOutcome.of(element(deg))

    for torsion, divided in ((l1, l2), (l2, l1)):
        for i in _divisible_indices(divided):
            if _torsion_bound(torsion, i) is not None:
                return ProductOutcome.of(element(deg))

    return ProductOutcome.undetermined(
        f"no stated relation covers {serialize_label(l1)} * {serialize_label(l2)}"
    )


def multiply(e1: Element, e2: Element) -> ProductOutcome:
    """Pairwise label products summed over F2; Determined only if all are."""
    deg = add(e1.degree, e2.degree)
    acc: Dict[Label, int] = {}
    for a in sorted(e1.terms):
        for b in sorted(e2.terms):
            out = mul_labels(a, b)
            if not out.determined:
                return out
            for lab in out.value.terms:
                acc[lab] = acc.get(lab, 0) ^ 1
    return ProductOutcome.of(element(deg, [l for l, c in acc.items() if c]))


# --- parsing and printing ---------------------------------------------------

_HEAD_DIVIDED_PAIRS = {}
for _i in (1, 2, 3):
    _HEAD_DIVIDED_PAIRS[f"k{_i}"] = {_i}
    _HEAD_DIVIDED_PAIRS[f"th{_i}"] = {_i}
    _HEAD_DIVIDED_PAIRS[f"i{_i}"] = set(other_two(_i))
_HEAD_DIVIDED_PAIRS["TH"] = {1, 2, 3}

_IOTA_SUBST = {1: ("k2", "th3"), 2: ("k1", "th3"), 3: ("k1", "th2")}


def _tokenize(text: str) -> List[str]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+*/^()":
            tokens.append(ch)
            i += 1
            continue
        j = i
        while j < len(text) and (text[j].isalnum() or text[j] == "_"):
            j += 1
        if j == i:
            raise ParseError(f"unexpected character {ch!r}")
        tokens.append(text[i:j])
        i = j
    return tokens


class _Parser:
    def __init__(self, tokens: List[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Optional[str]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        self.pos += 1
        return tok

    def expect(self, what: str):
        tok = self.take()
        if tok != what:
            raise ParseError(f"expected {what!r}, got {tok!r}")

    def parse_uint(self) -> int:
        tok = self.take()
        if not tok.isdigit():
            raise ParseError(f"expected integer exponent, got {tok!r}")
        return int(tok)


def _parse_factor(p: _Parser):
    head = p.take()
    if head == "1":
        return ("1", 1, {})
    if head not in GENERATOR_DEGREES:
        raise ParseError(f"unknown generator {head!r}")
    exp = 1
    if p.peek() == "^":
        p.take()
        exp = p.parse_uint()
    den: Dict[str, int] = {}
    if p.peek() == "/":
        p.take()
        allowed = _HEAD_DIVIDED_PAIRS.get(head)
        if allowed is None:
            raise ParseError(f"{head} admits no denominator")
        if p.peek() == "(":
            p.take()
            while p.peek() != ")":
                var = p.take()
                if var not in ("x1", "y1", "x2", "y2", "x3", "y3"):
                    raise ParseError(f"bad denominator variable {var!r}")
                e = 1
                if p.peek() == "^":
                    p.take()
                    e = p.parse_uint()
                den[var] = den.get(var, 0) + e
            p.take()
        else:
            var = p.take()
            if var not in ("x1", "y1", "x2", "y2", "x3", "y3"):
                raise ParseError(f"bad denominator variable {var!r}")
            e = 1
            if p.peek() == "^":
                p.take()
                e = p.parse_uint()
            den[var] = e
        for var in den:
            if int(var[1]) not in allowed:
                raise ParseError(f"{var} is not divided by {head}")
    return (head, exp, den)


def _var_slot(var: str) -> int:
    return xslot(int(var[1])) + (1 if var[0] == "y" else 0)


def _term_to_element(factors) -> Element:
    heads: Dict[str, int] = {}
    num = [0] * 6
    den = [0] * 6
    for head, exp, dens in factors:
        if head == "1":
            pass
        elif head in ("x1", "y1", "x2", "y2", "x3", "y3"):
            num[_var_slot(head)] += exp
        elif head.startswith("i"):
            a, b = _IOTA_SUBST[int(head[1])]
            heads[a] = heads.get(a, 0) + exp
            heads[b] = heads.get(b, 0) + exp
        elif head == "TH":
            for nm in ("k1", "th2", "th3"):
                heads[nm] = heads.get(nm, 0) + exp
        else:
            heads[head] = heads.get(head, 0) + exp
        for var, e in dens.items():
            den[_var_slot(var)] += e
    raw = make_label(heads, tuple(num), tuple(den))
    return _resolve_raw(raw)


def _resolve_raw(raw: Label) -> Element:
    deg = raw.degree()
    if is_basis_label(raw) or nc_shape_valid(raw):
        return element(deg, [raw])
    if is_honest(raw):
        out = _honest_mul(raw, UNIT)
        if out.determined:
            return out.value
        raise UndeterminedError(f"cannot normalize {serialize_label(raw)}")
    raise ParseError(f"{serialize_label(raw)} is not a recognized class name")


def parse(text: str) -> Element:
    """Parse an element of the grammar; rejects mixed-degree sums."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty element")
    p = _Parser(tokens)
    acc: Dict[Label, int] = {}
    degree: Optional[Degree] = None
    while True:
        factors = [_parse_factor(p)]
        while p.peek() is not None and p.peek() != "+":
            if p.peek() == "*":
                p.take()
            factors.append(_parse_factor(p))
        el = _term_to_element(factors)
        if degree is None:
            degree = el.degree
        elif el.terms and el.degree != degree:
            raise ParseError(f"inhomogeneous sum: {el.degree} vs {degree}")
        for lab in el.terms:
            acc[lab] = acc.get(lab, 0) ^ 1
        if p.peek() is None:
            break
        p.expect("+")
    assert degree is not None
    return element(degree, [l for l, c in acc.items() if c])


def _fmt_exp(var: str, e: int) -> str:
    return var if e == 1 else f"{var}^{e}"


def _fmt_monomial(exps: Exps) -> str:
    parts = [_fmt_exp(VARS[s], exps[s]) for s in range(6) if exps[s]]
    return " ".join(parts)


def _fmt_denominator(parts: List[str]) -> str:
    if len(parts) == 1 and "^" not in parts[0]:
        return parts[0]
    if len(parts) == 1:
        return parts[0]
    return "(" + " ".join(parts) + ")"


def serialize_label(label: Label) -> str:
    """Canonical printable name; round-trips through parse."""
    kind, info = classify(label)
    if kind == KIND_UNIT:
        return "1"
    if kind == KIND_POS:
        return _fmt_monomial(label.num)
    heads = label.head_dict()
    if kind == KIND_NEG and heads == {"k1": 1, "th2": 1, "th3": 1} and not any(
        label.den
    ):
        return "TH"
    if kind == KIND_KTH:
        u, v, r = info
        if r == 1 and not any(label.den):
            i = next(i for i in (1, 2, 3) if i not in (u, v))
            name = f"i{i}"
            mono = _fmt_monomial(label.num)
            return f"{name} * {mono}" if mono else name
    factors = []
    for name, e in sorted(heads.items()):
        base = name if e == 1 else f"{name}^{e}"
        i = int(name[1]) if name.startswith("k") else int(name[2])
        dparts = []
        for s in (xslot(i), yslot(i)):
            if label.den[s]:
                dparts.append(_fmt_exp(VARS[s], label.den[s]))
        factors.append(f"{base}/{_fmt_denominator(dparts)}" if dparts else base)
    mono = _fmt_monomial(label.num)
    if mono:
        factors.append(mono)
    return " * ".join(factors)


def serialize_element(el: Element) -> str:
    return str(el)
