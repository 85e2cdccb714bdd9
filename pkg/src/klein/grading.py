"""RO(C2 x Sigma2) degrees, generator degrees, and cone classification.

A degree a + p*sigma + b*eps + q*sigma(x)eps is stored as the 4-tuple
(a, p, b, q).  The three nontrivial one-dimensional representations are
indexed 1 (sigma), 2 (eps), 3 (sigma(x)eps); index i owns the generator
pair (x_i, y_i).
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable, Tuple

Degree = Tuple[int, int, int, int]

ZERO: Degree = (0, 0, 0, 0)


def add(*degrees: Degree) -> Degree:
    a = p = b = q = 0
    for (da, dp, db, dq) in degrees:
        a += da
        p += dp
        b += db
        q += dq
    return (a, p, b, q)


def sub(d1: Degree, d2: Degree) -> Degree:
    return (d1[0] - d2[0], d1[1] - d2[1], d1[2] - d2[2], d1[3] - d2[3])


def scale(n: int, d: Degree) -> Degree:
    return (n * d[0], n * d[1], n * d[2], n * d[3])


# Degrees of the sixteen named generators.  x_i sits in degree (0, e_i),
# y_i in (-1, e_i); theta_i in (2, -2e_i); kappa_i/iota_i mix all three
# signs and TH (the big Theta class) is kappa_i * theta_j * theta_k.
GENERATOR_DEGREES: dict[str, Degree] = {
    "x1": (0, 1, 0, 0),
    "y1": (-1, 1, 0, 0),
    "x2": (0, 0, 1, 0),
    "y2": (-1, 0, 1, 0),
    "x3": (0, 0, 0, 1),
    "y3": (-1, 0, 0, 1),
    "th1": (2, -2, 0, 0),
    "th2": (2, 0, -2, 0),
    "th3": (2, 0, 0, -2),
    "k1": (-1, -1, 1, 1),
    "k2": (-1, 1, -1, 1),
    "k3": (-1, 1, 1, -1),
    "i1": (1, 1, -1, -1),
    "i2": (1, -1, 1, -1),
    "i3": (1, -1, -1, 1),
    "TH": (3, -1, -1, -1),
}

GENERATOR_NAMES = tuple(GENERATOR_DEGREES)

# x/y variable names in the canonical order used everywhere (also the
# exponent-tuple order for labels: x1 y1 x2 y2 x3 y3).
VARS = ("x1", "y1", "x2", "y2", "x3", "y3")
VAR_INDEX = {v: i for i, v in enumerate(VARS)}

# f = x1*y2*y3 + y1*x2*y3 + y1*y2*x3, the single differential of every
# reduced chain complex.  Each term is a triple of variable names.
F_TERMS = (("x1", "y2", "y3"), ("y1", "x2", "y3"), ("y1", "y2", "x3"))
F_DEGREE: Degree = (-2, 1, 1, 1)


def degree_of_generator(name: str) -> Degree:
    """Degree of a named generator; raises KeyError on unknown names."""
    return GENERATOR_DEGREES[name]


def var_degree(v: str) -> Degree:
    return GENERATOR_DEGREES[v]


class Cone(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    MIXED_I = "mixed_I"
    MIXED_II = "mixed_II"
    TWO_INDEX = "two_index"
    ZERO = "zero"


class ConeKind:
    """A cone tag plus, for mixed cones, the distinguished index 1..3."""

    __slots__ = ("cone", "index")

    def __init__(self, cone: Cone, index: int = 0):
        self.cone = cone
        self.index = index

    def __eq__(self, other):
        return (
            isinstance(other, ConeKind)
            and self.cone == other.cone
            and self.index == other.index
        )

    def __hash__(self):
        return hash((self.cone, self.index))

    def __repr__(self):
        if self.index:
            return f"ConeKind({self.cone.value}, {self.index})"
        return f"ConeKind({self.cone.value})"


def cone_of(d: Degree) -> ConeKind:
    """Classify a degree into the cone that names its computation.

    Mixed cones are open (all three coordinates strictly signed); any
    degree with a zero coordinate next to a negative one is TwoIndex.
    """
    a, p, b, q = d
    coords = (p, b, q)
    if d == ZERO:
        return ConeKind(Cone.ZERO)
    if coords == (0, 0, 0):
        return ConeKind(Cone.TWO_INDEX)
    if min(coords) >= 0:
        return ConeKind(Cone.POSITIVE)
    if max(coords) <= -1:
        return ConeKind(Cone.NEGATIVE)
    if 0 in coords:
        return ConeKind(Cone.TWO_INDEX)
    negatives = [i for i, c in enumerate(coords, start=1) if c < 0]
    if len(negatives) == 1:
        return ConeKind(Cone.MIXED_I, negatives[0])
    positive = [i for i, c in enumerate(coords, start=1) if c > 0]
    return ConeKind(Cone.MIXED_II, positive[0])


def negative_indices(d: Degree) -> Tuple[int, ...]:
    """Indices i in 1..3 whose coordinate in (p, b, q) is negative."""
    return tuple(i for i, c in enumerate(d[1:], start=1) if c < 0)


# --- index permutations -------------------------------------------------
#
# The whole ring carries an S3 symmetry permuting the representation
# indices.  A permutation is a map {1,2,3} -> {1,2,3} stored as a tuple
# (pi(1), pi(2), pi(3)); it acts on degrees by shuffling (p, b, q) and on
# labels by renaming x_i -> x_pi(i) etc.

Perm = Tuple[int, int, int]

IDENTITY: Perm = (1, 2, 3)
ALL_PERMS: Tuple[Perm, ...] = (
    (1, 2, 3), (1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1),
)


def perm_apply(pi: Perm, i: int) -> int:
    return pi[i - 1]


def perm_inverse(pi: Perm) -> Perm:
    inv = [0, 0, 0]
    for i in (1, 2, 3):
        inv[pi[i - 1] - 1] = i
    return (inv[0], inv[1], inv[2])


def perm_degree(pi: Perm, d: Degree) -> Degree:
    """Push a degree forward: coordinate i of d lands in slot pi(i)."""
    a, p, b, q = d
    out = [0, 0, 0]
    for i, c in enumerate((p, b, q), start=1):
        out[pi[i - 1] - 1] = c
    return (a, out[0], out[1], out[2])


def perm_fixing(i: int, j: int) -> Perm:
    """The transposition sending i to j (identity if i == j)."""
    if i == j:
        return IDENTITY
    pi = [1, 2, 3]
    pi[i - 1], pi[j - 1] = pi[j - 1], pi[i - 1]
    return (pi[0], pi[1], pi[2])


def other_two(i: int) -> Tuple[int, int]:
    """The two indices distinct from i, in increasing order."""
    return tuple(j for j in (1, 2, 3) if j != i)  # type: ignore[return-value]


def support_a_range(p: int, b: int, q: int) -> Iterable[int]:
    """All a with |a| <= |p|+|b|+|q|+3, the support window of the series."""
    w = abs(p) + abs(b) + abs(q) + 3
    return range(-w, w + 1)
