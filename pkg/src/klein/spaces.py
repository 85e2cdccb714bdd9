"""Derived structures: Mackey levels, the classifying-space family, and
the Bredon motivic cohomology of the real numbers.

The middle Mackey levels are Laurent extensions of one-index point rings
by the invertible classes y_i and the middle units t_a, t_b, t_c; the
classifying space B carries the module basis {b^k, b^k c} over the
eps-point ring; E-tilde is its suspension localized at x1, x3; and E
itself is kappa_2-periodic with positive-cone slices.  The motivic ring
of the reals decomposes as the R piece (b >= 0, b+q >= 0, point
dimensions) plus the nilpotent NC piece enumerated by divided
kappa_3/theta_1 shapes.
"""

from __future__ import annotations

from enum import Enum
from typing import List

from . import oracle
from .basis import Label, exps_from, make_label, xslot, yslot
from .grading import Degree


class MackeyLevel(Enum):
    TOP = "top"
    MID_C2 = "c2"
    MID_SIGMA2 = "sigma2"
    MID_DELTA = "delta"
    BOTTOM = "e"


def _one_index_point_dim(a: int, b: int) -> int:
    """dim of the C2-style point ring in degree a + b*rep."""
    if b >= 0:
        return 1 if -b <= a <= 0 else 0
    return 1 if 2 <= a <= -b else 0


def mackey_dim(level: MackeyLevel, d: Degree) -> int:
    """Dimension of one Mackey-functor level of the point at degree d."""
    a, p, b, q = d
    if level is MackeyLevel.TOP:
        return oracle.homology_dim(d)
    if level is MackeyLevel.MID_C2:
        # y1 clears sigma, t_a trades eps against sigma(x)eps.
        return _one_index_point_dim(a + p, b + q)
    if level is MackeyLevel.MID_SIGMA2:
        return _one_index_point_dim(a + b, p + q)
    if level is MackeyLevel.MID_DELTA:
        return _one_index_point_dim(a + q, b + p)
    return 1 if a == -p - b - q else 0


# Generators killed by each middle restriction (Theorem on the positive
# cone Mackey functor: the level misses exactly one Euler class).
_KILLED = {
    MackeyLevel.MID_C2: "x2",
    MackeyLevel.MID_SIGMA2: "x1",
    MackeyLevel.MID_DELTA: "x3",
}


def restrict(name: str, level: MackeyLevel) -> str:
    """Restriction of a generator to a lower level, as a printable class."""
    if level is MackeyLevel.TOP:
        return name
    if name in ("x1", "y1", "x2", "y2", "x3", "y3"):
        if level is MackeyLevel.BOTTOM:
            return name if name.startswith("y") else "0"
        return "0" if name == _KILLED[level] else name
    if name == "k3" and level is MackeyLevel.MID_C2:
        return "y1 t_a^-1"
    raise ValueError(f"restriction of {name} to {level.value} is not stated")


def dim_B(a: int, b: int) -> int:
    """dim H^(a+b*eps) of the Sigma2-equivariant classifying space."""
    total = 0
    k = 0
    while k <= max(a, 0) + abs(b) + 2:
        for t in (0, 1):
            total += _one_index_point_dim(a - k, b - k - t)
        k += 1
    return total


def _dim_B_reduced(a: int, b: int) -> int:
    return dim_B(a, b) - _one_index_point_dim(a, b)


def dim_Etilde(d: Degree) -> int:
    """Reduced dimension of E-tilde: clear p, q, then desuspend to B."""
    a, p, b, q = d
    # x1^p and x3^q are invertible on E-tilde; clearing order immaterial.
    return _dim_B_reduced(a - 1, b)


def dim_E(d: Degree) -> int:
    """Dimension for E via kappa_2-periodic reduction into the stable range.

    Shifting by kappa_2 until p, q >= 0 AND the E-tilde term of the
    isotropy sequence vanishes (n >= b and n >= a-1) identifies the
    E-group with a point group.
    """
    a, p, b, q = d
    n = max(0, -p, -q, b, a - 1)
    return oracle.homology_dim((a - n, p + n, b - n, q + n))


def split_check(d: Degree) -> bool:
    """Numerical shadow of the split isotropy sequence at p, q >= 0."""
    a, p, b, q = d
    if p < 0 or q < 0:
        raise ValueError("split_check requires p, q >= 0")
    return dim_E(d) == oracle.homology_dim(d) + dim_Etilde((a + 1, 0, b, 0))


def motivic_to_topological(a: int, p: int, b: int, q: int) -> Degree:
    """Cycle-map image of the motivic bidegree (a + p*sigma, b + q*sigma)."""
    return (a - b, p - q, b, q)


def nc_basis(d: Degree) -> List[Label]:
    """The motivic NC classes at d: divided kappa_3 theta_1 shapes.

    Both shape families carry an x1 tower (numerator or denominator) and
    x2, y2 monomial multipliers; enumeration is exact per degree.
    """
    a, p, b, q = d
    if b < 0 or b + q >= 0:
        raise ValueError(f"degree {d} is outside the NC region")
    out = []
    for parity in (1, 0):  # y1-denominator 2R-1 or 2R-2
        for r in range(1, b + 1):
            e1 = 2 * r - 2 + parity
            m2 = r + parity - a
            n2 = b - r - m2
            d3 = -q - r
            if m2 < 0 or n2 < 0 or d3 < 1:
                continue
            xshift = p - (r - 2 - e1)
            den = {xslot(3): d3, yslot(1): e1}
            num = {xslot(2): n2, yslot(2): m2}
            if xshift < 0:
                den[xslot(1)] = -xshift
            elif xshift > 0:
                num[xslot(1)] = xshift
            out.append(
                make_label({"k3": r, "th1": 1}, exps_from(num), exps_from(den))
            )
    return sorted(out)


def motivic_dim(a: int, p: int, b: int, q: int) -> int:
    """Dimension of the Bredon motivic cohomology of R, topological grading."""
    if b < 0:
        return 0
    if b + q >= 0:
        return oracle.homology_dim((a, p, b, q))
    return len(nc_basis((a, p, b, q)))
