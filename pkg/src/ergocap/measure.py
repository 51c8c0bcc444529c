"""Exact probability measures on a finite space and their map structure.

Everything is a `fractions.Fraction`; no floats enter any computation.
The key structural facts used throughout: the invariant probabilities of
a finite deterministic map are exactly the convex combinations of the
uniform distributions on its terminal cycles, and the ergodic ones are
exactly those uniforms themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InternalVerificationError
from . import space
from .space import SubsetMask, Transformation

ZERO = Fraction(0)
ONE = Fraction(1)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {value!r}")


@dataclass(frozen=True)
class Prob:
    """A probability mass vector over points 0..m-1."""

    mass: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        vals = tuple(_as_fraction(v) for v in self.mass)
        object.__setattr__(self, "mass", vals)
        if not 1 <= len(vals) <= space.MAX_POINTS:
            raise ValueError(f"mass vector length must be 1..{space.MAX_POINTS}")
        if any(v < 0 for v in vals):
            raise ValueError("negative mass")
        if sum(vals) != 1:
            raise ValueError(f"mass sums to {sum(vals)}, not 1")

    @property
    def size(self) -> int:
        return len(self.mass)

    def __call__(self, mask: SubsetMask) -> Fraction:
        """P(A) for a bitmask A."""
        total = ZERO
        for w in space.points(mask):
            total += self.mass[w]
        return total

    def support(self) -> SubsetMask:
        out = 0
        for w, v in enumerate(self.mass):
            if v > 0:
                out |= 1 << w
        return out


@lru_cache(maxsize=4096)
def subset_sums(mass: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    """P(A) for every bitmask A, indexed by mask."""
    m = len(mass)
    out = [ZERO] * (1 << m)
    for a in range(1, 1 << m):
        low = a & -a
        out[a] = out[a ^ low] + mass[low.bit_length() - 1]
    return tuple(out)


def expectation(P: Prob, values: tuple[Fraction, ...]) -> Fraction:
    if len(values) != P.size:
        raise ValueError("function and measure live on different spaces")
    return sum((p * v for p, v in zip(P.mass, values)), ZERO)


def conditional(P: Prob, mask: SubsetMask) -> Prob:
    """P conditioned on a set of positive mass."""
    total = P(mask)
    if total == 0:
        raise ValueError("cannot condition on a null set")
    return Prob(tuple(P.mass[w] / total if mask >> w & 1 else ZERO for w in range(P.size)))


def pushforward(P: Prob, T: Transformation) -> Prob:
    """The image measure A -> P(preimage(T, A))."""
    if P.size != T.size:
        raise ValueError("measure and map live on different spaces")
    out = [ZERO] * P.size
    for w, v in enumerate(P.mass):
        out[T.table[w]] += v
    return Prob(tuple(out))


def is_invariant(P: Prob, T: Transformation) -> bool:
    return pushforward(P, T) == P


def is_ergodic(P: Prob, T: Transformation) -> bool:
    """Whether an invariant P gives every preimage-fixed set mass 0 or 1."""
    if not is_invariant(P, T):
        raise ValueError("measure is not invariant under the map")
    for mask in space.invariant_sets(T):
        if P(mask) not in (0, 1):
            return False
    return True


def ergodic_probabilities(T: Transformation) -> list[Prob]:
    """All ergodic invariant probabilities: the uniform measure on each cycle.

    Ordered by least cycle element.
    """
    out = []
    for mask, pts in space.cycles(T):
        share = Fraction(1, len(pts))
        out.append(Prob(tuple(share if mask >> w & 1 else ZERO for w in range(T.size))))
    return out


def cesaro_limit(P: Prob, T: Transformation) -> Prob:
    """Limit of the running averages of the pushforward iterates of P.

    The iterate sequence is eventually periodic (preperiod at most the
    tree depth, period dividing the lcm of cycle lengths), so the limit
    is the exact mean of one full period of the tail.
    """
    burn = space.preperiod_bound(T)
    period = space.period_lcm(T)
    current = P
    for _ in range(burn):
        current = pushforward(current, T)
    acc = [ZERO] * P.size
    for _ in range(period):
        for w, v in enumerate(current.mass):
            acc[w] += v
        current = pushforward(current, T)
    limit = Prob(tuple(v / period for v in acc))
    if not is_invariant(limit, T):
        raise InternalVerificationError("tail average of pushforwards is not invariant")
    return limit


def invariant_skeleton(P: Prob, T: Transformation) -> Prob:
    """The invariant measure that agrees with P on every preimage-fixed set.

    Each component's mass is spread uniformly over that component's cycle.
    The defining property (agreement with P on all preimage-fixed sets) is
    re-checked by scan; a failure is a library bug, not a data property.
    """
    if P.size != T.size:
        raise ValueError("measure and map live on different spaces")
    out = [ZERO] * P.size
    comp = space.components(T)
    cyc = space.cycles(T)
    for cell in comp:
        weight = P(cell)
        if weight == 0:
            continue
        for mask, pts in cyc:
            if mask & cell:
                share = weight / len(pts)
                for w in pts:
                    out[w] += share
                break
    skel = Prob(tuple(out))
    for mask in space.invariant_sets(T):
        if skel(mask) != P(mask):
            raise InternalVerificationError("skeleton disagrees with the source on a fixed set")
    if not is_invariant(skel, T):
        raise InternalVerificationError("skeleton is not invariant")
    return skel


def abs_continuous(P: Prob, R: Prob) -> bool:
    """P << R: every R-null point is P-null."""
    if P.size != R.size:
        raise ValueError("measures live on different spaces")
    return P.support() & ~R.support() == 0


def singular(P: Prob, R: Prob) -> bool:
    """P and R concentrate on disjoint sets."""
    if P.size != R.size:
        raise ValueError("measures live on different spaces")
    return P.support() & R.support() == 0


def lebesgue_decomposition_invariant(
    P: Prob, R: Prob, T: Transformation
) -> tuple[Fraction, Prob | None, Fraction, Prob | None]:
    """Split invariant P into invariant parts << R and perpendicular to R.

    Requires both measures invariant and the map invertible.  Returns
    ``(k, Pa, l, Ps)`` with ``P = k*Pa + l*Ps``, ``Pa << R``, ``Ps`` singular
    to R, and both parts invariant.  The boundary cases k = 0 and l = 0 are
    permitted; the undefined conditional slot is then None.
    """
    if not space.is_invertible(T):
        raise ValueError("decomposition requires an invertible map")
    if not is_invariant(P, T):
        raise ValueError("P is not invariant under the map")
    if not is_invariant(R, T):
        raise ValueError("R is not invariant under the map")
    # For an invertible map an invariant measure's support is a union of
    # cycles, hence itself preimage-fixed: conditioning on it preserves
    # invariance.
    S = R.support()
    if not space.is_invariant_set(T, S):
        raise InternalVerificationError("support of an invariant measure is not fixed")
    k = P(S)
    l = ONE - k
    Pa = conditional(P, S) if k > 0 else None
    Ps = conditional(P, space.complement(S, T.size)) if l > 0 else None
    for part in (Pa, Ps):
        if part is not None and not is_invariant(part, T):
            raise InternalVerificationError("conditional of an invariant measure on a fixed set is not invariant")
    if Pa is not None and not abs_continuous(Pa, R):
        raise InternalVerificationError("absolutely continuous part escapes the support of R")
    if Ps is not None and not singular(Ps, R):
        raise InternalVerificationError("singular part meets the support of R")
    return k, Pa, l, Ps
