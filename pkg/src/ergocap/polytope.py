"""Exact vertex enumeration for polytopes cut out of a probability simplex.

Incremental double description: start from the standard simplex (whose
vertices are the unit vectors), then impose one inequality at a time.
Each cut keeps the satisfying vertices and adds the intersection of the
hyperplane with every edge joining a strictly-inside vertex to a
strictly-outside one.  Edges are recognized combinatorially: two vertices
span an edge iff no third vertex is tight on every constraint tight at
both.  All arithmetic is over `fractions.Fraction`, so the output is the
exact vertex set.

Cost grows with the number of live vertices, not with the number of
candidate constraint bases, which keeps the envelope cores of this
library (tens of vertices) cheap even at the full subset-constraint
count 2**m.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)
ONE = Fraction(1)

Vector = tuple[Fraction, ...]
Row = tuple[Sequence[Fraction], Fraction]


def _dot(coeffs: Sequence[Fraction], x: Vector) -> Fraction:
    total = ZERO
    for c, v in zip(coeffs, x):
        if c:
            total += c * v
    return total


def simplex_cut_vertices(dim: int, rows: Sequence[Row]) -> list[Vector]:
    """Vertices of {x >= 0, sum(x) = 1, a.x <= b for every (a, b) in rows}.

    Returns the exact vertex list, deduplicated and sorted
    lexicographically; empty list means an empty polytope.
    """
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    verts: list[Vector] = []
    tight: list[int] = []
    base = (1 << dim) - 1
    for i in range(dim):
        verts.append(tuple(ONE if j == i else ZERO for j in range(dim)))
        tight.append(base ^ (1 << i))

    processed: list[Row] = []

    def tight_mask(x: Vector) -> int:
        mask = 0
        for j in range(dim):
            if x[j] == 0:
                mask |= 1 << j
        for r, (coeffs, rhs) in enumerate(processed):
            if _dot(coeffs, x) == rhs:
                mask |= 1 << (dim + r)
        return mask

    for coeffs, rhs in rows:
        processed.append((coeffs, rhs))
        cid = 1 << (dim + len(processed) - 1)
        vals = [_dot(coeffs, v) - rhs for v in verts]
        if all(val <= 0 for val in vals):
            for i, val in enumerate(vals):
                if val == 0:
                    tight[i] |= cid
            continue
        inside = [i for i, val in enumerate(vals) if val < 0]
        on = [i for i, val in enumerate(vals) if val == 0]
        if not inside and not on:
            return []
        outside = [i for i, val in enumerate(vals) if val > 0]

        fresh: dict[Vector, int] = {}
        for i in inside:
            ti = tight[i]
            for k in outside:
                common = ti & tight[k]
                edge = True
                for z in range(len(verts)):
                    if z != i and z != k and common & ~tight[z] == 0:
                        edge = False
                        break
                if not edge:
                    continue
                t = vals[i] / (vals[i] - vals[k])
                p = tuple(a + t * (b - a) for a, b in zip(verts[i], verts[k]))
                if p not in fresh:
                    fresh[p] = tight_mask(p)

        new_verts: list[Vector] = []
        new_tight: list[int] = []
        for i in inside:
            new_verts.append(verts[i])
            new_tight.append(tight[i])
        for i in on:
            new_verts.append(verts[i])
            new_tight.append(tight[i] | cid)
        for p, msk in fresh.items():
            new_verts.append(p)
            new_tight.append(msk)
        verts, tight = new_verts, new_tight

    for v in verts:
        if any(x < 0 for x in v) or sum(v) != 1:
            raise RuntimeError("vertex escaped the simplex; cut bookkeeping is broken")
        for coeffs, rhs in processed:
            if _dot(coeffs, v) > rhs:
                raise RuntimeError("vertex violates a processed constraint")
    return sorted(set(verts))
