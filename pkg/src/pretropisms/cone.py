"""Exact polyhedral cones with both representations materialised.

A :class:`Cone` carries its V-representation (extreme rays plus a lineality
basis) and its H-representation (inequalities ``<a, x> >= 0`` and equations
``<a, x> = 0``).  Conversions use the double description method with the
combinatorial adjacency test, on plain Python integers.
"""

import random
from collections import Counter
from dataclasses import dataclass, field

from .linalg import (
    canonical_basis,
    dot,
    echelon,
    kernel_basis,
    primitive,
    reduce_modulo,
)

__all__ = [
    "Cone",
    "cone_from_rays",
    "cone_from_constraints",
    "zero_cone",
    "full_space",
    "intersect",
    "contains",
    "is_trivial",
    "interior_ray",
    "canonical_key",
    "counters",
]

#: Process-wide tallies of the primitive operations.  Engine code keeps its
#: own per-run statistics; these are a convenience for ad-hoc measurement.
counters = Counter()


@dataclass(frozen=True, eq=False)
class Cone:
    ambient_dim: int
    rays: tuple
    lineality: tuple
    inequalities: tuple
    equations: tuple
    _key: bytes = field(default=b"", repr=False)

    @property
    def dim(self):
        return self.ambient_dim - len(self.equations)

    @property
    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, Cone) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def generators(self):
        """Rays together with both signs of every lineality vector."""
        out = list(self.rays)
        for v in self.lineality:
            out.append(v)
            out.append(tuple(-x for x in v))
        return out

    def __repr__(self):
        return (
            f"Cone(dim={self.dim}, rays={list(self.rays)}, "
            f"lineality={list(self.lineality)})"
        )


def _units(d):
    return [tuple(int(i == j) for j in range(d)) for i in range(d)]


def _make(d, rays, lineality, inequalities, equations):
    key = repr((d, rays, lineality)).encode()
    return Cone(d, rays, lineality, inequalities, equations, key)


def zero_cone(d):
    return _make(d, (), (), (), tuple(_units(d)))


def full_space(d):
    return _make(d, (), tuple(_units(d)), (), ())


def _double_description(d, rays, lineality, base_ineqs, new_eqs, new_ineqs):
    """Add constraints to a cone given by generators.

    ``rays``/``lineality`` must generate exactly the cone cut out by
    ``base_ineqs`` (plus equations vanishing on all generators), with
    ``rays`` irredundant.  Returns the generators of the cone after adding
    ``new_eqs`` and ``new_ineqs``.
    """
    lin = [tuple(v) for v in lineality]
    R = [tuple(r) for r in rays]
    Z = []
    for r in R:
        m = 0
        for i, a in enumerate(base_ineqs):
            if dot(a, r) == 0:
                m |= 1 << i
        Z.append(m)
    nbits = len(base_ineqs)
    todo = [(a, True) for a in new_eqs] + [(a, False) for a in new_ineqs]

    for a, is_eq in todo:
        lvals = [dot(a, v) for v in lin]
        k = next((i for i, s in enumerate(lvals) if s), None)
        if k is not None:
            l0 = lin.pop(k)
            s = lvals.pop(k)
            if s < 0:
                l0 = tuple(-x for x in l0)
                s = -s
            lin = [
                primitive(tuple(s * x - t * y for x, y in zip(v, l0))) if t else v
                for v, t in zip(lin, lvals)
            ]
            newR = []
            for r in R:
                t = dot(a, r)
                newR.append(
                    primitive(tuple(s * x - t * y for x, y in zip(r, l0))) if t else r
                )
            if is_eq:
                R = newR
            else:
                bit = 1 << nbits
                nbits += 1
                full = bit - 1
                Z = [z | bit for z in Z]
                R = newR + [l0]
                Z.append(full)
            continue

        vals = [dot(a, r) for r in R]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        if is_eq:
            if not pos and not neg:
                continue
        elif not neg:
            bit = 1 << nbits
            nbits += 1
            Z = [z | bit if v == 0 else z for z, v in zip(Z, vals)]
            continue

        newR = []
        newZ = []
        bit = 0 if is_eq else 1 << nbits
        if not is_eq:
            nbits += 1
        for i, v in enumerate(vals):
            if v == 0 or (v > 0 and not is_eq):
                newR.append(R[i])
                newZ.append(Z[i] | bit if v == 0 else Z[i])
        nR = len(R)
        for p in pos:
            zp = Z[p]
            vp = vals[p]
            rp = R[p]
            for n in neg:
                c = zp & Z[n]
                adjacent = True
                for j in range(nR):
                    if j != p and j != n and Z[j] & c == c:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vn = vals[n]
                rn = R[n]
                newR.append(primitive(tuple(vp * y - vn * x for x, y in zip(rp, rn))))
                newZ.append(c | bit)
        R = newR
        Z = newZ
    return R, lin


def _facets(rays, lineality, candidates):
    """Select one candidate inequality per facet of the cone generated."""
    full = (1 << len(rays)) - 1
    sets = []
    seen = set()
    for a in candidates:
        m = 0
        for i, r in enumerate(rays):
            if dot(a, r) == 0:
                m |= 1 << i
        if m == full or m in seen:
            continue
        seen.add(m)
        sets.append((m, a))
    sets.sort(key=lambda t: -bin(t[0]).count("1"))
    kept = []
    for m, a in sets:
        if any(m & km == m for km, _ in kept):
            continue
        kept.append((m, a))
    return tuple(sorted(primitive(a) for _, a in kept))


def _finish(d, rays, lineality, candidates):
    lin = canonical_basis(lineality, d) if lineality else []
    pivots = [next(i for i, x in enumerate(v) if x) for v in lin]
    if lin:
        reduced = set()
        for r in rays:
            r = reduce_modulo(r, lin, pivots)
            if any(r):
                reduced.add(primitive(r))
        rays = sorted(reduced)
    else:
        rays = sorted(set(rays))
    gens = rays + lin
    eqs = tuple(canonical_basis(kernel_basis(gens, d), d)) if gens else tuple(_units(d))
    ineqs = _facets(rays, lin, candidates) if rays else ()
    return _make(d, tuple(rays), tuple(lin), ineqs, eqs)


def cone_from_constraints(d, inequalities=(), equations=()):
    """Cone ``{x : <a,x> >= 0 for a in inequalities, <b,x> = 0 for b in equations}``."""
    inequalities = [tuple(a) for a in inequalities]
    equations = [tuple(b) for b in equations]
    rays, lin = _double_description(d, [], _units(d), [], equations, inequalities)
    return _finish(d, rays, lin, inequalities)


def cone_from_rays(rays=(), lineality=(), ambient_dim=None):
    """Cone generated by ``rays`` (nonnegative) and ``lineality`` (any sign)."""
    rays = [tuple(r) for r in rays if any(r)]
    lineality = [tuple(v) for v in lineality if any(v)]
    if ambient_dim is None:
        if rays:
            ambient_dim = len(rays[0])
        elif lineality:
            ambient_dim = len(lineality[0])
        else:
            raise ValueError("ambient_dim is required for an empty generator list")
    d = ambient_dim
    if not rays and not lineality:
        return zero_cone(d)
    facets, dual_lin = _double_description(d, [], _units(d), [], lineality, rays)
    # implicit lineality: generators killed by every facet and equation
    true_lin = kernel_basis(list(facets) + list(dual_lin), d)
    lin = canonical_basis(true_lin, d) if true_lin else []
    pivots = [next(i for i, x in enumerate(v) if x) for v in lin]
    cands = set()
    for r in rays:
        r = reduce_modulo(r, lin, pivots) if lin else r
        if any(r):
            cands.add(primitive(r))
    cands = sorted(cands)
    tight = []
    for r in cands:
        m = 0
        for i, a in enumerate(facets):
            if dot(a, r) == 0:
                m |= 1 << i
        tight.append(m)
    extreme = [
        r
        for r, m in zip(cands, tight)
        if not any(o != m and o & m == m for o in tight)
    ]
    eqs = tuple(canonical_basis(dual_lin, d)) if dual_lin else ()
    ineqs = tuple(sorted(primitive(a) for a in facets))
    return _make(d, tuple(extreme), tuple(lin), ineqs, eqs)


def is_trivial(c):
    return not c.rays and not c.lineality


def contains(outer, inner):
    """Whether ``inner`` is a subset of ``outer`` (generator test)."""
    if outer.ambient_dim != inner.ambient_dim:
        raise ValueError("ambient dimensions differ")
    counters["containment_checks"] += 1
    for r in inner.rays:
        for b in outer.equations:
            if dot(b, r):
                return False
        for a in outer.inequalities:
            if dot(a, r) < 0:
                return False
    for v in inner.lineality:
        for b in outer.equations:
            if dot(b, v):
                return False
        for a in outer.inequalities:
            if dot(a, v):
                return False
    return True


def intersect(c1, c2):
    """Set intersection of two cones, both representations recomputed."""
    d = c1.ambient_dim
    if c2.ambient_dim != d:
        raise ValueError("ambient dimensions differ")
    counters["intersections"] += 1
    if is_trivial(c1) or is_trivial(c2):
        return zero_cone(d)
    # start from the cheaper V-representation, add the other's constraints
    if len(c2.rays) + len(c2.lineality) < len(c1.rays) + len(c1.lineality):
        c1, c2 = c2, c1
    rays, lin = _double_description(
        d, c1.rays, c1.lineality, c1.inequalities, c2.equations, c2.inequalities
    )
    if not rays and not lin:
        return zero_cone(d)
    return _finish(d, rays, lin, c1.inequalities + c2.inequalities)


def interior_ray(c, seed=0):
    """A primitive integer vector in the relative interior of ``c``.

    With ``seed == 0`` this is the plain sum of the extreme rays; other seeds
    draw positive integer weights from ``random.Random(seed)``.
    """
    if is_trivial(c):
        raise ValueError("the zero cone has no interior ray")
    d = c.ambient_dim
    if c.rays:
        gens = c.rays
    else:
        gens = c.lineality
    rng = random.Random(seed) if seed else None
    v = [0] * d
    for g in gens:
        w = rng.randint(1, 16) if rng else 1
        for i, x in enumerate(g):
            v[i] += w * x
    return primitive(v)


def canonical_key(c):
    return c._key
