import random
from itertools import combinations

import pytest

from pretropisms.cone import cone_from_rays
from pretropisms.linalg import dot, kernel_basis, primitive, rank
from pretropisms.polytope import build_polytope


def random_points(rng, d, npts, lo=0, hi=30):
    return [tuple(rng.randint(lo, hi) for _ in range(d)) for _ in range(npts)]


def random_polytope(rng, d, max_points=12, min_points=None):
    lo = min_points or d + 1
    while True:
        P = build_polytope(random_points(rng, d, rng.randint(lo, max_points)))
        if P.edges:
            return P


def random_edge_cone(rng, d, max_points=12):
    P = random_polytope(rng, d, max_points)
    return rng.choice(P.edges).normal_cone


def random_ray_cone(rng, d, max_rays=6, span=3):
    while True:
        rays = [tuple(rng.randint(-span, span) for _ in range(d)) for _ in range(rng.randint(1, max_rays))]
        rays = [r for r in rays if any(r)]
        if rays:
            return cone_from_rays(rays, ambient_dim=d)


def brute_extreme_rays(d, inequalities, equations=()):
    """Extreme rays of a pointed cone by enumerating subsets of constraints."""
    ineqs = [tuple(a) for a in inequalities]
    eqs = [tuple(b) for b in equations]
    if rank(ineqs + eqs) < d:
        raise ValueError("oracle only handles pointed cones")
    found = set()
    for k in range(d):
        for S in combinations(range(len(ineqs)), k):
            rows = eqs + [ineqs[i] for i in S]
            if rank(rows) != d - 1:
                continue
            (v,) = kernel_basis(rows, d)
            for s in (1, -1):
                w = tuple(s * x for x in v)
                if all(dot(a, w) >= 0 for a in ineqs):
                    found.add(primitive(w))
    return sorted(found)


def brute_facets(points):
    """Facets ``(inner normal, offset)`` of a full-dimensional point set."""
    pts = sorted(set(points))
    d = len(pts[0])
    out = set()
    for S in combinations(pts, d):
        diffs = [tuple(a - b for a, b in zip(p, S[0])) for p in S[1:]]
        if rank(diffs) != d - 1:
            continue
        (n,) = kernel_basis(diffs, d)
        for g in (n, tuple(-x for x in n)):
            b = dot(g, S[0])
            if all(dot(g, p) >= b for p in pts):
                out.add((g, b))
    return sorted(out)


@pytest.fixture
def rng():
    return random.Random(20161)


@pytest.fixture
def square():
    return build_polytope([(0, 0), (1, 0), (0, 1), (1, 1)])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
