"""Lattice polytopes with their edge skeleton and per-edge normal cones.

The hull is read off the dual of the homogenised point cone: the extreme
rays of ``{(c, a) : c + <a, p> >= 0 for all points p}`` are the facets
``<a, x> >= -c`` and its lineality gives the affine hull equations.  All
normals follow the inner (minimisation) convention.
"""

from dataclasses import dataclass

from .cone import _double_description, _units, cone_from_rays
from .linalg import canonical_basis, dot, kernel_basis, primitive, reduce_modulo

__all__ = [
    "Polytope",
    "EdgeRecord",
    "SupportFace",
    "build_polytope",
    "initial_face",
    "edges_touching",
]


@dataclass(frozen=True)
class EdgeRecord:
    endpoints: tuple
    neighbor_edges: tuple
    normal_cone: object


@dataclass(frozen=True)
class SupportFace:
    vertex_indices: tuple
    defining_ray: tuple


@dataclass(frozen=True)
class Polytope:
    ambient_dim: int
    points: tuple
    vertices: tuple
    facets: tuple
    edges: tuple
    affine_span_basis: tuple
    lineality_basis: tuple
    vertex_neighbors: tuple

    @property
    def intrinsic_dim(self):
        return len(self.affine_span_basis)

    @property
    def num_edges(self):
        return len(self.edges)

    def __repr__(self):
        return (
            f"Polytope(ambient_dim={self.ambient_dim}, dim={self.intrinsic_dim}, "
            f"vertices={len(self.vertices)}, edges={len(self.edges)}, "
            f"facets={len(self.facets)})"
        )


def _popcount(m):
    return bin(m).count("1")


def build_polytope(points):
    """Convex hull of integer points with edge skeleton and normal cones."""
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if not pts:
        raise ValueError("cannot build a polytope from an empty point set")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise ValueError("points have inconsistent dimensions")

    base = pts[0]
    diffs = [tuple(x - y for x, y in zip(p, base)) for p in pts[1:]]
    span = tuple(canonical_basis(diffs, d)) if any(any(v) for v in diffs) else ()
    lineality = tuple(canonical_basis(kernel_basis(span, d), d)) if span else tuple(_units(d))

    if not span:
        vertex = (pts[0],)
        return Polytope(d, tuple(pts), vertex, (), (), (), lineality, ((),))

    homog = [(1,) + p for p in pts]
    dual_rays, dual_lin = _double_description(d + 1, [], _units(d + 1), [], [], homog)
    dual_lin = canonical_basis(dual_lin, d + 1) if dual_lin else []
    pivots = [next(i for i, x in enumerate(v) if x) for v in dual_lin]
    facets = []
    for y in dual_rays:
        if dual_lin:
            y = primitive(reduce_modulo(y, dual_lin, pivots))
        facets.append((y[1:], -y[0]))
    facets.sort()

    def tight(p):
        m = 0
        for i, (a, b) in enumerate(facets):
            if dot(a, p) == b:
                m |= 1 << i
        return m

    masks = [tight(p) for p in pts]
    vert_idx = [
        i
        for i, m in enumerate(masks)
        if not any(o != m and o & m == m for o in masks)
    ]
    vertices = tuple(pts[i] for i in vert_idx)
    vmask = [masks[i] for i in vert_idx]
    nv = len(vertices)

    pairs = []
    for u in range(nv):
        for v in range(u + 1, nv):
            c = vmask[u] & vmask[v]
            if any(w != u and w != v and vmask[w] & c == c for w in range(nv)):
                continue
            pairs.append((u, v, c))

    incident = [[] for _ in range(nv)]
    for k, (u, v, _) in enumerate(pairs):
        incident[u].append(k)
        incident[v].append(k)

    edges = []
    for k, (u, v, c) in enumerate(pairs):
        normals = [facets[i][0] for i in range(len(facets)) if c >> i & 1]
        cone = cone_from_rays(normals, lineality, ambient_dim=d)
        nbrs = sorted(set(incident[u] + incident[v]) - {k})
        edges.append(EdgeRecord((u, v), tuple(nbrs), cone))

    neighbors = [[] for _ in range(nv)]
    for u, v, _ in pairs:
        neighbors[u].append(v)
        neighbors[v].append(u)

    return Polytope(
        d,
        tuple(pts),
        vertices,
        tuple(facets),
        tuple(edges),
        span,
        lineality,
        tuple(tuple(n) for n in neighbors),
    )


def initial_face(P, r):
    """Vertices of ``P`` minimising ``<r, v>``."""
    r = tuple(r)
    if len(r) != P.ambient_dim:
        raise ValueError("ray dimension does not match the polytope")
    if not any(r):
        raise ValueError("the zero vector does not define a face")
    vals = [dot(r, v) for v in P.vertices]
    low = min(vals)
    return SupportFace(tuple(i for i, x in enumerate(vals) if x == low), r)


def edges_touching(P, face):
    """Indices of the edges with at least one endpoint in ``face``."""
    verts = set(face.vertex_indices)
    return [k for k, e in enumerate(P.edges) if verts.intersection(e.endpoints)]
