"""Pruned pretropism computation over edge skeletons.

:func:`explore_edge_skeleton` walks the edges of one polytope whose normal
cones meet a given cone, starting from the face picked out by an interior
ray and only stepping across edges that produced something.
:func:`find_pretropisms` runs it level by level, merging duplicates and
dropping cones contained in larger ones before moving to the next polytope.
"""

import warnings
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .cone import contains, interior_ray, intersect, is_trivial
from .polytope import edges_touching, initial_face

__all__ = [
    "Stats",
    "PretropismResult",
    "explore_edge_skeleton",
    "find_pretropisms",
    "horizontal_prune",
    "sort_polytopes",
    "cost_bound",
    "degree_sum",
    "extract_rays",
    "pretropism_graph_sizes",
]

STAT_FIELDS = (
    "intersections",
    "containment_checks",
    "containment_hits",
    "edges_visited",
    "cones_pruned_horizontal",
    "cones_discarded_trivial",
)


@dataclass
class Stats:
    """Operation counts, in total and per refinement level."""

    intersections: int = 0
    containment_checks: int = 0
    containment_hits: int = 0
    edges_visited: int = 0
    cones_pruned_horizontal: int = 0
    cones_discarded_trivial: int = 0
    per_level: dict = field(default_factory=dict)

    def add(self, level, counts):
        row = self.per_level.setdefault(level, dict.fromkeys(STAT_FIELDS, 0))
        for name, n in counts.items():
            if name not in row:
                raise KeyError(name)
            row[name] += n
            setattr(self, name, getattr(self, name) + n)

    def totals(self):
        return {name: getattr(self, name) for name in STAT_FIELDS}

    def as_dict(self):
        out = self.totals()
        out["per_level"] = {str(k): dict(v) for k, v in sorted(self.per_level.items())}
        return out


@dataclass
class PretropismResult:
    cones: list
    rays: list
    stats: Stats
    level_sizes: list = field(default_factory=list)
    order: list = field(default_factory=list)
    graph_sizes: list = None


def _explore(P, C, seed, graph=None):
    """Algorithm body; returns (cones, tally).  ``graph`` collects hit edges."""
    if is_trivial(C):
        raise ValueError("cannot explore with the zero cone")
    if C.ambient_dim != P.ambient_dim:
        raise ValueError("cone and polytope live in different dimensions")
    tally = Counter()
    r = interior_ray(C, seed)
    start = edges_touching(P, initial_face(P, r))
    queue = deque(start)
    queued = set(start)
    found = {}
    while queue:
        k = queue.popleft()
        edge = P.edges[k]
        tally["edges_visited"] += 1
        tally["containment_checks"] += 1
        if contains(edge.normal_cone, C):
            tally["containment_hits"] += 1
            piece = C
        else:
            tally["intersections"] += 1
            piece = intersect(C, edge.normal_cone)
            if is_trivial(piece):
                tally["cones_discarded_trivial"] += 1
                continue
        found.setdefault(piece.key, piece)
        if graph is not None:
            graph.add(k)
        for nb in edge.neighbor_edges:
            if nb not in queued:
                queued.add(nb)
                queue.append(nb)
    if graph is not None:
        graph.tested = queued
    return list(found.values()), tally


class _EdgeSet(set):
    tested = ()


def explore_edge_skeleton(P, C, seed=0, stats=None, level=None):
    """Every nontrivial ``C ∩ N(e)`` over the edges ``e`` of ``P``.

    Edges are visited breadth first from those touching the face of ``P``
    minimised by an interior ray of ``C``.  When an edge's normal cone
    already contains ``C`` the cone is kept as is and no intersection is
    formed.  Counts go into ``stats`` under ``level`` when given.
    """
    cones, tally = _explore(P, C, seed)
    if stats is not None:
        stats.add(level, tally)
    return cones


def horizontal_prune(cones, tally=None):
    """Keep the maximal cones under inclusion, deduplicated by key."""
    uniq = {}
    for c in cones:
        uniq.setdefault(c.key, c)
    items = [uniq[k] for k in sorted(uniq)]
    if tally is None:
        tally = Counter()
    # sort by decreasing dimension: a cone only fits inside one of at least its dim
    order = sorted(range(len(items)), key=lambda i: -items[i].dim)
    kept = []
    for i in range(len(items)):
        c = items[i]
        inside = False
        for j in order:
            o = items[j]
            if o.dim < c.dim:
                break
            if j == i:
                continue
            tally["containment_checks"] += 1
            if contains(o, c):
                inside = True
                break
        if inside:
            tally["cones_pruned_horizontal"] += 1
        else:
            kept.append(c)
    return kept


def sort_polytopes(polytopes):
    """Processing order: ascending lineality dimension, stable."""
    return sorted(range(len(polytopes)), key=lambda i: len(polytopes[i].lineality_basis))


def extract_rays(cones, first_positive=False):
    """Primitive generating rays of ``cones`` (both signs of lineality), sorted."""
    rays = set()
    for c in cones:
        rays.update(c.generators())
    if first_positive:
        rays = {r for r in rays if r[0] > 0}
    return sorted(rays)


def degree_sum(rays):
    """Sum over rays of ``max(v) - min(min(v), 0)``."""
    total = 0
    for v in rays:
        if not any(v):
            raise ValueError("rays must be nonzero")
        total += max(v) - min(min(v), 0)
    return total


def cost_bound(graph_sizes):
    """Sum over first-polytope edges of the product of the recorded sizes."""
    total = 0
    for row in graph_sizes:
        prod = 1
        for n in row:
            prod *= n
        total += prod
    return total


def pretropism_graph_sizes(polytopes, seed=0, tested=True):
    """Per edge of ``polytopes[0]``, the explored edge counts on the others.

    With ``tested`` (the default) each entry counts every edge that the
    skeleton walk for that edge's normal cone examines: the pretropism graph
    together with the frontier edges it had to reject.  Otherwise only the
    pretropism graph itself is counted.
    """
    first = polytopes[0]
    out = []
    for edge in first.edges:
        row = []
        for P in polytopes[1:]:
            g = _EdgeSet()
            _explore(P, edge.normal_cone, seed, graph=g)
            row.append(len(g.tested) if tested else len(g))
        out.append(row)
    return out


_worker_polytopes = None


def _worker_init(polytopes):
    global _worker_polytopes
    _worker_polytopes = polytopes


def _worker_explore(args):
    index, cone, seed = args
    return _explore(_worker_polytopes[index], cone, seed)


def find_pretropisms(
    polytopes,
    seed=0,
    sort=True,
    first_positive=False,
    jobs=1,
    restrict_first_positive=False,
    record_graphs=False,
):
    """Pretropisms of a tuple of polytopes by pruned skeleton exploration.

    ``sort`` processes polytopes by ascending lineality dimension (the output
    is unaffected).  ``first_positive`` keeps only rays with a positive first
    coordinate.  ``restrict_first_positive`` additionally cuts the first
    level down to ``x_0 >= 0`` before exploring; this is faster but reports
    generators of the restricted cones.  ``jobs > 1`` explores the cones of a
    level in worker processes; results do not depend on ``jobs``.
    """
    polytopes = list(polytopes)
    if len(polytopes) < 2:
        raise ValueError("need at least two polytopes")
    d = polytopes[0].ambient_dim
    if any(P.ambient_dim != d for P in polytopes):
        raise ValueError("polytopes live in different ambient dimensions")

    order = sort_polytopes(polytopes) if sort else list(range(len(polytopes)))
    ordered = [polytopes[i] for i in order]
    stats = Stats()
    result = PretropismResult([], [], stats, [], order)

    if record_graphs:
        result.graph_sizes = pretropism_graph_sizes(ordered, seed)

    first = ordered[0]
    if not first.edges:
        warnings.warn("the first polytope has no edges; no pretropisms")
        return result
    level = {}
    for e in first.edges:
        level.setdefault(e.normal_cone.key, e.normal_cone)
    cones = [level[k] for k in sorted(level)]
    if restrict_first_positive:
        from .cone import cone_from_constraints

        half = cone_from_constraints(d, [(1,) + (0,) * (d - 1)])
        tally = Counter()
        cut = []
        for c in cones:
            tally["intersections"] += 1
            c = intersect(c, half)
            if is_trivial(c):
                tally["cones_discarded_trivial"] += 1
            else:
                cut.append(c)
        stats.add(1, tally)
        cones = horizontal_prune(cut)
    result.level_sizes.append(len(cones))

    pool = ProcessPoolExecutor(jobs, initializer=_worker_init, initargs=(ordered,)) if jobs > 1 else None
    try:
        for i in range(1, len(ordered)):
            lvl = i + 1
            if pool is None:
                outs = [_explore(ordered[i], c, seed) for c in cones]
            else:
                chunk = max(1, len(cones) // (4 * jobs))
                outs = list(pool.map(_worker_explore, [(i, c, seed) for c in cones], chunksize=chunk))
            gathered = []
            for found, tally in outs:
                stats.add(lvl, tally)
                gathered.extend(found)
            tally = Counter()
            cones = horizontal_prune(gathered, tally)
            stats.add(lvl, tally)
            result.level_sizes.append(len(cones))
            if not cones:
                break
    finally:
        if pool is not None:
            pool.shutdown()

    result.cones = cones
    result.rays = extract_rays(cones, first_positive)
    return result
