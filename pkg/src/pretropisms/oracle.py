"""The definitional refinement tree, used as a cross-check and cost baseline.

Level ``k + 1`` of the tree intersects every nontrivial node of level ``k``
with the normal cone of every edge of the next polytope.  Nothing is pruned
and duplicate nodes are kept, so the intersection count is the full tree
size.  Identical nodes have identical subtrees, so by default each distinct
cone is expanded once and weighted by its multiplicity; pass
``memoize=False`` to expand every node literally.
"""

from collections import Counter, deque

from .cone import intersect, is_trivial
from .engine import PretropismResult, Stats, extract_rays, horizontal_prune, sort_polytopes

__all__ = [
    "RefinementTreeNode",
    "definitional_pretropisms",
    "refinement_tree",
    "brute_force_skeleton",
    "pretropism_graph",
    "check_pretropism_graph_connected",
]


class RefinementTreeNode:
    __slots__ = ("cone", "level", "parent")

    def __init__(self, cone, level, parent=None):
        self.cone = cone
        self.level = level
        self.parent = parent

    def __repr__(self):
        return f"RefinementTreeNode(level={self.level}, cone={self.cone!r})"


def _check(polytopes):
    if len(polytopes) < 2:
        raise ValueError("need at least two polytopes")
    d = polytopes[0].ambient_dim
    if any(P.ambient_dim != d for P in polytopes):
        raise ValueError("polytopes live in different ambient dimensions")


def refinement_tree(polytopes):
    """Literal tree of nontrivial nodes, level by level (small inputs only)."""
    _check(polytopes)
    levels = [[RefinementTreeNode(e.normal_cone, 1) for e in polytopes[0].edges]]
    for k, P in enumerate(polytopes[1:], start=2):
        nxt = []
        for node in levels[-1]:
            for e in P.edges:
                c = intersect(node.cone, e.normal_cone)
                if not is_trivial(c):
                    nxt.append(RefinementTreeNode(c, k, node))
        levels.append(nxt)
    return levels


def definitional_pretropisms(polytopes, sort=True, first_positive=False, memoize=True):
    """Pretropisms from the unpruned refinement tree.

    ``stats.intersections`` is the number of intersections the full tree
    performs; ``stats.per_level`` also records ``nodes`` (nontrivial tree
    nodes) and, when memoised, ``performed`` (distinct intersections actually
    computed).  Rays come from the maximal final cones, the same rule the
    pruned engine uses.
    """
    polytopes = list(polytopes)
    _check(polytopes)
    order = sort_polytopes(polytopes) if sort else list(range(len(polytopes)))
    ordered = [polytopes[i] for i in order]
    stats = Stats()
    nodes = {}
    result = PretropismResult([], [], stats, [], order)
    if not ordered[0].edges:
        return result

    # key -> [cone, multiplicity]
    level = {}
    for e in ordered[0].edges:
        level.setdefault(e.normal_cone.key, [e.normal_cone, 0])[1] += 1
    nodes[1] = sum(m for _, m in level.values())
    result.level_sizes.append(nodes[1])
    performed = {}

    for k, P in enumerate(ordered[1:], start=2):
        tally = Counter()
        nxt = {}
        done = 0
        for key in sorted(level):
            cone, mult = level[key]
            reps = 1 if memoize else mult
            weight = mult if memoize else 1
            for _ in range(reps):
                for e in P.edges:
                    done += 1
                    tally["intersections"] += weight
                    c = intersect(cone, e.normal_cone)
                    if is_trivial(c):
                        tally["cones_discarded_trivial"] += weight
                        continue
                    nxt.setdefault(c.key, [c, 0])[1] += weight
        stats.add(k, tally)
        performed[k] = done
        level = nxt
        nodes[k] = sum(m for _, m in level.values())
        result.level_sizes.append(nodes[k])
        if not level:
            break

    for k in stats.per_level:
        stats.per_level[k]["nodes"] = nodes.get(k, 0)
        stats.per_level[k]["performed"] = performed.get(k, 0)
    final = [c for c, _ in level.values()] if len(nodes) == len(ordered) else []
    result.cones = horizontal_prune(final)
    result.rays = extract_rays(result.cones, first_positive)
    return result


def brute_force_skeleton(P, C):
    """``C ∩ N(e)`` over every edge of ``P``, nontrivial ones, deduplicated."""
    if is_trivial(C):
        raise ValueError("cannot test the zero cone")
    found = {}
    for e in P.edges:
        c = intersect(C, e.normal_cone)
        if not is_trivial(c):
            found.setdefault(c.key, c)
    return list(found.values())


def pretropism_graph(P, C):
    """Indices of the edges whose normal cones meet ``C`` nontrivially."""
    if is_trivial(C):
        raise ValueError("cannot test the zero cone")
    return [k for k, e in enumerate(P.edges) if not is_trivial(intersect(C, e.normal_cone))]


def check_pretropism_graph_connected(P, C):
    """Whether the pretropism graph of ``C`` on ``P`` is connected."""
    edges = set(pretropism_graph(P, C))
    if not edges:
        return True
    start = min(edges)
    seen = {start}
    queue = deque([start])
    while queue:
        k = queue.popleft()
        for nb in P.edges[k].neighbor_edges:
            if nb in edges and nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return seen == edges
