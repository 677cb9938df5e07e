"""Virtual diagrams, projections of surface diagrams, and lassos.

A virtual diagram is a planar 4-valent map some of whose vertices are
marked virtual.  Its Gauss code reads only the classical vertices, passing
straight through virtual ones.

Projection of a surface diagram: a spanning tree of the diagram graph has a
disk neighbourhood ``U`` on the surface.  ``U`` is placed in the plane as is;
every non-tree edge becomes a chord outside ``U`` between its two ports on
``dU``, and chords that interleave cross in virtual vertices.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .diagram import CombMap, crossing_sign, faces
from .errors import InvariantViolation, StructuralError
from .gauss import GaussCode, Token


@dataclass(frozen=True)
class VirtualDiagram:
    map: CombMap
    virtual: frozenset

    def __post_init__(self):
        object.__setattr__(self, "virtual", frozenset(self.virtual))
        if not self.virtual <= set(self.map.crossings):
            raise StructuralError("virtual marks name unknown vertices")
        if self.map.genus() != 0:
            raise StructuralError("virtual diagram must be planar")

    @property
    def classical(self) -> tuple:
        return tuple(c for c in self.map.crossings if c not in self.virtual)

    def to_dict(self) -> dict:
        d = self.map.to_dict()
        d["virtual"] = sorted(self.virtual)
        return d

    @classmethod
    def from_dict(cls, data) -> "VirtualDiagram":
        return cls(CombMap.from_dict(data), frozenset(data.get("virtual", ())))


@dataclass(frozen=True)
class Lasso:
    """Contractible subcomplex: classical vertices, edges between them, closed faces."""

    vertices: frozenset
    edges: frozenset  # edge keys (dart, dart) with the smaller dart first
    faces: tuple  # face indices of the projection map


def gauss_of(v: VirtualDiagram) -> GaussCode:
    m = v.map.oriented_copy()
    comps = []
    for comp in m.components():
        toks = tuple(
            Token(k % 2 == 0, c, crossing_sign(m, c)) for c, k in comp if c not in v.virtual
        )
        comps.append(toks)
    comps.extend(() for _ in range(m.loops))
    return GaussCode(tuple(comps))


# -- projection ---------------------------------------------------------------


def _spanning_tree(m: CombMap, piece, root) -> set:
    """Tree edges (as dart pairs) of a BFS spanning tree, scanning darts in order."""
    tree = set()
    seen = {root}
    queue = deque([root])
    while queue:
        c = queue.popleft()
        for k in range(4):
            d = (c, k)
            e = m.partner(d)
            if e[0] not in seen:
                seen.add(e[0])
                tree.add(d)
                tree.add(e)
                queue.append(e[0])
    return tree


def _contour(m: CombMap, tree: set, start) -> list:
    """Non-tree darts met walking once around the tree, counter-clockwise around ``U``."""
    ports = []
    d = (start, 0)
    first = None
    while True:
        if d in tree:
            c, j = m.partner(d)
            d = (c, (j + 1) % 4)
        else:
            if d == first:
                return ports
            if first is None:
                first = d
            ports.append(d)
            d = (d[0], (d[1] + 1) % 4)
        if first is None and d == (start, 0):
            return ports  # a tree with no ports


def _circle_point(t: Fraction) -> tuple:
    den = 1 + t * t
    return ((1 - t * t) / den, (2 * t) / den)


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def _segment_hit(p1, p2, q1, q2):
    """Parameters (s, u) of the crossing of p1p2 with q1q2, or None."""
    r = _sub(p2, p1)
    s = _sub(q2, q1)
    den = _cross(r, s)
    if den == 0:
        return None
    w = _sub(q1, p1)
    a = _cross(w, s) / den
    b = _cross(w, r) / den
    if 0 < a < 1 and 0 < b < 1:
        return a, b
    return None


def _interleave(i, j, k, l, n):
    def inside(x, lo, hi):
        return 0 < (x - lo) % n < (hi - lo) % n

    return inside(k, i, j) != inside(l, i, j)


def surface_to_virtual(m: CombMap, root: Optional[int] = None, seed: int = 0) -> VirtualDiagram:
    """Project a surface diagram to a virtual diagram through a spanning-tree lasso.

    ``root`` picks the BFS root of the spanning tree in the first piece;
    ``seed`` jitters the port positions (only to avoid concurrent chords).
    """
    m = m.oriented_copy()
    inc = set(m.incoming)
    match = {}
    incoming = set(inc)
    next_id = max(m.crossings, default=0) + 1
    virtual = set()
    rng = random.Random(seed)
    for pi, piece in enumerate(m.pieces()):
        r = root if (pi == 0 and root is not None and root in piece) else piece[0]
        tree = _spanning_tree(m, piece, r)
        for d in tree:
            match[d] = m.partner(d)
        ports = _contour(m, tree, r)
        n = len(ports)
        if n == 0:
            continue
        index = {d: i for i, d in enumerate(ports)}
        chords = []
        for d in ports:
            e = m.partner(d)
            if d in inc:
                continue  # record each chord once, from its outgoing end
            chords.append((index[d], index[e]))
        for _ in range(100):
            ts = [Fraction(i) + Fraction(rng.randint(1, 999), 2000) - Fraction(n, 2) for i in range(n)]
            pts = [_circle_point(t) for t in ts]
            hits = {k: [] for k in range(len(chords))}
            x = next_id
            ok = True
            for a in range(len(chords)):
                for b in range(a + 1, len(chords)):
                    i, j = chords[a]
                    k, l = chords[b]
                    if not _interleave(i, j, k, l, n):
                        continue
                    h = _segment_hit(pts[i], pts[j], pts[k], pts[l])
                    if h is None:
                        ok = False
                        break
                    hits[a].append((h[0], x, b))
                    hits[b].append((h[1], x, a))
                    x += 1
                if not ok:
                    break
            # three chords through one point would give equal parameters
            if ok and all(len({h[0] for h in hs}) == len(hs) for hs in hits.values()):
                next_id = x
                break
        else:
            raise InvariantViolation("could not place chords in general position")
        # virtual vertex slots: 0 towards the chord's head, 2 towards its tail
        slot = {}
        for a, (i, j) in enumerate(chords):
            for s, x, b in hits[a]:
                k, l = chords[b]
                da = _sub(pts[j], pts[i])
                db = _sub(pts[l], pts[k])
                if x not in slot:
                    # the outer region is an inverted copy of the disk model
                    if _cross(da, db) > 0:
                        slot[x] = {(a, 1): 0, (b, -1): 1, (a, -1): 2, (b, 1): 3}
                    else:
                        slot[x] = {(a, 1): 0, (b, 1): 1, (a, -1): 2, (b, -1): 3}
                    virtual.add(x)
        for a, (i, j) in enumerate(chords):
            prev = ports[i]
            for s, x, b in sorted(hits[a]):
                here = (x, slot[x][(a, -1)])
                match[prev] = here
                incoming.add(here)
                prev = (x, slot[x][(a, 1)])
            match[prev] = ports[j]
    out = CombMap(match, loops=m.loops, incoming=incoming)
    v = VirtualDiagram(out, frozenset(virtual))
    return v


# -- lassos ---------------------------------------------------------------------


def _edge_key(m: CombMap, d):
    e = m.partner(d)
    return (d, e) if d < e else (e, d)


def find_lasso(v: VirtualDiagram) -> Optional[Lasso]:
    """Largest greedy disk region through the classical vertices, or None.

    Start from a spanning tree of the classical-classical edges and glue in
    all-classical faces that meet the region along all but one edge.
    """
    m = v.map
    classical = set(v.classical)
    if not classical:
        return Lasso(frozenset(), frozenset(), ())
    adj = {c: [] for c in classical}
    for d, e in m.edges():
        if d[0] in classical and e[0] in classical and d[0] != e[0]:
            adj[d[0]].append((d, e))
            adj[e[0]].append((e, d))
    root = min(classical)
    seen = {root}
    edges = set()
    queue = deque([root])
    while queue:
        c = queue.popleft()
        for d, e in adj[c]:
            if e[0] not in seen:
                seen.add(e[0])
                edges.add(_edge_key(m, d))
                queue.append(e[0])
    if seen != classical:
        return None
    fs = faces(m)
    chosen = []
    changed = True
    while changed:
        changed = False
        for fi, f in enumerate(fs.faces):
            if fi in chosen or not f or any(d[0] in v.virtual for d in f):
                continue
            keys = [_edge_key(m, d) for d in f]
            if len(set(keys)) != len(keys):
                continue
            new = [k for k in keys if k not in edges]
            if len(new) == 1 and len(chosen) + 1 < len(fs.faces):
                edges.add(new[0])
                chosen.append(fi)
                changed = True
    lasso = Lasso(frozenset(classical), frozenset(edges), tuple(sorted(chosen)))
    return lasso


def is_lasso(v: VirtualDiagram, lasso: Lasso) -> bool:
    """Region check: all classical, no virtual vertices, connected, Euler characteristic 1."""
    m = v.map
    if set(lasso.vertices) != set(v.classical):
        return False
    for d, e in lasso.edges:
        if d[0] not in lasso.vertices or e[0] not in lasso.vertices:
            return False
    fs = faces(m)
    for fi in lasso.faces:
        if any(_edge_key(m, d) not in lasso.edges for d in fs.faces[fi]):
            return False
    verts = set(lasso.vertices)
    if not verts:
        return True
    parent = {c: c for c in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for d, e in lasso.edges:
        parent[find(d[0])] = find(e[0])
    if len({find(c) for c in verts}) != 1:
        return False
    return len(verts) - len(lasso.edges) + len(lasso.faces) == 1


def lasso_exists_bruteforce(v: VirtualDiagram) -> bool:
    """Exhaustive search over edge subsets (small diagrams only)."""
    m = v.map
    classical = set(v.classical)
    cands = [k for k in m.edges() if k[0][0] in classical and k[1][0] in classical and k[0][0] != k[1][0]]
    if not classical:
        return True
    need = len(classical) - 1
    from itertools import combinations

    for sub in combinations(cands, need):
        if is_lasso(v, Lasso(frozenset(classical), frozenset(sub), ())):
            return True
    return False
