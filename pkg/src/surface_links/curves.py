"""Multicurves on a surface and generalized linking numbers.

The surface is the one carried by a cellular ``CombMap``.  A curve is a
closed walk in the dual graph: each step ``(d, t)`` crosses the edge
``{d, match(d)}`` at parameter ``t`` (measured from the ``d`` end), leaving
the face that holds corner ``d``.  Inside a face consecutive steps are
joined by a straight chord.  Each chord carries a height in ``(-1, 1)``;
where chords of two curves cross, the higher one passes over.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .diagram import CombMap, faces
from .errors import StructuralError


@dataclass(frozen=True)
class CurveDiagram:
    base: CombMap
    components: tuple  # tuple of tuples of (dart, Fraction position)
    heights: tuple  # per component, one height per chord (chord i follows step i)

    def __post_init__(self):
        comps = tuple(tuple((tuple(d), Fraction(t)) for d, t in comp) for comp in self.components)
        hs = tuple(tuple(Fraction(h) for h in hc) for hc in self.heights)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "heights", hs)
        if len(hs) != len(comps):
            raise StructuralError("one height list per component")
        fs = faces(self.base)
        fo = fs.face_of()
        seen = set()
        for comp, hc in zip(comps, hs):
            if not comp:
                raise StructuralError("empty curve component")
            if len(hc) != len(comp):
                raise StructuralError("one height per chord")
            for i, (d, t) in enumerate(comp):
                if d not in fo:
                    raise StructuralError(f"unknown dart {d}")
                if not 0 < t < 1:
                    raise StructuralError("edge parameter must lie in (0, 1)")
                pt = _edge_point(self.base, d, t)
                if pt in seen:
                    raise StructuralError("curve passes twice through one edge point")
                seen.add(pt)
                nd, _ = comp[(i + 1) % len(comp)]
                if fo[self.base.partner(d)] != fo[nd]:
                    raise StructuralError("consecutive steps do not share a face")

    def chords(self):
        """Yield ``(face, entry key, exit key, component, index)`` per chord.

        Keys are positions on the face boundary, in traversal order.
        """
        fs = faces(self.base)
        fo = fs.face_of()
        pos = {d: i for f in fs.faces for i, d in enumerate(f)}
        for k, comp in enumerate(self.components):
            n = len(comp)
            for i in range(n):
                d, t = comp[i]
                d2, t2 = comp[(i + 1) % n]
                back = self.base.partner(d)
                f = fo[back]
                # the edge side in f runs from `back` to d, so the parameter flips
                yield f, (pos[back], 1 - t), (pos[d2], t2), k, i

    def projection_steps(self):
        return [s for comp in self.components for s in comp]


def _edge_point(m: CombMap, d, t):
    e = m.partner(d)
    return (d, t) if d <= e else (e, 1 - t)


def _on_arc(x, lo, hi) -> bool:
    # strictly inside the boundary arc from lo to hi in traversal order (cyclic)
    if lo < hi:
        return lo < x < hi
    return x > lo or x < hi


def intersections(alpha: CurveDiagram, beta: CurveDiagram) -> list:
    """Crossings of the projections: ``(sign, alpha over?)`` per point.

    ``sign`` is the local intersection number of alpha with beta, +1 when
    beta crosses alpha from its right to its left.
    """
    if alpha.base is not beta.base and alpha.base.to_dict() != beta.base.to_dict():
        raise StructuralError("curves live on different surfaces")
    a_pts = {_edge_point(alpha.base, d, t) for d, t in alpha.projection_steps()}
    if any(_edge_point(beta.base, d, t) in a_pts for d, t in beta.projection_steps()):
        raise StructuralError("curves share a point on an edge")
    by_face: dict = {}
    for ch in alpha.chords():
        by_face.setdefault(ch[0], ([], []))[0].append(ch)
    for ch in beta.chords():
        by_face.setdefault(ch[0], ([], []))[1].append(ch)
    out = []
    for f, (achs, bchs) in sorted(by_face.items()):
        for _, p1, p2, ka, ia in achs:
            for _, q1, q2, kb, ib in bchs:
                in1 = _on_arc(q1, p1, p2)
                in2 = _on_arc(q2, p1, p2)
                if in1 == in2:
                    continue
                sign = 1 if in2 else -1
                ha = alpha.heights[ka][ia]
                hb = beta.heights[kb][ib]
                if ha == hb:
                    raise StructuralError("no over/under data at a crossing")
                out.append((sign, ha > hb))
    return out


def lk(alpha: CurveDiagram, beta: CurveDiagram) -> int:
    """Signed count of crossings where alpha passes over beta.

    A crossing with alpha over is positive when (alpha, beta) directions
    form a positive frame of the surface.
    """
    return sum(s for s, a_over in intersections(alpha, beta) if a_over)


def local_intersection(alpha: CurveDiagram, beta: CurveDiagram) -> int:
    return sum(s for s, _ in intersections(alpha, beta))


def homological_intersection(alpha: CurveDiagram, beta: CurveDiagram) -> int:
    """``p(alpha) . p(beta)`` via homology, without looking at chords.

    ``beta`` is slid onto the 1-skeleton: each of its edge points moves to
    the vertex at the ``d`` end, and each chord follows the face boundary
    between the two vertices.  The resulting primal cycle is paired with
    the signed edge crossings of ``alpha``.
    """
    m = beta.base
    fs = faces(m)
    fo = fs.face_of()
    pos = {d: i for f in fs.faces for i, d in enumerate(f)}
    chain: dict = {}

    def add_side(d, v):
        e = m.partner(d)
        if d <= e:
            chain[(d, e)] = chain.get((d, e), 0) + v
        else:
            chain[(e, d)] = chain.get((e, d), 0) - v

    for comp in beta.components:
        n = len(comp)
        for i in range(n):
            d, _ = comp[i]
            d2, _ = comp[(i + 1) % n]
            back = m.partner(d)
            f = fs.faces[fo[back]]
            # start at the corner after the side back -> d, walk to corner d2
            j = (pos[back] + 1) % len(f)
            while f[j] != d2:
                add_side(f[j], 1)
                j = (j + 1) % len(f)
    total = 0
    for d, _ in alpha.projection_steps():
        e = m.partner(d)
        # leaving the face on the right of d -> e crosses that side right to left
        key, s = ((d, e), -1) if d <= e else ((e, d), 1)
        total += s * chain.get(key, 0)
    return total


# -- random generation -------------------------------------------------------


def random_surface(rng: random.Random, genus: int, max_crossings: int = 6) -> CombMap:
    """A connected 4-valent cellular map of the given genus."""
    while True:
        n = rng.randint(max(1, 2 * genus), max_crossings)
        darts = [(c, k) for c in range(n) for k in range(4)]
        rng.shuffle(darts)
        match = {}
        for i in range(0, len(darts), 2):
            match[darts[i]] = darts[i + 1]
        m = CombMap(match)
        if m.is_connected() and m.genus() == genus:
            return m


def random_walk(rng: random.Random, m: CombMap, length: int) -> list:
    """Closed dual walk of roughly ``length`` steps (darts only)."""
    fs = faces(m)
    fo = fs.face_of()
    start = rng.choice(fs.faces[rng.randrange(len(fs.faces))] or [min(m.darts())])
    steps = [start]
    while True:
        f = fo[m.partner(steps[-1])]
        if len(steps) >= length:
            # head back towards the start face by a shortest dual path
            path = _dual_path(m, f, fo[start])
            steps.extend(path)
            return steps
        steps.append(rng.choice(fs.faces[f]))


def _dual_path(m: CombMap, src: int, dst: int) -> list:
    fs = faces(m)
    fo = fs.face_of()
    prev = {src: None}
    queue = [src]
    for f in queue:
        if f == dst:
            break
        for d in fs.faces[f]:
            g = fo[m.partner(d)]
            if g not in prev:
                prev[g] = (f, d)
                queue.append(g)
    path = []
    f = dst
    while prev[f] is not None:
        f, d = prev[f]
        path.append(d)
    return path[::-1]


def random_pair(rng: random.Random, m: CombMap, max_len: int = 8) -> tuple:
    """Two random curves on ``m`` with distinct edge points and random heights."""
    walks = [[random_walk(rng, m, rng.randint(1, max_len))] for _ in range(2)]
    pts: dict = {}
    for w in walks:
        for comp in w:
            for d in comp:
                e = m.partner(d)
                pts.setdefault(min(d, e), 0)
                pts[min(d, e)] += 1
    # distinct parameters per edge, shuffled among the passages
    slots = {k: rng.sample(range(1, v + 1), v) for k, v in pts.items()}
    out = []
    for w in walks:
        comps = []
        hts = []
        for comp in w:
            steps = []
            for d in comp:
                e = m.partner(d)
                key = min(d, e)
                t = Fraction(slots[key].pop(), pts[key] + 1)
                steps.append((d, t if d <= e else 1 - t))
            comps.append(steps)
            hts.append([Fraction(rng.randint(-999, 999), 1000) + Fraction(len(out), 10**7) for _ in steps])
        out.append(CurveDiagram(m, comps, hts))
    return out[0], out[1]
