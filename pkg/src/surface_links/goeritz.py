"""Gordon-Litherland pairing on checkerboard surfaces of surface diagrams.

A checkerboard surface ``F`` of colour ``X`` deformation retracts onto its
spine: one vertex per ``X``-face and one edge per crossing (the half-twisted
band).  ``H_1(F)`` is the cycle space of the spine.

Each crossing has a Goeritz type ``eta``: +1 when the colour occupies the
corners counter-clockwise after the over-strand slots (corners 0 and 2),
-1 otherwise.  A spine cycle is realised as a curve that crosses faces along
corner chords and passes through bands; the transfer pushoff runs on both
sides of it.  Chord intersections inside a face contribute opposite amounts
to ``lk(ta, b)`` and ``lk(tb, a)``, so only bands survive in the pairing::

    <a, b> = sum_c eta(c) a_c b_c
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import exact
from .diagram import CombMap, checkerboard_coloring, crossing_sign, is_alternating
from .errors import NotColorableError, SiteError

COLORS = ("B", "W")


@dataclass(frozen=True)
class SpineCycle:
    """Integer 1-chain on the spine, as sorted ``(crossing, coefficient)`` pairs."""

    coeffs: tuple = ()

    @classmethod
    def from_dict(cls, d: Mapping[int, int]) -> "SpineCycle":
        return cls(tuple(sorted((c, v) for c, v in d.items() if v)))

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def __add__(self, other: "SpineCycle") -> "SpineCycle":
        d = self.as_dict()
        for c, v in other.coeffs:
            d[c] = d.get(c, 0) + v
        return SpineCycle.from_dict(d)

    def __rmul__(self, k: int) -> "SpineCycle":
        return SpineCycle.from_dict({c: k * v for c, v in self.coeffs})

    def __neg__(self) -> "SpineCycle":
        return (-1) * self


@dataclass(frozen=True)
class Spine:
    color: str
    faces: tuple  # face indices of this colour
    edges: Mapping  # crossing -> (tail face, head face)
    basis: tuple  # SpineCycle fundamental cycles
    components: int
    low: Mapping  # crossing -> corner (0 or 1) at the tail of its edge

    @property
    def beta1(self) -> int:
        return len(self.edges) - len(self.faces) + self.components


@dataclass(frozen=True)
class GoeritzForm:
    color: str
    matrix: tuple
    basis: tuple
    beta1: int
    sigma: int
    slope: int
    definite: str = field(default="zero")

    @property
    def sigma_invariant(self) -> Fraction:
        return Fraction(self.sigma) - Fraction(self.slope, 2)


# -- colours -------------------------------------------------------------


def _classes(m: CombMap):
    hit = m._cache.get("classes")
    if hit is None:
        fs = checkerboard_coloring(m)
        hit = m._cache["classes"] = (fs, fs.face_of(), fs.coloring)
    return hit


def corner_face(face_of: Mapping, c: int, corner: int) -> int:
    """Face holding the corner between slots ``corner`` and ``corner + 1``."""
    return face_of[(c, (corner + 1) % 4)]


def color_assignment(m: CombMap) -> dict:
    """Map ``{"B": colour index, "W": colour index}``.

    For alternating maps ``B`` is the class with Goeritz type +1 at every
    crossing (the positive-definite one); otherwise the class holding the
    smallest corner is ``B``.
    """
    if "colors" in m._cache:
        return m._cache["colors"]
    m._cache["colors"] = out = _assign(m)
    return out


def _assign(m: CombMap) -> dict:
    fs, face_of, coloring = _classes(m)
    if m.crossings and is_alternating(m):
        etas0 = {_eta_raw(face_of, coloring, 0, c) for c in m.crossings}
        if etas0 == {1}:
            return {"B": 0, "W": 1}
        if etas0 == {-1}:
            return {"B": 1, "W": 0}
    if m.crossings:
        first = coloring[face_of[min(m.darts())]]
        return {"B": first, "W": 1 - first}
    return {"B": 0, "W": 1}


def _eta_raw(face_of, coloring, idx: int, c: int) -> int:
    return 1 if coloring[corner_face(face_of, c, 0)] == idx else -1


def eta(m: CombMap, color: str, c: int) -> int:
    return _etas(m, color)[c]


def _etas(m: CombMap, color: str) -> dict:
    key = ("eta", color)
    if key not in m._cache:
        fs, face_of, coloring = _classes(m)
        idx = color_assignment(m)[color]
        m._cache[key] = {c: _eta_raw(face_of, coloring, idx, c) for c in m.crossings}
    return m._cache[key]


# -- spine -------------------------------------------------------------------


def spine(m: CombMap, color: str) -> Spine:
    """Spine graph of the checkerboard surface with a fundamental cycle basis.

    Edge ``c`` runs from the face at the lower corner index to the opposite
    corner.  The basis comes from a BFS spanning forest (faces in index
    order, crossings in id order), one cycle per non-tree crossing.
    ``color`` is "B", "W" or a raw colour-class index (0 or 1).
    """
    if color in COLORS:
        idx = color_assignment(m)[color]
    elif color in (0, 1):
        idx = color
    else:
        raise ValueError(f"colour must be one of {COLORS} or a class index")
    key = ("spine", color)
    if key in m._cache:
        return m._cache[key]
    fs, face_of, coloring = _classes(m)
    verts = tuple(i for i, col in enumerate(coloring) if col == idx)
    edges = {}
    low = {}
    for c in m.crossings:
        lo = 0 if coloring[corner_face(face_of, c, 0)] == idx else 1
        low[c] = lo
        edges[c] = (corner_face(face_of, c, lo), corner_face(face_of, c, lo + 2))
    adj: dict = {v: [] for v in verts}
    for c, (t, h) in edges.items():
        adj[t].append((c, h, 1))
        adj[h].append((c, t, -1))
    parent: dict = {}
    depth: dict = {}
    tree = set()
    comps = 0
    for root in verts:
        if root in depth:
            continue
        comps += 1
        depth[root] = 0
        parent[root] = None
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for c, w, s in adj[v]:  # already in crossing order
                if w not in depth:
                    depth[w] = depth[v] + 1
                    parent[w] = (v, c, s)
                    tree.add(c)
                    queue.append(w)

    def path_to_root(v):
        # chain from v up to its root, as {crossing: coefficient} along v -> root
        out = {}
        while parent[v] is not None:
            u, c, s = parent[v]
            out[c] = out.get(c, 0) - s
            v = u
        return out

    basis = []
    for c in m.crossings:
        if c in tree:
            continue
        t, h = edges[c]
        cyc = {c: 1}
        for k, v in path_to_root(h).items():
            cyc[k] = cyc.get(k, 0) + v
        for k, v in path_to_root(t).items():
            cyc[k] = cyc.get(k, 0) - v
        basis.append(SpineCycle.from_dict(cyc))
    sp = Spine(color, verts, edges, tuple(basis), comps, low)
    m._cache[key] = sp
    return sp


def is_cycle(m: CombMap, color: str, a: SpineCycle) -> bool:
    sp = spine(m, color)
    bd: dict = {}
    for c, v in a.coeffs:
        if c not in sp.edges:
            return False
        t, h = sp.edges[c]
        bd[h] = bd.get(h, 0) + v
        bd[t] = bd.get(t, 0) - v
    return not any(bd.values())


# -- curve realisation and the pairing ----------------------------------------


def _walks(sp: Spine, a: SpineCycle) -> list:
    """Decompose a cycle into closed walks of (crossing, direction) steps."""
    remaining = {}
    for c, v in a.coeffs:
        remaining[c] = v
    out_steps: dict = {}
    for c, v in remaining.items():
        t, h = sp.edges[c]
        for _ in range(abs(v)):
            if v > 0:
                out_steps.setdefault(t, []).append((c, 1, h))
            else:
                out_steps.setdefault(h, []).append((c, -1, t))
    for v in out_steps:
        out_steps[v].sort(reverse=True)
    walks = []
    for start in sorted(out_steps):
        while out_steps.get(start):
            # Hierholzer on the directed multigraph
            stack = [(start, None)]
            circuit = []
            while stack:
                v, step = stack[-1]
                if out_steps.get(v):
                    c, s, w = out_steps[v].pop()
                    stack.append((w, (c, s)))
                else:
                    stack.pop()
                    if step is not None:
                        circuit.append(step)
            circuit.reverse()
            walks.append(circuit)
    return walks


def _chords(m: CombMap, sp: Spine, a: SpineCycle, tag: int) -> list:
    """Face chords ``(face, entry corner, exit corner, tag, seq)`` of a realised cycle."""
    fs = checkerboard_coloring(m)
    face_of = fs.face_of()
    chords = []
    seq = 0
    for walk in _walks(sp, a):
        n = len(walk)
        for i in range(n):
            c0, s0 = walk[i]
            c1, s1 = walk[(i + 1) % n]
            lo0 = sp.low[c0]
            lo1 = sp.low[c1]
            # arrive through band c0 at its head corner (or tail corner when reversed)
            arr = (c0, lo0 + 2 if s0 > 0 else lo0)
            dep = (c1, lo1 if s1 > 0 else lo1 + 2)
            f = face_of[(arr[0], (arr[1] + 1) % 4)]
            chords.append((f, arr, dep, tag, seq))
            seq += 1
    return chords


def _chord_crossing_sign(order: Mapping, p, q) -> int:
    """Intersection sign of chord p with chord q inside one face (0 if disjoint).

    ``order`` maps a boundary point to its position along the face cycle,
    which runs with the face on the right (clockwise around the face).
    """
    p1, p2 = order[p[0]], order[p[1]]
    q1, q2 = order[q[0]], order[q[1]]

    def on_arc(x, lo, hi):
        return 0 < (x - lo) % L < (hi - lo) % L

    L = len(order)
    in1 = on_arc(q1, p1, p2)
    in2 = on_arc(q2, p1, p2)
    if in1 == in2:
        return 0
    # the cw arc p1 -> p2 lies to the left of p
    return 1 if in2 else -1


def _face_term(m: CombMap, sp: Spine, a: SpineCycle, b: SpineCycle) -> int:
    """Sum of intersection signs of a-chords with b-chords over all faces."""
    fs = checkerboard_coloring(m)
    ca = _chords(m, sp, a, 0)
    cb = _chords(m, sp, b, 1)
    by_face: dict = {}
    for ch in ca + cb:
        by_face.setdefault(ch[0], []).append(ch)
    total = 0
    for f, chs in by_face.items():
        cycle = fs.faces[f]
        # boundary points: each corner holds its chord ends in (tag, seq, end) order
        corner_pos = {(d[0], (d[1] - 1) % 4): i for i, d in enumerate(cycle)}
        pts = []
        for ch in chs:
            _, arr, dep, tag, seq = ch
            pts.append((corner_pos[arr], tag, seq, 0))
            pts.append((corner_pos[dep], tag, seq, 1))
        pts.sort()
        order = {p: i for i, p in enumerate(pts)}
        ends = {}
        for p in pts:
            ends.setdefault((p[1], p[2]), [None, None])[p[3]] = p
        achs = [(k, v) for k, v in ends.items() if k[0] == 0]
        bchs = [(k, v) for k, v in ends.items() if k[0] == 1]
        for _, pa in achs:
            for _, pb in bchs:
                total += _chord_crossing_sign(order, pa, pb)
    return total


def transfer_pair(m: CombMap, color: str, a: SpineCycle, b: SpineCycle) -> tuple:
    """``(lk(tau a, b), lk(tau b, a))`` relative to the positive side of ``F``.

    Both curves are realised once on ``F``, with ``b`` running beside ``a``
    on the later side of every corner and band.  The lifts of ``a`` sit
    just above and below ``F``.  Where a chord of ``a`` crosses a chord of
    ``b`` inside a face only one lift passes over ``b``; inside a band the
    arcs cross at the half twist and both lifts pass on the same side.
    Either way the two values share a symmetric part ``sum eta a_c b_c``
    and differ by twice the intersection number ``p(a).p(b)`` on the
    surface.
    """
    for x in (a, b):
        if not is_cycle(m, color, x):
            raise SiteError("not a cycle of the spine")
    bd = b.as_dict()
    band = sum(eta(m, color, c) * v * bd.get(c, 0) for c, v in a.coeffs)
    meet = projected_intersection(m, color, a, b)
    return band + meet, band - meet


def projected_intersection(m: CombMap, color: str, a: SpineCycle, b: SpineCycle) -> int:
    """Algebraic intersection of the projections of ``a`` and ``b`` on the surface."""
    sp = spine(m, color)
    bd = b.as_dict()
    # parallel arcs through a band cross once at the twist, positively when
    # both run tail to head with a on the earlier side
    twist = sum(v * bd.get(c, 0) for c, v in a.coeffs)
    return _face_term(m, sp, a, b) + twist


def transfer_lk(m: CombMap, color: str, a: SpineCycle, b: SpineCycle) -> int:
    return transfer_pair(m, color, a, b)[0]


def pairing(m: CombMap, color: str, a: SpineCycle, b: SpineCycle) -> int:
    """``<a, b> = (lk(tau a, b) + lk(tau b, a)) / 2``."""
    x, y = transfer_pair(m, color, a, b)
    if (x + y) % 2:
        raise AssertionError("odd transfer linking sum")
    return (x + y) // 2


def pairing_matrix(m: CombMap, color: str, basis=None) -> list:
    """Gram matrix on ``basis`` (default: the spine basis), by the band formula."""
    sp = spine(m, color)
    basis = sp.basis if basis is None else basis
    et = _etas(m, color)
    dicts = [b.as_dict() for b in basis]
    n = len(basis)
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = sum(et[c] * x * dicts[j].get(c, 0) for c, x in dicts[i].items())
            g[i][j] = g[j][i] = v
    return g


# -- slopes -------------------------------------------------------------------


def component_slopes(m: CombMap, color: str) -> list:
    """Boundary slope ``lk(L_i, pushoff of L_i in F)`` for each crossing component.

    Near a crossing the pushoff of the over-strand switches sides under it
    (contributing ``eta``) and the over-strand passes over the pushoff of
    the under-strand (contributing the crossing sign when both strands
    belong to the same component).
    """
    mo = m.oriented_copy()
    comp_of = mo.component_of()
    et = _etas(m, color)
    out = [0] * len(mo.components())
    for c in mo.crossings:
        i_over = comp_of[(c, 0)]
        i_under = comp_of[(c, 1)]
        out[i_over] += et[c]
        if i_over == i_under:
            out[i_over] += crossing_sign(mo, c)
    return out


def slope(m: CombMap, color: str) -> int:
    return sum(component_slopes(m, color))


def pushoff_cycle(m: CombMap, color: str, component: int) -> SpineCycle:
    """Class in ``H_1(F)`` of the pushoff of a strand component into ``F``."""
    mo = m.oriented_copy()
    fs = checkerboard_coloring(m)
    face_of = fs.face_of()
    idx = color_assignment(m)[color]
    coloring = fs.coloring
    sp = spine(m, color)
    d: dict = {}
    for c, s in mo.components()[component]:
        before = s if coloring[corner_face(face_of, c, s)] == idx else (s - 1) % 4
        d[c] = d.get(c, 0) + (1 if before == sp.low[c] else -1)
    return SpineCycle.from_dict(d)


def boundary_intersection(m: CombMap) -> int:
    """``i(dB, dW)`` on the boundary tori, from half-turns of the sheets.

    At each pass of a strand through a crossing, the sheet of ``B`` swings
    from one side of the strand to the other, below an over-strand and above
    an under-strand; ``W`` swings the opposite way.  Each pass therefore
    adds +-1, signed with the torus oriented as the boundary of the link
    exterior.
    """
    mo = m.oriented_copy()
    fs = checkerboard_coloring(m)
    face_of = fs.face_of()
    b = color_assignment(m)["B"]
    total = 0
    for comp in mo.components():
        for c, s in comp:
            start_right = fs.coloring[corner_face(face_of, c, s)] == b
            sheet_above = s % 2 == 1
            total += -1 if start_right == sheet_above else 1
    return total


# -- forms ----------------------------------------------------------------------


def goeritz(m: CombMap, color: str) -> GoeritzForm:
    key = ("goeritz", color)
    if key in m._cache:
        return m._cache[key]
    sp = spine(m, color)
    g = pairing_matrix(m, color)
    pos, neg, _ = exact.inertia(g)
    n = len(g)
    frm = GoeritzForm(
        color=color,
        matrix=tuple(tuple(r) for r in g),
        basis=sp.basis,
        beta1=sp.beta1,
        sigma=pos - neg,
        slope=slope(m, color),
        definite="zero" if n == 0 else "positive" if pos == n else "negative" if neg == n else "indefinite",
    )
    m._cache[key] = frm
    return frm


def is_definite(form: GoeritzForm) -> str:
    return exact.definiteness(form.matrix)


def sigma_invariant(m: CombMap, color: str) -> Fraction:
    return goeritz(m, color).sigma_invariant


def alternating_by_definiteness(m: CombMap) -> bool:
    """Both checkerboard forms definite with opposite signs.

    An empty form counts as definite of either sign.
    """
    if not m.is_connected():
        raise NotColorableError("definiteness test needs a connected, cellular diagram")
    fb = goeritz(m, "B").definite
    fw = goeritz(m, "W").definite
    pos = ("positive", "zero")
    neg = ("negative", "zero")
    return (fb in pos and fw in neg) or (fb in neg and fw in pos)


def report(m: CombMap) -> dict:
    """GL report: forms, sigma invariants and the identity checks."""
    from .diagram import is_alternating as alt

    g = m.genus()
    forms = {c: goeritz(m, c) for c in COLORS}
    inv = {c: forms[c].sigma_invariant for c in COLORS}
    fb, fw = forms["B"], forms["W"]
    full_alt = alt(m) and m.is_connected()
    out = {
        "genus": g,
        "alternating": alt(m),
        "colors": {
            c: {
                "beta1": f.beta1,
                "sigma": f.sigma,
                "slope": f.slope,
                "definite": f.definite,
            }
            for c, f in forms.items()
        },
        "sigma_invariants": {c: str(v) for c, v in inv.items()},
        "identities": {
            "sigma_gap": bool(full_alt and inv["W"] - inv["B"] == 2 * g),
            "slope_identity": bool(full_alt and fb.slope - fw.slope == 2 * (fb.beta1 + fw.beta1 + 2 * g)),
            "sigma_gap_reversed_sign": bool(full_alt and inv["B"] - inv["W"] == 2 * g),
            "slope_identity_reversed_sign": bool(
                full_alt and fb.slope - fw.slope == 2 * (fb.beta1 + fw.beta1 - 2 * g)
            ),
            "slope_boundary_meet": boundary_intersection(m) == fb.slope - fw.slope,
        },
    }
    return out
