"""Local rewrites of surface diagrams: flypes, Reidemeister moves, nugatory removal.

All rewrites act on a ``CombMap`` and return a fresh one.  Regions are
handled the same way throughout: a set of crossings is cut out along some
boundary darts, rebuilt, and the boundary darts of the new region are
reattached to whatever the old ones were attached to.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Optional

from .diagram import CombMap, canonical_form, writhe
from .errors import SiteError


# -- sub-maps ---------------------------------------------------------------------


def _internal_darts(m: CombMap, crossings: set) -> set:
    return {d for c in crossings for k in range(4) for d in [(c, k)] if m.partner(d)[0] in crossings}


def submap_boundary(m: CombMap, crossings: Iterable[int], internal: Optional[set] = None):
    """Faces and genus of a sub-map whose non-internal darts end in free ends.

    Returns ``(connected, genus, faces)`` where each face lists its corner
    darts in traversal order; a dangling dart ``d`` appears on the face that
    runs out along it.
    """
    cs = set(crossings)
    if internal is None:
        internal = _internal_darts(m, cs)
    darts = [(c, k) for c in sorted(cs) for k in range(4)]
    seen = set()
    fcs = []
    for d in darts:
        if d in seen:
            continue
        face = []
        cur = d
        while cur not in seen:
            seen.add(cur)
            face.append(cur)
            if cur in internal:
                c, j = m.partner(cur)
            else:
                c, j = cur
            cur = (c, (j + 1) % 4)
        fcs.append(face)
    # connectivity through internal edges
    start = min(cs)
    reach = {start}
    stack = [start]
    while stack:
        c = stack.pop()
        for k in range(4):
            if (c, k) in internal:
                c2 = m.partner((c, k))[0]
                if c2 not in reach:
                    reach.add(c2)
                    stack.append(c2)
    v = len(cs)
    e = len(internal) // 2
    chi = v - e + len(fcs)
    return reach == cs, (2 - chi) // 2, fcs


def disk_ports(m: CombMap, crossings: Iterable[int], internal: Optional[set] = None) -> Optional[list]:
    """Dangling darts in counter-clockwise order if the sub-map is a disk, else None."""
    cs = set(crossings)
    if not cs:
        return None
    if internal is None:
        internal = _internal_darts(m, cs)
    conn, g, fcs = submap_boundary(m, cs, internal)
    if not conn or g != 0:
        return None
    dangling = {(c, k) for c in cs for k in range(4)} - internal
    outer = [f for f in fcs if any(d in dangling for d in f)]
    if len(outer) > 1:
        return None
    if not outer:
        return []
    return [d for d in outer[0] if d in dangling]


def _rebuild(m: CombMap, removed: set, new_match: Mapping, boundary: Mapping, incoming=None, loops=0) -> CombMap:
    """Replace the crossings ``removed`` by a new region.

    ``new_match`` holds the edges inside the new region.  ``boundary`` maps
    each old boundary dart to the dart of the new region that takes its
    place; an old boundary dart attached to another old boundary dart is
    reattached accordingly.
    """
    match = {}
    for d, e in m._match.items():
        if d[0] in removed or e[0] in removed:
            continue
        match[d] = e
    for d, e in new_match.items():
        match[d] = e
    for old, new in boundary.items():
        o = m.partner(old)
        match[new] = boundary.get(o, o)
    return CombMap(match, loops=m.loops + loops, incoming=incoming, declared_genus=m.declared_genus)


def _propagate_orientation(match: Mapping, known: dict) -> Optional[list]:
    """Fill in incoming flags along edges and through crossings."""
    todo = deque(known)
    while todo:
        d = todo.popleft()
        s = known[d]
        for e, t in ((match[d], not s), ((d[0], (d[1] + 2) % 4), not s)):
            if e in known:
                if known[e] != t:
                    raise SiteError("incoherent orientation after rewrite")
                continue
            known[e] = t
            todo.append(e)
    return [d for d, s in known.items() if s]


# -- flypes ---------------------------------------------------------------------


@dataclass(frozen=True)
class FlypeSite:
    """Pivot ``crossing`` whose slots ``slot`` and ``slot + 1`` face the tangle.

    ``ports`` are the tangle's boundary darts in the order NE, NW, SW, SE;
    NW and SW are attached to the pivot.
    """

    crossing: int
    slot: int
    tangle: frozenset
    ports: tuple

    def to_dict(self) -> dict:
        return {
            "crossing": self.crossing,
            "slot": self.slot,
            "tangle": sorted(self.tangle),
            "ports": [list(p) for p in self.ports],
        }

    @classmethod
    def from_dict(cls, d) -> "FlypeSite":
        return cls(d["crossing"], d["slot"], frozenset(d["tangle"]), tuple(tuple(p) for p in d["ports"]))


def _site_for(m: CombMap, c: int, i: int, tangle: set) -> Optional[FlypeSite]:
    sw = m.partner((c, i))
    nw = m.partner((c, (i + 1) % 4))
    ports = disk_ports(m, tangle)
    if ports is None or len(ports) != 4:
        return None
    k = ports.index(nw)
    if ports[(k + 1) % 4] != sw:
        return None
    se = ports[(k + 2) % 4]
    ne = ports[(k + 3) % 4]
    # an outer strand that only joins the pivot to itself, or NE to SE, makes
    # the flype a kink slide whose inverse is not a site of this shape
    if m.partner((c, (i + 2) % 4)) == (c, (i + 3) % 4) or m.partner(ne) == se:
        return None
    region = set(tangle) | {c}
    internal = _internal_darts(m, set(tangle)) | {(c, i), sw, (c, (i + 1) % 4), nw}
    outer = disk_ports(m, region, internal)
    if outer is None or len(outer) != 4:
        return None
    return FlypeSite(c, i, frozenset(tangle), (ne, nw, sw, se))


def find_flypes(m: CombMap) -> list:
    """All flype sites, in (crossing, slot, tangle) order.

    The tangle is a disk sub-map with four boundary darts, two of them on
    adjacent slots of the pivot, and tangle plus pivot again lie in a disk.
    Edges between two tangle crossings are taken inside the tangle.
    """
    sites = []
    for c in m.crossings:
        for i in range(4):
            a = m.partner((c, i))[0]
            b = m.partner((c, (i + 1) % 4))[0]
            if a == c or b == c:
                continue
            core = {a, b}
            others = [x for x in m.crossings if x != c and x not in core]
            for r in range(len(others) + 1):
                for extra in combinations(others, r):
                    t = core | set(extra)
                    dang = sum(1 for x in t for k in range(4) if m.partner((x, k))[0] not in t)
                    if dang != 4:
                        continue
                    s = _site_for(m, c, i, t)
                    if s is not None:
                        sites.append(s)
    sites.sort(key=lambda s: (s.crossing, s.slot, sorted(s.tangle)))
    return sites


def _phi(d):
    # half-turn of the tangle about the axis through its E and W sides
    return (d[0], (1 - d[1]) % 4)


def apply_flype(m: CombMap, site: FlypeSite) -> CombMap:
    c, i = site.crossing, site.slot
    fresh = _site_for(m, c, i, set(site.tangle))
    if fresh is None or fresh.ports != tuple(tuple(p) for p in site.ports):
        raise SiteError("not a flype site of this map")
    ne, nw, sw, se = fresh.ports
    t = set(site.tangle)
    s = lambda k: (c, (i + k) % 4)  # noqa: E731
    new_match = {}
    for d in _internal_darts(m, t):
        new_match[_phi(d)] = _phi(m.partner(d))
    new_match[s(2)] = _phi(se)
    new_match[s(3)] = _phi(ne)
    boundary = {ne: s(1), se: s(0), s(2): _phi(sw), s(3): _phi(nw)}
    incoming = None
    if m.incoming is not None:
        known = {}
        for d in m.darts():
            if d[0] in t:
                known[_phi(d)] = d in m.incoming
            elif d[0] != c:
                known[d] = d in m.incoming
        probe = _rebuild(m, t | {c}, new_match, boundary)
        incoming = _propagate_orientation(probe._match, known)
    return _rebuild(m, t | {c}, new_match, boundary, incoming=incoming)


def inverse_site(m: CombMap, site: FlypeSite) -> FlypeSite:
    """Site on ``apply_flype(m, site)`` that flypes the tangle back."""
    out = apply_flype(m, site)
    i = (site.slot + 2) % 4
    back = _site_for(out, site.crossing, i, set(site.tangle))
    if back is None:
        raise SiteError("no inverse site")
    return back


# -- Reidemeister moves -----------------------------------------------------------


@dataclass(frozen=True)
class R1Removal:
    crossing: int
    slot: int  # slots slot and slot + 1 are joined by a monogon


@dataclass(frozen=True)
class R1Insertion:
    dart: tuple  # kink goes on the edge leaving this dart
    slot: int  # slot of the new crossing attached to ``dart`` is slot + 2


@dataclass(frozen=True)
class R2Removal:
    corner: tuple  # a corner of the bigon face


@dataclass(frozen=True)
class R2Insertion:
    first: tuple  # corner darts of one face; the edge leaving ``first`` is pushed
    second: tuple  # across the edge leaving ``second``
    over: bool = True  # the pushed strand passes over


@dataclass(frozen=True)
class R3Site:
    corner: tuple  # a corner of the triangle face


def _delete(m: CombMap, removed: set) -> CombMap:
    """Drop crossings, letting strands run straight through them."""
    match = {}
    used = set()
    for d, e in m._match.items():
        if d[0] in removed:
            continue
        if e[0] not in removed:
            match[d] = e
            continue
        cur = e
        while cur[0] in removed:
            used.add(cur)
            nxt = (cur[0], (cur[1] + 2) % 4)
            used.add(nxt)
            cur = m.partner(nxt)
        match[d] = cur
    loops = 0
    for c in removed:
        for k in range(4):
            d = (c, k)
            if d in used:
                continue
            loops += 1
            cur = d
            while cur not in used:
                used.add(cur)
                nxt = (cur[0], (cur[1] + 2) % 4)
                used.add(nxt)
                cur = m.partner(nxt)
    inc = None if m.incoming is None else [d for d in m.incoming if d[0] not in removed]
    return CombMap(match, loops=m.loops + loops, incoming=inc, declared_genus=m.declared_genus)


def find_r1(m: CombMap) -> list:
    return [R1Removal(c, k) for c in m.crossings for k in range(4) if m.partner((c, k)) == (c, (k + 1) % 4)]


def _bigon(m: CombMap, corner):
    x, a = corner
    y, b1 = m.partner((x, a))
    b = (b1 + 1) % 4
    if y == x or m.face_next((y, b)) != (x, a):
        return None
    return x, a, y, b


def find_r2(m: CombMap) -> list:
    out = []
    for d in m.darts():
        bg = _bigon(m, d)
        if bg is None:
            continue
        x, a, y, b = bg
        if a % 2 == (b - 1) % 2 and (x, a) < (y, b):
            out.append(R2Removal(d))
    return out


def _triangle(m: CombMap, corner):
    u, al = corner
    v, b1 = m.partner((u, al))
    be = (b1 + 1) % 4
    w, g1 = m.partner((v, be))
    ga = (g1 + 1) % 4
    if len({u, v, w}) != 3 or m.face_next((w, ga)) != (u, al):
        return None
    return [(u, al, v, (be - 1) % 4), (v, be, w, (ga - 1) % 4), (w, ga, u, (al - 1) % 4)]


def find_r3(m: CombMap) -> list:
    out = []
    seen = set()
    for d in m.darts():
        lines = _triangle(m, d)
        if lines is None:
            continue
        key = frozenset((u, a) for u, a, _, _ in lines)
        if key in seen:
            continue
        seen.add(key)
        if any(a % 2 == b % 2 for _, a, _, b in lines):
            out.append(R3Site(d))
    return out


def reidemeister(m: CombMap, kind: str, site) -> CombMap:
    """Apply a classical Reidemeister move of ``kind`` ("R1", "R2", "R3") at ``site``."""
    if kind == "R1" and isinstance(site, R1Removal):
        c, k = site.crossing, site.slot
        if m.partner((c, k)) != (c, (k + 1) % 4):
            raise SiteError("no monogon at this site")
        return _delete(m, {c})
    if kind == "R1" and isinstance(site, R1Insertion):
        d = tuple(site.dart)
        e = m.partner(d)
        x = max(m.crossings, default=0) + 1
        j = site.slot
        s = lambda k: (x, (j + k) % 4)  # noqa: E731
        match = {k: v for k, v in m._match.items() if k not in (d, e)}
        match[d] = s(2)
        match[s(0)] = s(1)
        match[s(3)] = e
        inc = None
        if m.incoming is not None:
            inc = set(m.incoming)
            # strand runs d -> s(2) -> s(0) -> s(1) -> s(3) -> e when d is outgoing
            inc |= {s(2), s(1)} if d not in m.incoming else {s(3), s(0)}
        return CombMap(match, m.loops, inc, m.declared_genus)
    if kind == "R2" and isinstance(site, R2Removal):
        bg = _bigon(m, tuple(site.corner))
        if bg is None:
            raise SiteError("no bigon at this site")
        x, a, y, b = bg
        if a % 2 != (b - 1) % 2:
            raise SiteError("bigon strands alternate; not an R2 bigon")
        return _delete(m, {x, y})
    if kind == "R2" and isinstance(site, R2Insertion):
        return _r2_insert(m, tuple(site.first), tuple(site.second), site.over)
    if kind == "R3" and isinstance(site, R3Site):
        lines = _triangle(m, tuple(site.corner))
        if lines is None:
            raise SiteError("no triangle at this site")
        if not any(a % 2 == b % 2 for _, a, _, b in lines):
            raise SiteError("triangle strands are cyclically layered")
        new_match = {}
        boundary = {}
        for u, a, v, b in lines:
            new_match[(v, (b + 2) % 4)] = (u, (a + 2) % 4)
            boundary[(u, (a + 2) % 4)] = (v, b)
            boundary[(v, (b + 2) % 4)] = (u, a)
        return _rebuild(m, {u for u, _, _, _ in lines}, new_match, boundary, incoming=m.incoming)
    raise SiteError(f"unknown move {kind} at {site!r}")


def _r2_insert(m: CombMap, p1, p2, over: bool) -> CombMap:
    fo = {}
    for d in m.darts():
        if d not in fo:
            cur = d
            while cur not in fo:
                fo[cur] = d
                cur = m.face_next(cur)
    if fo.get(p1) != fo.get(p2):
        raise SiteError("R2 darts must be corners of one face")
    q1 = m.partner(p1)
    q2 = m.partner(p2)
    if {p1, q1} == {p2, q2}:
        raise SiteError("R2 needs two distinct edges")
    base = max(m.crossings, default=0)
    x, y = base + 1, base + 2
    t = 0 if over else 1
    north, west, south, east = ((k + t) % 4 for k in range(4))
    match = {k: v for k, v in m._match.items() if k not in (p1, q1, p2, q2)}
    match[p1] = (x, north)
    match[(x, south)] = (y, south)
    match[(y, north)] = q1
    match[p2] = (y, east)
    match[(y, west)] = (x, east)
    match[(x, west)] = q2
    inc = None
    if m.incoming is not None:
        inc = set(m.incoming)
        if p1 not in m.incoming:
            inc |= {(x, north), (y, south)}
        else:
            inc |= {(x, south), (y, north)}
        if p2 not in m.incoming:
            inc |= {(y, east), (x, east)}
        else:
            inc |= {(y, west), (x, west)}
    return CombMap(match, m.loops, inc, m.declared_genus)


# -- nugatory crossings -------------------------------------------------------------


def _side(m: CombMap, c: int, slots) -> set:
    """Crossings reachable from the given slots of ``c`` without passing ``c``."""
    out = set()
    stack = [m.partner((c, k))[0] for k in slots]
    while stack:
        x = stack.pop()
        if x == c or x in out:
            continue
        out.add(x)
        stack.extend(m.partner((x, k))[0] for k in range(4))
    return out


def _closed_side(m: CombMap, c: int, slots) -> CombMap:
    """The side at the given two slots, with its two loose ends joined."""
    side = _side(m, c, slots)
    a1 = m.partner((c, slots[0]))
    a2 = m.partner((c, slots[1]))
    if not side:
        return CombMap({}, loops=1)
    match = {d: m.partner(d) for x in side for k in range(4) for d in [(x, k)] if m.partner(d)[0] != c}
    match[a1] = a2
    return CombMap(match)


def nugatory_splits(m: CombMap) -> list:
    """``(crossing, k, genus_a, genus_b)`` for every crossing that splits the diagram.

    Side A hangs off slots ``k+1, k+2`` and side B off ``k+3, k``; they
    meet only at the crossing.
    """
    out = []
    piece_genus = {}
    pieces = m.pieces()
    for p in pieces:
        sub = CombMap({d: m.partner(d) for c in p for k in range(4) for d in [(c, k)]})
        for c in p:
            piece_genus[c] = sub.genus()
    for c in m.crossings:
        for k in (0, 1):
            sa = ((k + 1) % 4, (k + 2) % 4)
            sb = ((k + 3) % 4, k)
            a = _side(m, c, sa)
            b = _side(m, c, sb)
            if a & b:
                continue
            if any(m.partner((c, s))[0] == c for s in sa) and m.partner((c, sa[0])) != (c, sa[1]):
                continue
            if any(m.partner((c, s))[0] == c for s in sb) and m.partner((c, sb[0])) != (c, sb[1]):
                continue
            ga = _closed_side(m, c, sa).genus()
            gb = _closed_side(m, c, sb).genus()
            out.append((c, k, ga, gb, piece_genus[c]))
    return out


def removable_nugatory(m: CombMap) -> list:
    """Crossings met by a circle bounding a disk on the surface, and nothing else."""
    out = []
    for c, k, ga, gb, g in nugatory_splits(m):
        if ga + gb == g and min(ga, gb) == 0 and c not in out:
            out.append(c)
    return sorted(out)


def remove_nugatory(m: CombMap, c: int) -> CombMap:
    """Undo a removable nugatory crossing by turning its disk side over."""
    for cc, k, ga, gb, g in nugatory_splits(m):
        if cc != c or ga + gb != g or min(ga, gb) != 0:
            continue
        sa = ((k + 1) % 4, (k + 2) % 4)
        sb = ((k + 3) % 4, k)
        # side A becomes the disk side; between two disks take the smaller
        if ga != 0 or (gb == 0 and len(_side(m, c, sb)) < len(_side(m, c, sa))):
            k = (k + 2) % 4
            sa = sb
        a = _side(m, c, sa)
        a1, a2 = m.partner((c, sa[0])), m.partner((c, sa[1]))
        b1, b2 = m.partner((c, (k + 3) % 4)), m.partner((c, k))
        new_match = {}
        for d in _internal_darts(m, a):
            new_match[_phi(d)] = _phi(m.partner(d))
        inc = None
        ends = []
        if a:
            ends = [(_phi(a1), b1), (_phi(a2), b2)]
        else:
            ends = [(b1, b2)] if b1[0] != c else []
        if not a and b1[0] == c:
            loops = 1
        elif a and b1[0] == c:
            new_match[_phi(a1)] = _phi(a2)
            loops = 0
            ends = []
        else:
            loops = 0
        match = {d: e for d, e in m._match.items() if d[0] not in a and d[0] != c and e[0] not in a and e[0] != c}
        match.update(new_match)
        for x, y in ends:
            match[x] = y
        if m.incoming is not None:
            inc = [d for d in m.incoming if d[0] not in a and d[0] != c]
            inc += [_phi(d) for d in m.incoming if d[0] in a]
        return CombMap(match, loops=m.loops + loops, incoming=inc, declared_genus=m.declared_genus)
    raise SiteError(f"crossing {c} is not removably nugatory")


# -- orbits ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MoveRecord:
    kind: str
    site: dict
    before: str
    after: str

    def to_dict(self) -> dict:
        return {"kind": self.kind, "site": self.site, "before": self.before, "after": self.after}


def form_key(m: CombMap) -> bytes:
    return canonical_form(m)


@dataclass
class Orbit:
    forms: list  # canonical forms, BFS order
    maps: dict  # form -> representative map
    parent: dict  # form -> (parent form, site) or None
    truncated: bool

    def __len__(self) -> int:
        return len(self.forms)

    def __contains__(self, form) -> bool:
        return form in self.maps

    def path_to(self, form) -> list:
        steps = []
        while self.parent[form] is not None:
            prev, site = self.parent[form]
            steps.append(MoveRecord("Flype", site.to_dict(), prev.hex(), form.hex()))
            form = prev
        return steps[::-1]


def flype_neighbours(m: CombMap) -> list:
    """``(site, result)`` for every non-degenerate flype of ``m``."""
    key = form_key(m)
    out = []
    for s in find_flypes(m):
        r = apply_flype(m, s)
        if form_key(r) != key:
            out.append((s, r))
    return out


def flype_orbit(m: CombMap, bound: int = 10**4, target: Optional[bytes] = None) -> Orbit:
    """Breadth-first closure under flypes, up to isomorphism.

    Each level is expanded in lexicographic order of canonical forms.  The
    search stops once ``bound`` diagrams are known (``truncated``) or when
    ``target`` is reached.
    """
    start = form_key(m)
    orbit = Orbit([start], {start: m}, {start: None}, False)
    level = [start]
    while level:
        if target is not None and target in orbit.maps:
            return orbit
        nxt = []
        for f in sorted(level):
            for site, r in flype_neighbours(orbit.maps[f]):
                k = form_key(r)
                if k in orbit.maps:
                    continue
                if len(orbit.forms) >= bound:
                    orbit.truncated = True
                    return orbit
                orbit.forms.append(k)
                orbit.maps[k] = r
                orbit.parent[k] = (f, site)
                nxt.append(k)
                if k == target:
                    return orbit
        level = nxt
    return orbit


@dataclass(frozen=True)
class Equivalence:
    equivalent: bool
    path: tuple = ()
    truncated: bool = False
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "equivalent": self.equivalent,
            "path": [r.to_dict() for r in self.path],
            "truncated": self.truncated,
            "reason": self.reason,
        }


def _quick_invariants(m: CombMap) -> tuple:
    w = writhe(m) if m.incoming is not None else None
    return (len(m.crossings), m.genus(), m.component_count(), w)


def flype_equivalent(a: CombMap, b: CombMap, bound: int = 10**4) -> Equivalence:
    """Is ``b`` in the (truncated) flype orbit of ``a``?  Semi-decision within ``bound``."""
    if _quick_invariants(a) != _quick_invariants(b):
        return Equivalence(False, reason="invariant mismatch")
    target = form_key(b)
    orbit = flype_orbit(a, bound, target=target)
    if target in orbit:
        return Equivalence(True, tuple(orbit.path_to(target)))
    if orbit.truncated:
        return Equivalence(False, truncated=True, reason="bound reached")
    return Equivalence(False, reason="orbit exhausted")


def path_to_json(path: Iterable[MoveRecord]) -> str:
    return json.dumps([r.to_dict() for r in path], indent=2)
