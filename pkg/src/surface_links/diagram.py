"""Link diagrams cellularly embedded on closed oriented surfaces.

A diagram is stored as a combinatorial map on *darts* ``(crossing, slot)``.
Slots run counter-clockwise around a crossing on the oriented surface;
slots 0 and 2 carry the over-strand, slots 1 and 3 the under-strand.  The
edges of the diagram are a fixed-point-free involution on darts.  A strand
entering a crossing at slot ``i`` leaves it at slot ``i + 2``.

The surface is the one determined by the rotation system, so every
connected map is cellularly embedded in it.  Crossingless components are
kept as a bare ``loops`` count.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .errors import (
    InvariantViolation,
    MissingOrientationError,
    NotColorableError,
    StructuralError,
)

Dart = tuple  # (crossing id, slot)


def _other(slot: int) -> int:
    return (slot + 2) % 4


class CombMap:
    """Immutable 4-valent combinatorial map with over/under data.

    Parameters
    ----------
    match:
        Mapping dart -> dart.  It is symmetrised, so listing each edge once
        is enough.
    loops:
        Number of crossingless components.
    incoming:
        Optional orientation: the set of darts through which a strand
        enters its crossing.
    declared_genus:
        Genus of the surface the diagram is declared to live on; ``None``
        means the rotation-system surface itself.
    """

    __slots__ = ("_match", "_crossings", "loops", "incoming", "declared_genus", "_cache")

    def __init__(
        self,
        match: Mapping[Dart, Dart],
        loops: int = 0,
        incoming: Optional[Iterable[Dart]] = None,
        declared_genus: Optional[int] = None,
    ):
        full: dict = {}
        for a, b in match.items():
            a = (int(a[0]), int(a[1]))
            b = (int(b[0]), int(b[1]))
            for x, y in ((a, b), (b, a)):
                if full.get(x, y) != y:
                    raise StructuralError(f"dart {x} matched twice")
                full[x] = y
        crossings = sorted({d[0] for d in full})
        for c in crossings:
            for k in range(4):
                if (c, k) not in full:
                    raise StructuralError(f"dart {(c, k)} is unmatched")
        for d, e in full.items():
            if d == e:
                raise StructuralError(f"dart {d} matched to itself")
            if not 0 <= d[1] < 4:
                raise StructuralError(f"bad slot in dart {d}")
        if loops < 0:
            raise StructuralError("negative loop count")
        self._match = full
        self._crossings = tuple(crossings)
        self.loops = int(loops)
        self.incoming = None if incoming is None else frozenset((int(c), int(k)) for c, k in incoming)
        self.declared_genus = declared_genus
        self._cache: dict = {}
        if self.incoming is not None:
            self._check_orientation()
        if declared_genus is not None and declared_genus < self.genus():
            raise StructuralError("declared genus is below the rotation genus")

    # -- basic access -------------------------------------------------

    @property
    def crossings(self) -> tuple:
        return self._crossings

    def __len__(self) -> int:
        return len(self._crossings)

    def darts(self) -> Iterator[Dart]:
        for c in self._crossings:
            for k in range(4):
                yield (c, k)

    def partner(self, dart: Dart) -> Dart:
        return self._match[dart]

    def edges(self) -> list:
        """Each edge once, as a sorted pair of darts, in sorted order."""
        seen = []
        for d in self.darts():
            e = self._match[d]
            if d < e:
                seen.append((d, e))
        return seen

    @property
    def oriented(self) -> bool:
        return self.incoming is not None or not self._crossings

    def _check_orientation(self) -> None:
        inc = self.incoming
        if not inc <= set(self._match):
            raise StructuralError("orientation names unknown darts")
        for c in self._crossings:
            over = [(c, k) in inc for k in (0, 2)]
            under = [(c, k) in inc for k in (1, 3)]
            if sum(over) != 1 or sum(under) != 1:
                raise StructuralError(f"crossing {c} needs one incoming over and one incoming under dart")
        for d, e in self._match.items():
            if (d in inc) == (e in inc):
                raise StructuralError(f"edge {d}-{e} is not coherently oriented")

    def __eq__(self, other) -> bool:
        if not isinstance(other, CombMap):
            return NotImplemented
        return (
            self._match == other._match
            and self.loops == other.loops
            and self.incoming == other.incoming
            and self.declared_genus == other.declared_genus
        )

    def __hash__(self) -> int:
        return hash((frozenset(self._match.items()), self.loops, self.incoming))

    def __repr__(self) -> str:
        return f"CombMap(crossings={len(self)}, loops={self.loops}, genus={self.genus()})"

    def with_changes(self, **kw) -> "CombMap":
        args = dict(
            match=self._match,
            loops=self.loops,
            incoming=self.incoming,
            declared_genus=self.declared_genus,
        )
        args.update(kw)
        return CombMap(**args)

    # -- strands ------------------------------------------------------

    def components(self) -> list:
        """Strand components as lists of passes ``(crossing, entry slot)``.

        Oriented maps follow the orientation; otherwise each component starts
        from its smallest dart.  Crossingless loops are not listed.
        """
        if "components" in self._cache:
            return self._cache["components"]
        seen = set()
        comps = []
        for d in self.darts():
            if d in seen:
                continue
            if self.incoming is not None and d not in self.incoming:
                continue
            comp = []
            cur = d
            while cur not in seen:
                seen.add(cur)
                out = (cur[0], _other(cur[1]))
                seen.add(out)
                comp.append(cur)
                cur = self._match[out]
            comps.append(comp)
        self._cache["components"] = comps
        return comps

    def component_count(self) -> int:
        return len(self.components()) + self.loops

    def component_of(self) -> dict:
        """dart -> index of the strand component through it."""
        out = {}
        for i, comp in enumerate(self.components()):
            for c, k in comp:
                out[(c, k)] = i
                out[(c, _other(k))] = i
        return out

    # -- faces and genus -----------------------------------------------

    def face_next(self, dart: Dart) -> Dart:
        c, k = self._match[dart]
        return (c, (k + 1) % 4)

    def pieces(self) -> list:
        """Connected pieces of the underlying graph, as sorted crossing lists."""
        if "pieces" in self._cache:
            return self._cache["pieces"]
        adj: dict = {c: set() for c in self._crossings}
        for (c, _), (c2, _) in self._match.items():
            adj[c].add(c2)
        seen = set()
        out = []
        for c in self._crossings:
            if c in seen:
                continue
            stack = [c]
            seen.add(c)
            piece = []
            while stack:
                x = stack.pop()
                piece.append(x)
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            out.append(sorted(piece))
        self._cache["pieces"] = out
        return out

    def genus(self) -> int:
        """Sum of the genera of the rotation-system surfaces of the pieces."""
        if "genus" in self._cache:
            return self._cache["genus"]
        fs = faces(self)
        piece_of = {}
        for i, p in enumerate(self.pieces()):
            for c in p:
                piece_of[c] = i
        per_piece_faces = [0] * len(self.pieces())
        for f in fs.faces:
            if f:
                per_piece_faces[piece_of[f[0][0]]] += 1
        total = 0
        for i, p in enumerate(self.pieces()):
            v = len(p)
            e = 2 * v
            chi = v - e + per_piece_faces[i]
            if chi % 2 or chi > 2:
                raise InvariantViolation(f"Euler characteristic {chi} is not 2 - 2g")
            total += (2 - chi) // 2
        self._cache["genus"] = total
        return total

    @property
    def surface_genus(self) -> int:
        return self.genus() if self.declared_genus is None else self.declared_genus

    def is_connected(self) -> bool:
        return len(self.pieces()) + self.loops <= 1

    # -- transformations ----------------------------------------------

    def _remap(self, f) -> "CombMap":
        match = {f(d): f(e) for d, e in self._match.items()}
        inc = None if self.incoming is None else [f(d) for d in self.incoming]
        return CombMap(match, self.loops, inc, self.declared_genus)

    def mirror(self) -> "CombMap":
        """Swap over and under at every crossing."""
        return self._remap(lambda d: (d[0], (d[1] + 1) % 4))

    def reflect(self) -> "CombMap":
        """Reverse the orientation of the surface."""
        return self._remap(lambda d: (d[0], (-d[1]) % 4))

    def reverse(self) -> "CombMap":
        """Reverse the orientation of every component."""
        if self.incoming is None:
            return self
        inc = [d for d in self.darts() if d not in self.incoming]
        return self.with_changes(incoming=inc)

    def relabel(self, mapping: Mapping[int, int]) -> "CombMap":
        return self._remap(lambda d: (mapping[d[0]], d[1]))

    def crossing_changed(self, crossings: Iterable[int]) -> "CombMap":
        """Switch over/under at the given crossings, keeping the map."""
        cs = set(crossings)
        return self._remap(lambda d: (d[0], (d[1] + 1) % 4) if d[0] in cs else d)

    def unoriented(self) -> "CombMap":
        return self.with_changes(incoming=None)

    def oriented_copy(self) -> "CombMap":
        """Orient every component along its traversal from its smallest dart."""
        if self.incoming is not None:
            return self
        inc = [d for comp in self.components() for d in comp]
        return self.with_changes(incoming=inc)

    # -- serialisation -------------------------------------------------

    def to_dict(self) -> dict:
        out = {
            "crossings": [{"id": c} for c in self._crossings],
            "edges": [[list(a), list(b)] for a, b in self.edges()],
        }
        if self.loops:
            out["loops"] = self.loops
        if self.incoming is not None:
            out["orientation"] = [list(d) for d in sorted(self.incoming)]
        if self.declared_genus is not None:
            out["genus"] = self.declared_genus
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: Mapping) -> "CombMap":
        try:
            ids = [int(c["id"]) for c in data.get("crossings", [])]
            match = {tuple(a): tuple(b) for a, b in data["edges"]}
        except (KeyError, TypeError, ValueError) as exc:
            raise StructuralError(f"malformed diagram JSON: {exc}") from None
        m = cls(match, data.get("loops", 0), data.get("orientation"), data.get("genus"))
        if sorted(ids) != list(m.crossings):
            raise StructuralError("crossing list does not match the edges")
        return m

    @classmethod
    def from_json(cls, text: str) -> "CombMap":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise StructuralError(f"invalid JSON: {exc}") from None
        return cls.from_dict(data)


def unknot(loops: int = 1) -> CombMap:
    return CombMap({}, loops=loops)


# -- faces and colouring ---------------------------------------------


@dataclass(frozen=True)
class FaceStructure:
    """Face cycles of a map and an optional checkerboard colouring.

    Dart ``(c, k)`` in a face cycle stands for the corner of that face at
    crossing ``c`` between slots ``k - 1`` and ``k``.  Free loops contribute
    two faces each, listed as empty tuples.
    """

    faces: tuple
    coloring: Optional[tuple] = None

    def face_of(self) -> dict:
        out = {}
        for i, f in enumerate(self.faces):
            for d in f:
                out[d] = i
        return out

    def color_classes(self) -> tuple:
        if self.coloring is None:
            raise NotColorableError("no colouring present")
        a = tuple(i for i, col in enumerate(self.coloring) if col == 0)
        b = tuple(i for i, col in enumerate(self.coloring) if col == 1)
        return a, b


def faces(m: CombMap) -> FaceStructure:
    """All face cycles, crossing faces first (sorted by smallest dart)."""
    if "faces" in m._cache:
        return m._cache["faces"]
    seen = set()
    out = []
    for d in m.darts():
        if d in seen:
            continue
        cyc = []
        cur = d
        while cur not in seen:
            seen.add(cur)
            cyc.append(cur)
            cur = m.face_next(cur)
        if cur != d:
            raise StructuralError("face permutation is not a permutation")
        out.append(tuple(cyc))
    out.extend([()] * (2 * m.loops))
    fs = FaceStructure(tuple(out))
    m._cache["faces"] = fs
    return fs


def genus(m: CombMap) -> int:
    return m.genus()


def checkerboard_coloring(m: CombMap) -> FaceStructure:
    """Two-colour the faces so that faces across every edge differ.

    Colour 0 is given to the face holding the smallest corner of each piece;
    each free loop gets one face of each colour.
    """
    if "coloring" in m._cache:
        res = m._cache["coloring"]
        if isinstance(res, Exception):
            raise res
        return res
    fs = faces(m)
    face_of = fs.face_of()
    n = len(fs.faces)
    adj: list = [[] for _ in range(n)]
    for c, k in m.darts():
        a = face_of[(c, k)]
        b = face_of[(c, (k + 1) % 4)]
        adj[a].append(b)
        adj[b].append(a)
    color = [-1] * n
    for s in range(n):
        if color[s] >= 0 or not fs.faces[s]:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if color[y] < 0:
                    color[y] = 1 - color[x]
                    queue.append(y)
                elif color[y] == color[x]:
                    err = NotColorableError("face-adjacency graph is not bipartite")
                    m._cache["coloring"] = err
                    raise err
    first_loop_face = n - 2 * m.loops
    for i in range(m.loops):
        color[first_loop_face + 2 * i] = 0
        color[first_loop_face + 2 * i + 1] = 1
    res = FaceStructure(fs.faces, tuple(color))
    m._cache["coloring"] = res
    return res


def is_colorable(m: CombMap) -> bool:
    try:
        checkerboard_coloring(m)
    except NotColorableError:
        return False
    return True


def is_alternating(m: CombMap) -> bool:
    """Whether over and under passes alternate along every component."""
    for comp in m.components():
        for i, (c, k) in enumerate(comp):
            nxt = comp[(i + 1) % len(comp)]
            if k % 2 == nxt[1] % 2:
                return False
    return True


def crossing_sign(m: CombMap, c: int) -> int:
    if m.incoming is None:
        raise MissingOrientationError("crossing signs need an oriented diagram")
    over_in = 0 if (c, 0) in m.incoming else 2
    under_in = 1 if (c, 1) in m.incoming else 3
    return 1 if under_in == (over_in + 1) % 4 else -1


def writhe(m: CombMap) -> int:
    if m.incoming is None and m.crossings:
        raise MissingOrientationError("writhe needs an oriented diagram")
    return sum(crossing_sign(m, c) for c in m.crossings)


# -- isomorphism -------------------------------------------------------


@dataclass(frozen=True)
class IsoFlags:
    """Which symmetries an isomorphism may use besides relabelling."""

    reflect: bool = False
    mirror: bool = False
    reverse: bool = False


DEFAULT_FLAGS = IsoFlags()


@dataclass(frozen=True)
class DiagramIso:
    crossing_map: Mapping[int, int]
    dart_map: Mapping[Dart, Dart]
    reflect: bool = False
    mirror: bool = False
    reverse: bool = False


def _variants(m: CombMap, flags: IsoFlags) -> list:
    """(transformed map, dart transform, reflect, mirror, reverse) tuples."""
    out = []
    for r in (False, True) if flags.reflect else (False,):
        for mi in (False, True) if flags.mirror else (False,):
            for rv in (False, True) if (flags.reverse and m.incoming is not None) else (False,):
                x = m
                if r:
                    x = x.reflect()
                if mi:
                    x = x.mirror()
                if rv:
                    x = x.reverse()

                def tf(d, r=r, mi=mi):
                    c, k = d
                    if r:
                        k = (-k) % 4
                    if mi:
                        k = (k + 1) % 4
                    return (c, k)

                out.append((x, tf, r, mi, rv))
    return out


def _encode_from(m: CombMap, start: int, off: int, piece_size: int):
    order = {start: 0}
    offs = {start: off}
    queue = [start]
    code = []
    inc = m.incoming
    i = 0
    while i < len(queue):
        c = queue[i]
        i += 1
        oc = offs[c]
        for k in range(4):
            d = (c, (k + oc) % 4)
            c2, s2 = m._match[d]
            if c2 not in order:
                order[c2] = len(queue)
                offs[c2] = s2 - s2 % 2
                queue.append(c2)
            code.append(order[c2])
            code.append((s2 - offs[c2]) % 4)
            if inc is not None:
                code.append(1 if d in inc else 0)
    return tuple(code), order, offs


def _piece_canon(m: CombMap, piece: Sequence[int]):
    best = None
    for c in piece:
        for off in (0, 2):
            code, order, offs = _encode_from(m, c, off, len(piece))
            if best is None or code < best[0]:
                best = (code, order, offs)
    return best


def _canon(m: CombMap):
    parts = [_piece_canon(m, p) for p in m.pieces()]
    parts.sort(key=lambda t: (len(t[0]), t[0]))
    return parts


def canonical_form(m: CombMap, flags: IsoFlags = DEFAULT_FLAGS) -> bytes:
    """Byte string equal for two maps iff they are isomorphic under ``flags``."""
    key = ("canon", flags)
    if key in m._cache:
        return m._cache[key]
    best = None
    for x, *_ in _variants(m, flags):
        enc = (
            ("O" if x.incoming is not None else "U")
            + f"L{x.loops}:"
            + "|".join(",".join(map(str, code)) for code, _, _ in _canon(x))
        )
        if best is None or enc < best:
            best = enc
    out = best.encode("ascii")
    m._cache[key] = out
    return out


def isomorphic(a: CombMap, b: CombMap, flags: IsoFlags = DEFAULT_FLAGS) -> Optional[DiagramIso]:
    """A witness isomorphism ``a -> b`` respecting ``flags``, or ``None``."""
    if len(a) != len(b) or a.loops != b.loops or (a.incoming is None) != (b.incoming is None):
        return None
    cb = _canon(b)
    codes_b = [t[0] for t in cb]
    for x, tf, r, mi, rv in _variants(a, flags):
        ca = _canon(x)
        if [t[0] for t in ca] != codes_b:
            continue
        cmap = {}
        dmap = {}
        for (_, order_a, offs_a), (_, order_b, offs_b) in zip(ca, cb):
            inv_b = {v: k for k, v in order_b.items()}
            for c, idx in order_a.items():
                c2 = inv_b[idx]
                cmap[c] = c2
                for k in range(4):
                    # slot k of x at c has canonical label (k - offs_a[c]) % 4
                    lab = (k - offs_a[c]) % 4
                    dmap_src = None
                    for s in range(4):
                        if tf((c, s)) == (c, k):
                            dmap_src = (c, s)
                    dmap[dmap_src] = (c2, (lab + offs_b[c2]) % 4)
        return DiagramIso(cmap, dmap, r, mi, rv)
    return None
