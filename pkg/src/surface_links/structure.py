"""Structural classification: connectivity, cellularity, (weak) primeness."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from itertools import combinations

from .diagram import CombMap
from .gauss import GaussCode, gauss_to_surface
from .moves import removable_nugatory


@dataclass(frozen=True)
class StructureReport:
    connected: bool
    cellular: bool
    weaklyPrime: bool
    prime: bool
    removableNugatory: list
    splitComponents: int
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def _closed(m: CombMap, side: set, ends: list) -> CombMap:
    match = {d: m.partner(d) for c in side for k in range(4) for d in [(c, k)] if m.partner(d)[0] in side}
    match[ends[0]] = ends[1]
    return CombMap(match)


def two_cuts(m: CombMap) -> list:
    """Pairs of edges whose removal splits a piece, as ``(side, other, g_side, g_other)``.

    Each side is closed up by joining its two cut ends; the circle crossing
    the two edges separates the surface exactly when the two genera add up
    to the genus of the piece.
    """
    out = []
    for piece in m.pieces():
        ps = set(piece)
        if len(ps) < 2:
            continue
        edges = [(d, e) for d, e in m.edges() if d[0] in ps]
        for e1, e2 in combinations(edges, 2):
            cut = {e1[0], e1[1], e2[0], e2[1]}
            start = piece[0]
            seen = {start}
            stack = [start]
            while stack:
                c = stack.pop()
                for k in range(4):
                    if (c, k) in cut:
                        continue
                    c2 = m.partner((c, k))[0]
                    if c2 not in seen:
                        seen.add(c2)
                        stack.append(c2)
            if seen == ps:
                continue
            side, other = seen, ps - seen
            ends_s = [d for d in cut if d[0] in side]
            ends_o = [d for d in cut if d[0] in other]
            if len(ends_s) != 2 or len(ends_o) != 2:
                continue
            gs = _closed(m, side, ends_s).genus()
            go = _closed(m, other, ends_o).genus()
            out.append((frozenset(side), frozenset(other), gs, go))
    return out


def classify(m: CombMap) -> StructureReport:
    notes = []
    pieces = len(m.pieces()) + m.loops
    connected = pieces <= 1
    cellular = m.declared_genus is None or m.declared_genus == m.genus()
    if not cellular:
        notes.append(f"stabilized: declared genus {m.declared_genus}, cellular genus {m.genus()}")
    g = m.genus()
    weak = connected
    prime = connected
    if not connected and not m.crossings and m.loops == 2 and (m.declared_genus or 0) == 0:
        prime = True
        notes.append("trivial 2-component diagram on the sphere")
    if connected:
        for side, other, gs, go in two_cuts(m):
            if gs + go != g:
                continue  # the cutting circle is non-separating
            prime = False
            if gs == 0 or go == 0:
                weak = False
            elif not notes or "essential separating 2-cut" not in notes[-1]:
                notes.append("essential separating 2-cut: prime fails, weak primeness kept")
    return StructureReport(
        connected=connected,
        cellular=cellular,
        weaklyPrime=weak,
        prime=prime,
        removableNugatory=removable_nugatory(m),
        splitComponents=pieces,
        notes=notes,
    )


def classify_virtual(code: GaussCode) -> StructureReport:
    return classify(gauss_to_surface(code))
