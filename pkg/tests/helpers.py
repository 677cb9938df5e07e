"""Independent oracles and hypothesis strategies shared by the test modules."""
from __future__ import annotations

import random

import numpy as np
from hypothesis import strategies as st

from surface_links.diagram import CombMap, checkerboard_coloring
from surface_links.gauss import GaussCode, Token, parse_gauss

TREFOIL = "O1+ U2+ O3+ U1+ O2+ U3+"
# trefoil with one crossing pushed across the critical circle: a genus-one realisation
TREFOIL_35 = "O1- U2+ O3+ U1- O2+ U3+"
FIGURE_EIGHT = "O1+ U2+ O3- U4- O2+ U1+ O4- U3-"
VIRTUAL_TREFOIL = "O1+ O2+ U1+ U2+"
HOPF = "O1+ U2+ / U1+ O2+"
KINK = "O1+ U1+"


def random_code(rng: random.Random, n: int, components: int = 1, alternating: bool = False) -> GaussCode:
    """Uniformly shuffled double-occurrence word, cut into ``components`` non-empty pieces."""
    letters = list(range(1, n + 1)) * 2
    rng.shuffle(letters)
    cuts = sorted(rng.sample(range(1, 2 * n), components - 1)) if components > 1 else []
    pieces = [letters[i:j] for i, j in zip([0] + cuts, cuts + [2 * n])]
    over_first = {l: rng.random() < 0.5 for l in range(1, n + 1)}
    signs = {l: rng.choice((1, -1)) for l in range(1, n + 1)}
    comps = []
    seen = set()
    for piece in pieces:
        toks = []
        for l in piece:
            first = l not in seen
            seen.add(l)
            toks.append(Token(over_first[l] == first, l, signs[l]))
        comps.append(tuple(toks))
    code = GaussCode(tuple(comps))
    if alternating:
        # re-assign over/under along the single component so it alternates
        if components != 1:
            raise ValueError("alternating codes are drawn as knots")
        toks = code.components[0]
        where = {}
        for i, t in enumerate(toks):
            where.setdefault(t.label, []).append(i)
        if any(i % 2 == j % 2 for i, j in where.values()):
            return None  # both occurrences at equal parity cannot alternate
        pat = [i % 2 == 0 for i in range(len(toks))]
        code = GaussCode((tuple(Token(pat[i], t.label, t.sign) for i, t in enumerate(toks)),))
    return code


@st.composite
def gauss_codes(draw, max_crossings: int = 6, max_components: int = 2):
    n = draw(st.integers(1, max_crossings))
    k = draw(st.integers(1, min(max_components, 2 * n)))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_code(random.Random(seed), n, k)


@st.composite
def alternating_codes(draw, max_crossings: int = 6):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    while True:
        code = random_code(rng, rng.randint(1, max_crossings), 1, alternating=True)
        if code is not None:
            return code


def word_alternates(code: GaussCode) -> bool:
    """Alternation read straight off the code: O and U alternate around every component."""
    for comp in code.components:
        n = len(comp)
        if any(comp[i].over == comp[(i + 1) % n].over for i in range(n)):
            return False
    return True


def classical_goeritz(m: CombMap, colour_idx: int) -> np.ndarray:
    """Reduced weighted Laplacian on the faces of the other colour (planar maps).

    A crossing joins the two opposite-colour faces at it; its weight is +1
    when colour ``colour_idx`` holds the corner between slots 0 and 1.
    """
    fs = checkerboard_coloring(m)
    fo = fs.face_of()
    other = [i for i, c in enumerate(fs.coloring) if c != colour_idx]
    pos = {f: i for i, f in enumerate(other)}
    L = np.zeros((len(other), len(other)), dtype=np.int64)
    for c in m.crossings:
        holder = fs.coloring[fo[(c, 1)]]
        w = 1 if holder == colour_idx else -1
        # the other colour holds the corners at darts (c, 0) and (c, 2) or (c, 1) and (c, 3)
        if holder == colour_idx:
            f, g = fo[(c, 0)], fo[(c, 2)]
        else:
            f, g = fo[(c, 1)], fo[(c, 3)]
        i, j = pos[f], pos[g]
        L[i, i] += w
        L[j, j] += w
        L[i, j] -= w
        L[j, i] -= w
    return L[1:, 1:]


def float_signature(mat) -> int:
    a = np.asarray(mat, dtype=float)
    if a.size == 0:
        return 0
    ev = np.linalg.eigvalsh(a)
    tol = 1e-7 * max(1.0, np.abs(ev).max())
    return int((ev > tol).sum() - (ev < -tol).sum())


def float_det(mat) -> int:
    a = np.asarray(mat, dtype=float)
    if a.size == 0:
        return 1
    return int(round(np.linalg.det(a)))


def code(text: str) -> GaussCode:
    return parse_gauss(text)


_STRUCTURES: dict = {}


def _structures(kind: str) -> list:
    if kind not in _STRUCTURES:
        from surface_links.census import base_map, structures
        from surface_links.diagram import is_colorable

        keep = []
        for n in range(1, 6):
            for s in structures(n):
                m = base_map(*s)
                if kind == "planar" and m.genus() == 0:
                    keep.append(s)
                elif kind == "colourable" and is_colorable(m):
                    keep.append(s)
        _STRUCTURES[kind] = keep
    return _STRUCTURES[kind]


@st.composite
def _codes_on(draw, kind):
    from surface_links.census import code_from

    word, bits = draw(st.sampled_from(_structures(kind)))
    over = draw(st.lists(st.booleans(), min_size=len(bits), max_size=len(bits)))
    return code_from(word, bits, tuple(over))


def planar_codes():
    """Knot codes whose cellular surface is the sphere (up to 5 crossings)."""
    return _codes_on("planar")


def colourable_codes():
    """Knot codes on checkerboard-colourable maps of any genus (up to 5 crossings)."""
    return _codes_on("colourable")
