"""Census of knot diagrams given by signed Gauss codes.

A one-component code with ``n`` crossings is a chord diagram on ``2n``
points together with, per crossing, a rotation bit (the cyclic order of the
four half-edges) and an over/under choice.  Chord diagrams are taken up to
rotation; codes on a chord diagram with rotational symmetry are deduplicated
by ``canonical_gauss``.

Changing crossings leaves the cellular map and its faces alone and flips the
Goeritz type at the changed crossings, so definiteness for all ``2^n``
over/under choices of one map comes from a single spine basis per colour.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from itertools import product
from typing import Iterator, Optional

from . import exact
from .diagram import CombMap, checkerboard_coloring, is_colorable
from .gauss import GaussCode, Token, canonical_gauss, gauss_to_surface
from .goeritz import _eta_raw, spine


def _canon_rotation(word: tuple) -> tuple:
    best = None
    n = len(word)
    for r in range(n):
        lab: dict = {}
        enc = tuple(lab.setdefault(x, len(lab)) for x in word[r:] + word[:r])
        if best is None or enc < best:
            best = enc
    return best


@lru_cache(maxsize=None)
def chord_words(n: int) -> tuple:
    """Double-occurrence words on ``n`` letters up to rotation, labels in first-seen order."""
    if n == 0:
        return ((),)
    out = set()

    def rec(w, nxt, open_):
        if len(w) == 2 * n:
            out.add(_canon_rotation(tuple(w)))
            return
        if nxt < n:
            rec(w + [nxt], nxt + 1, open_ + [nxt])
        for lab in open_:
            rec(w + [lab], nxt, [x for x in open_ if x != lab])

    rec([], 0, [])
    return tuple(sorted(out))


def rotation_symmetric(word: tuple) -> bool:
    """Whether a nontrivial rotation of ``word`` equals it up to relabelling.

    Codes on a word without such a symmetry are pairwise distinct for
    distinct ``(bits, over_first)``, so only symmetric words need
    deduplication.
    """
    n = len(word)
    ref = _relabel_first_seen(word)
    return any(_relabel_first_seen(word[r:] + word[:r]) == ref for r in range(1, n))


def _relabel_first_seen(word: tuple) -> tuple:
    lab: dict = {}
    return tuple(lab.setdefault(x, len(lab)) for x in word)


def code_from(word: tuple, bits: tuple, over_first: tuple) -> GaussCode:
    """Code on ``word``: crossing ``l`` has rotation bit ``bits[l]`` and its first pass over iff ``over_first[l]``.

    With the first pass ``A`` over, the crossing is positive exactly when
    the half-edges run (A in, B in, A out, B out) counter-clockwise.
    """
    seen = set()
    toks = []
    for lab in word:
        first = lab not in seen
        seen.add(lab)
        over = over_first[lab] if first else not over_first[lab]
        sign = 1 if bool(bits[lab]) == bool(over_first[lab]) else -1
        toks.append(Token(bool(over), lab + 1, sign))
    return GaussCode((tuple(toks),))


def is_alternating_word(word: tuple, over_first: tuple) -> bool:
    seen = set()
    pattern = []
    for lab in word:
        first = lab not in seen
        seen.add(lab)
        pattern.append(over_first[lab] if first else not over_first[lab])
    return all(pattern[i] != pattern[(i + 1) % len(pattern)] for i in range(len(pattern)))


def alternating_patterns(word: tuple) -> list:
    """The over-first choices that make ``word`` alternate (none, or exactly two)."""
    pos: dict = {}
    for i, lab in enumerate(word):
        pos.setdefault(lab, []).append(i)
    if any(i % 2 == j % 2 for i, j in pos.values()):
        return []
    n = len(pos)
    first = tuple(int(pos[l][0] % 2 == 0) for l in range(n))
    return [first, tuple(1 - x for x in first)]


def knot_codes(nmax: int, nmin: int = 0, alternating: bool = False) -> Iterator[GaussCode]:
    """Every one-component code with ``nmin..nmax`` crossings, once per class.

    Ordered by crossing count, then canonical form.
    """
    for n in range(nmin, nmax + 1):
        if n == 0:
            yield GaussCode(((),))
            continue
        batch = {}
        for word in chord_words(n):
            overs = alternating_patterns(word) if alternating else list(product((1, 0), repeat=n))
            for bits in product((0, 1), repeat=n):
                for over in overs:
                    code = code_from(word, bits, over)
                    batch.setdefault(canonical_gauss(code), code)
        for key in sorted(batch):
            yield batch[key]


def even_interlacing(word: tuple) -> bool:
    """Gauss's parity condition: an even number of letters between the two copies of each letter.

    Necessary for a one-component code to live on the sphere.
    """
    pos: dict = {}
    for i, lab in enumerate(word):
        pos.setdefault(lab, []).append(i)
    return all((j - i - 1) % 2 == 0 for i, j in pos.values())


def structures(n: int) -> Iterator[tuple]:
    """``(word, bits)`` pairs: the cellular maps with ``n`` crossings, over/under aside."""
    for word in chord_words(n):
        for bits in product((0, 1), repeat=n):
            yield word, bits


def base_map(word: tuple, bits: tuple) -> CombMap:
    return gauss_to_surface(code_from(word, bits, (1,) * len(bits)))


def definiteness_scan(word: tuple, bits: tuple) -> Optional[list]:
    """For each over/under choice: ``(over_first, alternating, definite-opposite)``.

    ``None`` when the map is not checkerboard colourable.
    """
    n = len(bits)
    m = base_map(word, bits)
    if not is_colorable(m):
        return None
    fs = checkerboard_coloring(m)
    face_of = fs.face_of()
    per_class = []
    for idx in (0, 1):
        sp = spine(m, idx)
        basis = [b.as_dict() for b in sp.basis]
        k = len(basis)
        # crossing -> outer product of its column of the basis matrix
        outer = {}
        for c in m.crossings:
            col = [b.get(c, 0) for b in basis]
            if any(col):
                outer[c] = [[col[i] * col[j] for j in range(k)] for i in range(k)]
        eta0 = {c: _eta_raw(face_of, fs.coloring, idx, c) for c in m.crossings}
        per_class.append((k, outer, eta0))
    out = []
    for over in product((1, 0), repeat=n):
        kinds = []
        for k, outer, eta0 in per_class:
            g = [[0] * k for _ in range(k)]
            for c, op in outer.items():
                # crossing label c is letter c - 1; a changed crossing flips its type
                e = eta0[c] if over[c - 1] else -eta0[c]
                for i in range(k):
                    row = op[i]
                    gi = g[i]
                    for j in range(k):
                        gi[j] += e * row[j]
            kinds.append(exact.definiteness(g))
        pos = ("positive", "zero")
        neg = ("negative", "zero")
        by_def = (kinds[0] in pos and kinds[1] in neg) or (kinds[0] in neg and kinds[1] in pos)
        out.append((over, is_alternating_word(word, over), by_def))
    return out


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("SURFACE_LINKS_THREADS", "1")))
    except ValueError:
        return 1


def parallel_map(fn, items, chunksize: int = 64) -> list:
    """``map`` over a process pool capped by SURFACE_LINKS_THREADS; order kept."""
    items = list(items)
    workers = thread_count()
    if workers <= 1 or len(items) < 2 * chunksize:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items, chunksize=chunksize))


# -- census run ----------------------------------------------------------------

SUITES = (
    "alternating_definite",
    "sigma_gap",
    "slope_identity",
    "sigma_gap_reversed_sign",
    "slope_identity_reversed_sign",
    "slope_boundary_meet",
)
# suites that must hold with zero violations; the other two are reported only
ASSERTED = (
    "alternating_definite",
    "sigma_gap_reversed_sign",
    "slope_identity_reversed_sign",
    "slope_boundary_meet",
)


def _survey(item: tuple) -> tuple:
    """Per structure: ``(genus, colourable, codes)``, codes keyed by ``canonical_gauss``."""
    from .goeritz import report

    word, bits = item
    m = base_map(word, bits)
    scan = definiteness_scan(word, bits)
    if scan is None:
        return m.genus(), False, []
    codes = {}
    for over, alt, by_def in scan:
        code = code_from(word, bits, over)
        ck = canonical_gauss(code)
        if ck in codes:
            continue
        ident = None
        if alt:
            ident = report(gauss_to_surface(code))["identities"]
        codes[ck] = (alt, by_def, ident)
    return m.genus(), True, sorted(codes.items())


def run_census(nmax: int, progress=None) -> dict:
    """Knot diagrams with at most ``nmax`` crossings, and the identity suites on them.

    A structure is a chord word up to rotation plus rotation bits; codes are
    enumerated on the colourable ones (no other map carries an alternating
    code) and deduplicated by ``canonical_gauss``, which for a knot agrees
    with ``canonical_form`` of its map.  Order: crossing count, then
    canonical form.
    """
    levels = []
    totals = {s: {"checked": 0, "violations": 0} for s in SUITES}
    failures = []
    for n in range(0, nmax + 1):
        if n == 0:
            levels.append({"crossings": 0, "structures": 1, "colorable": 1, "codes": 1,
                           "alternating": 1, "by_genus": {"0": 1}})
            continue
        results = parallel_map(_survey, list(structures(n)))
        by_genus: dict = {}
        colorable = 0
        merged = {}
        for g, col, entries in results:
            by_genus[str(g)] = by_genus.get(str(g), 0) + 1
            colorable += col
            for ck, val in entries:
                merged.setdefault(ck, val)
        alternating = 0
        for ck in sorted(merged):
            alt, by_def, ident = merged[ck]
            alternating += alt
            totals["alternating_definite"]["checked"] += 1
            if alt != by_def:
                totals["alternating_definite"]["violations"] += 1
                failures.append({"suite": "alternating_definite", "code": ck.decode()})
            if ident is None:
                continue
            for s in SUITES[1:]:
                totals[s]["checked"] += 1
                if not ident[s]:
                    totals[s]["violations"] += 1
                    if s in ASSERTED:
                        failures.append({"suite": s, "code": ck.decode()})
        levels.append({
            "crossings": n,
            "structures": len(results),
            "colorable": colorable,
            "codes": len(merged),
            "alternating": alternating,
            "by_genus": dict(sorted(by_genus.items(), key=lambda kv: int(kv[0]))),
        })
        if progress:
            progress(levels[-1])
    ok = all(totals[s]["violations"] == 0 for s in ASSERTED)
    return {
        "max_crossings": nmax,
        "levels": levels,
        "suites": {s: dict(totals[s], asserted=s in ASSERTED) for s in SUITES},
        "failures": failures,
        "ok": ok,
    }
