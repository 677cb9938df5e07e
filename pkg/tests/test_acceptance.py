"""Acceptance suite: one PASS/FAIL line per criterion, exact checks throughout.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are printed even
under output capture) or directly with ``python3 tests/test_acceptance.py``.
"""
import random
import sys
import time
from itertools import product

import pytest

from helpers import TREFOIL, TREFOIL_35, classical_goeritz, code, float_det, float_signature
from surface_links.census import base_map, chord_words, code_from, even_interlacing, knot_codes, rotation_symmetric, run_census
from surface_links.curves import homological_intersection, lk, random_pair, random_surface
from surface_links.diagram import canonical_form, is_alternating, writhe
from surface_links.exact import determinant
from surface_links.gauss import canonical_gauss, connect_sum, gauss_to_surface, virtual_trefoil
from surface_links.goeritz import COLORS, color_assignment, goeritz
from surface_links.moves import apply_flype, find_flypes, flype_equivalent, flype_orbit, form_key
from surface_links.structure import classify
from surface_links.virtual import gauss_of, surface_to_virtual

_LINES = []


@pytest.fixture
def say(capsys):
    def emit(ok, n, text):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {text}"
        _LINES.append(line)
        with capsys.disabled():
            print("\n" + line, flush=True)

    return emit


@pytest.fixture(scope="module")
def census6():
    t0 = time.perf_counter()
    r = run_census(6)
    return r, time.perf_counter() - t0


def test_1_lk_asymmetry(say):
    rng = random.Random(20240601)
    t0 = time.perf_counter()
    bad = 0
    for k in range(1000):
        m = random_surface(rng, k % 3)
        a, b = random_pair(rng, m)
        bad += lk(a, b) - lk(b, a) != homological_intersection(a, b)
    dt = time.perf_counter() - t0
    ok = bad == 0 and dt < 10
    say(ok, 1, f"{1000 - bad}/1000 pairs exact on genus 0-2, {dt:.1f} s (limit 10 s)")
    assert ok


def _planar_codes(nmax):
    for n in range(1, nmax + 1):
        for word, bits in product([w for w in chord_words(n) if even_interlacing(w)], product((0, 1), repeat=n)):
            if base_map(word, bits).genus() != 0:
                continue
            symmetric = rotation_symmetric(word)
            for over in product((0, 1), repeat=n):
                c = code_from(word, bits, over)
                yield (canonical_gauss(c) if symmetric else (word, bits, over)), c


def test_2_goeritz_oracle(say):
    t0 = time.perf_counter()
    done = {}
    bad = 0
    for k, c in _planar_codes(6):
        if k in done:
            continue
        m = gauss_to_surface(c)
        good = True
        for colour in COLORS:
            f = goeritz(m, colour)
            ref = classical_goeritz(m, color_assignment(m)[colour])
            good &= f.beta1 == ref.shape[0]
            good &= determinant(f.matrix) == float_det(ref)
            good &= f.sigma == float_signature(ref)
        done[k] = good
        bad += not good
    dt = time.perf_counter() - t0
    ok = bad == 0 and dt < 60
    say(ok, 2, f"{len(done) - bad}/{len(done)} genus-0 codes (<= 6 crossings) agree in beta1, det, signature; {dt:.1f} s (limit 60 s)")
    assert ok


def test_3_alternating_iff_definite(say, census6):
    r, dt = census6
    s = r["suites"]["alternating_definite"]
    genera = sorted({int(g) for lv in r["levels"] for g in lv["by_genus"]})
    ok = s["violations"] == 0 and dt < 300
    say(ok, 3, f"{s['checked'] - s['violations']}/{s['checked']} colourable codes agree, genera {genera}, {dt:.1f} s (limit 300 s)")
    assert ok


@pytest.mark.xfail(strict=True, reason="the identities as stated cannot hold for genus >= 1; see README")
def test_4_sigma_gap_and_slope_identity(say, census6):
    r, _ = census6
    s1, s2 = r["suites"]["sigma_gap"], r["suites"]["slope_identity"]
    c1, c2 = r["suites"]["sigma_gap_reversed_sign"], r["suites"]["slope_identity_reversed_sign"]
    ok = s1["violations"] == 0 and s2["violations"] == 0
    say(ok, 4, f"stated forms: sigma gap {s1['violations']}/{s1['checked']} violations, "
               f"slope identity {s2['violations']}/{s2['checked']} violations "
               f"(sign-corrected forms: {c1['violations']} and {c2['violations']} violations)")
    assert ok


def _tait(m):
    cols = color_assignment(m)
    data = tuple((goeritz(m, c).beta1, goeritz(m, c).sigma, goeritz(m, c).slope) for c in COLORS)
    return len(m.crossings), writhe(m), m.genus(), data, tuple(sorted(cols))


def test_5_tait_invariants_on_orbits(say):
    t0 = time.perf_counter()
    seen = set()
    orbits = members = bad = 0
    biggest = 0
    for c in knot_codes(6, 1, alternating=True):
        m = gauss_to_surface(c)
        if form_key(m) in seen:
            continue
        orb = flype_orbit(m)
        orbits += 1
        biggest = max(biggest, len(orb))
        ref = _tait(m)
        for f in orb.forms:
            seen.add(f)
            members += 1
            bad += _tait(orb.maps[f]) != ref
        bad += orb.truncated
    dt = time.perf_counter() - t0
    ok = bad == 0
    say(ok, 5, f"{orbits} flype orbits, {members} diagrams, largest orbit {biggest}, {bad} violations, {dt:.1f} s")
    assert ok


def _curated_pairs(count=12):
    """Weakly prime alternating diagrams and a non-isomorphic flype of each, relabelled."""
    pairs = []
    genera = {}
    for c in knot_codes(7, 5, alternating=True):
        m = gauss_to_surface(c)
        g = m.genus()
        if genera.get(g, 0) >= count // 3 + 1 or not classify(m).weaklyPrime:
            continue
        base = canonical_form(m)
        for s in find_flypes(m):
            out = apply_flype(m, s)
            if canonical_form(out) != base:
                shift = {x: 100 + 7 * x for x in out.crossings}
                pairs.append((c, m, out.relabel(shift)))
                genera[g] = genera.get(g, 0) + 1
                break
        if len(pairs) >= count:
            break
    return pairs


def test_6_flyping_spot_check(say):
    pairs = _curated_pairs()
    worst = 0.0
    found = 0
    for c, a, b in pairs:
        t0 = time.perf_counter()
        res = flype_equivalent(a, b, bound=10**4)
        worst = max(worst, time.perf_counter() - t0)
        found += res.equivalent and is_alternating(a) and is_alternating(b)
    ok = len(pairs) >= 10 and found == len(pairs) and worst < 60
    gs = sorted({a.genus() for _, a, _ in pairs})
    say(ok, 6, f"{found}/{len(pairs)} curated pairs (genera {gs}) flype-equivalent within 10^4, slowest {worst:.2f} s (limit 60 s)")
    assert ok


def test_7_round_trip(say):
    t0 = time.perf_counter()
    total = bad = 0
    for c in knot_codes(5):
        total += 1
        back = gauss_of(surface_to_virtual(gauss_to_surface(c)))
        bad += canonical_gauss(back) != canonical_gauss(c)
    dt = time.perf_counter() - t0
    ok = bad == 0
    say(ok, 7, f"{total - bad}/{total} codes (<= 5 crossings) survive surface -> virtual -> code, {dt:.1f} s")
    assert ok


def test_8_trefoil_and_its_virtual_cousin(say):
    g0 = gauss_to_surface(code(TREFOIL)).genus()
    g1 = gauss_to_surface(code(TREFOIL_35)).genus()
    ok = (g0, g1) == (0, 1) and canonical_gauss(code(TREFOIL)) != canonical_gauss(code(TREFOIL_35))
    say(ok, 8, f"trefoil genus {g0}, code {TREFOIL_35!r} genus {g1}")
    assert ok


def test_9_connect_sum_sites(say):
    v = virtual_trefoil()
    s1 = connect_sum(v, v, (0, 1), (0, 1))
    s2 = connect_sum(v, v, (0, 0), (0, 1))
    a, b = gauss_to_surface(s1), gauss_to_surface(s2)
    res = flype_equivalent(a, b, bound=10**4)
    ok = (a.genus(), b.genus()) == (2, 2) and canonical_form(a) != canonical_form(b)
    ok = ok and not res.equivalent and not res.truncated
    say(ok, 9, f"two genus-{a.genus()} sums, distinct canonical forms, different flype orbits "
               f"({res.reason or 'searched'}, truncated={res.truncated})")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
