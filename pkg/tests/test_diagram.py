"""Combinatorial maps: faces, genus, colouring, alternation, writhe, isomorphism."""
import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import FIGURE_EIGHT, HOPF, KINK, TREFOIL, TREFOIL_35, VIRTUAL_TREFOIL, code, gauss_codes, word_alternates
from surface_links.diagram import (
    CombMap,
    IsoFlags,
    canonical_form,
    checkerboard_coloring,
    faces,
    genus,
    is_alternating,
    is_colorable,
    isomorphic,
    unknot,
    writhe,
)
from surface_links.errors import MissingOrientationError, NotColorableError, StructuralError
from surface_links.gauss import gauss_to_surface


def cycles_of(perm: dict) -> int:
    seen, count = set(), 0
    for x in perm:
        if x in seen:
            continue
        count += 1
        while x not in seen:
            seen.add(x)
            x = perm[x]
    return count


def euler_genus(m: CombMap) -> int:
    """Genus from V - E + F with F counted as cycles of (rotate after edge), per piece."""
    perm = {d: (m.partner(d)[0], (m.partner(d)[1] + 1) % 4) for d in m.darts()}
    v = len(m.crossings)
    e = 2 * v
    f = cycles_of(perm)
    pieces = len(m.pieces())
    chi = v - e + f
    return (2 * pieces - chi) // 2


# -- worked examples ------------------------------------------------------------


@pytest.mark.parametrize(
    "text,g",
    [(TREFOIL, 0), (TREFOIL_35, 1), (VIRTUAL_TREFOIL, 1), (HOPF, 0), (KINK, 0), (FIGURE_EIGHT, 0)],
)
def test_genus_examples(text, g):
    # published values: trefoil planar, the 3.5-style code on the torus, virtual trefoil on the torus
    assert gauss_to_surface(code(text)).genus() == g


def test_trefoil_faces_and_colouring():
    m = gauss_to_surface(code(TREFOIL))
    fs = checkerboard_coloring(m)
    assert len(fs.faces) == 5
    assert sorted(len(f) for f in fs.faces) == [2, 2, 2, 3, 3]  # three bigons, two triangles
    assert sorted(fs.coloring) == [0, 0, 1, 1, 1]


def test_virtual_trefoil_is_not_alternating():
    # over/under pattern O O U U: the word itself does not alternate
    m = gauss_to_surface(code(VIRTUAL_TREFOIL))
    assert not is_alternating(m)
    assert not is_colorable(m)
    with pytest.raises(NotColorableError):
        checkerboard_coloring(m)


def test_writhe_examples():
    assert writhe(gauss_to_surface(code(TREFOIL))) == 3
    assert writhe(gauss_to_surface(code(FIGURE_EIGHT))) == 0
    assert writhe(gauss_to_surface(code(HOPF))) == 2


def test_unknot_and_loops():
    u = unknot(2)
    assert u.crossings == ()
    assert u.loops == 2
    assert len(faces(u).faces) == 4
    assert u.genus() == 0


def test_structural_errors():
    with pytest.raises(StructuralError):
        CombMap({(1, 0): (1, 1)})  # unmatched darts
    with pytest.raises(StructuralError):
        CombMap({(1, 0): (1, 1), (1, 1): (1, 2), (1, 3): (1, 2)})
    with pytest.raises(StructuralError):
        CombMap({(1, 0): (1, 0), (1, 1): (1, 2), (1, 3): (1, 2)})


def test_writhe_needs_orientation():
    m = gauss_to_surface(code(TREFOIL)).unoriented()
    with pytest.raises(MissingOrientationError):
        writhe(m)


def test_declared_genus_below_rotation_genus_rejected():
    m = gauss_to_surface(code(VIRTUAL_TREFOIL))
    with pytest.raises(StructuralError):
        CombMap(m._match, declared_genus=0)


# -- properties -------------------------------------------------------------------


@given(gauss_codes())
def test_genus_matches_euler_count(c):
    m = gauss_to_surface(c)
    assert m.genus() == euler_genus(m) == genus(m)
    assert m.genus() >= 0


@given(gauss_codes())
def test_alternating_matches_word(c):
    assert is_alternating(gauss_to_surface(c)) == word_alternates(c)


@given(gauss_codes())
def test_writhe_is_sum_of_code_signs(c):
    expect = sum(t.sign for comp in c.components for t in comp) // 2
    assert writhe(gauss_to_surface(c)) == expect


@given(gauss_codes())
def test_colouring_is_proper(c):
    m = gauss_to_surface(c)
    try:
        fs = checkerboard_coloring(m)
    except NotColorableError:
        return
    fo = fs.face_of()
    for ck in m.darts():
        nxt = (ck[0], (ck[1] + 1) % 4)
        assert fs.coloring[fo[ck]] != fs.coloring[fo[nxt]]


@given(gauss_codes())
def test_alternating_implies_colourable(c):
    m = gauss_to_surface(c)
    if is_alternating(m):
        assert is_colorable(m)


@given(gauss_codes(), st.integers(0, 2**32 - 1))
def test_canonical_form_ignores_labels(c, seed):
    m = gauss_to_surface(c)
    ids = list(m.crossings)
    perm = ids[:]
    random.Random(seed).shuffle(perm)
    relabelled = m.relabel({a: b + 100 for a, b in zip(ids, perm)})
    assert canonical_form(relabelled) == canonical_form(m)
    iso = isomorphic(m, relabelled)
    assert iso is not None
    # the witness carries darts to darts and respects edges
    for d in m.darts():
        assert relabelled.partner(iso.dart_map[d]) == iso.dart_map[m.partner(d)]


@given(gauss_codes())
def test_symmetries(c):
    m = gauss_to_surface(c)
    for op in ("mirror", "reflect", "reverse"):
        x = getattr(m, op)()
        assert x.genus() == m.genus()
        # twice is the identity up to a half-turn at each crossing
        assert canonical_form(getattr(x, op)()) == canonical_form(m)
        flags = IsoFlags(**{op: True})
        assert canonical_form(x, flags) == canonical_form(m, flags)
    assert writhe(m.mirror()) == -writhe(m)
    assert writhe(m.reflect()) == -writhe(m)
    assert writhe(m.reverse()) == writhe(m)
    assert is_alternating(m.mirror()) == is_alternating(m)


def test_mirror_trefoil_not_isomorphic_without_flag():
    m = gauss_to_surface(code(TREFOIL))
    assert isomorphic(m, m.mirror()) is None
    assert isomorphic(m, m.mirror(), IsoFlags(mirror=True)) is not None


@given(gauss_codes())
def test_json_round_trip(c):
    m = gauss_to_surface(c)
    again = CombMap.from_dict(json.loads(json.dumps(m.to_dict())))
    assert again == m
    assert canonical_form(again) == canonical_form(m)


@given(gauss_codes(max_crossings=5), st.data())
def test_crossing_change_keeps_map_shape(c, data):
    m = gauss_to_surface(c)
    sub = data.draw(st.sets(st.sampled_from(m.crossings)))
    x = m.crossing_changed(sub)
    assert x.genus() == m.genus()
    assert len(faces(x).faces) == len(faces(m).faces)
    assert writhe(x) == writhe(m) - 2 * sum(
        t.sign for comp in c.components for t in comp if t.label in sub and t.over
    )
