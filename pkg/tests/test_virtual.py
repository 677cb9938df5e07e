"""Projection to virtual diagrams, Gauss codes of virtual diagrams, lassos."""
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import HOPF, TREFOIL, TREFOIL_35, VIRTUAL_TREFOIL, code, gauss_codes
from surface_links.diagram import canonical_form
from surface_links.errors import StructuralError
from surface_links.gauss import canonical_gauss, gauss_to_surface
from surface_links.virtual import (
    Lasso,
    VirtualDiagram,
    find_lasso,
    gauss_of,
    is_lasso,
    lasso_exists_bruteforce,
    surface_to_virtual,
)


@pytest.mark.parametrize(
    "text,virtual",
    [(TREFOIL, 0), (HOPF, 0), (VIRTUAL_TREFOIL, 1), (TREFOIL_35, 4), ("O1+ O2+ O3+ U1+ U2+ U3+", 3)],
)
def test_projection_examples(text, virtual):
    c = code(text)
    v = surface_to_virtual(gauss_to_surface(c))
    assert v.map.genus() == 0
    assert len(v.virtual) == virtual
    assert canonical_gauss(gauss_of(v)) == canonical_gauss(c)


@given(gauss_codes(max_crossings=5, max_components=2), st.integers(0, 5))
def test_round_trip(c, seed):
    m = gauss_to_surface(c)
    v = surface_to_virtual(m, seed=seed)
    assert v.map.genus() == 0
    assert set(v.classical) == set(m.crossings)
    back = gauss_to_surface(gauss_of(v))
    assert canonical_form(back) == canonical_form(m)


@given(gauss_codes(max_crossings=5), st.data())
def test_root_choice_does_not_matter(c, data):
    m = gauss_to_surface(c)
    root = data.draw(st.sampled_from(m.crossings))
    v = surface_to_virtual(m, root=root)
    assert canonical_gauss(gauss_of(v)) == canonical_gauss(c)


@given(gauss_codes(max_crossings=4, max_components=1))
def test_lasso_found_iff_one_exists(c):
    v = surface_to_virtual(gauss_to_surface(c))
    lasso = find_lasso(v)
    assert (lasso is not None) == lasso_exists_bruteforce(v)
    if lasso is not None:
        assert is_lasso(v, lasso)


def test_projection_carries_a_lasso():
    # the spanning tree used for the projection is itself a lasso
    v = surface_to_virtual(gauss_to_surface(code(TREFOIL_35)))
    lasso = find_lasso(v)
    assert lasso is not None and is_lasso(v, lasso)


def test_is_lasso_rejects_bad_regions():
    v = surface_to_virtual(gauss_to_surface(code(TREFOIL)))
    assert not is_lasso(v, Lasso(frozenset(), frozenset(), ()))
    assert not is_lasso(v, Lasso(frozenset(v.classical), frozenset(), ()))


def test_virtual_diagram_json_round_trip():
    v = surface_to_virtual(gauss_to_surface(code(VIRTUAL_TREFOIL)))
    again = VirtualDiagram.from_dict(json.loads(json.dumps(v.to_dict())))
    assert again.virtual == v.virtual
    assert again.map == v.map


def test_virtual_diagram_must_be_planar():
    m = gauss_to_surface(code(VIRTUAL_TREFOIL))
    with pytest.raises(StructuralError):
        VirtualDiagram(m, frozenset())
    with pytest.raises(StructuralError):
        VirtualDiagram(gauss_to_surface(code(TREFOIL)), frozenset({99}))


def test_all_virtual_is_unknot_code():
    v = surface_to_virtual(gauss_to_surface(code(TREFOIL)))
    everything = VirtualDiagram(v.map, frozenset(v.map.crossings))
    assert str(gauss_of(everything)) == "()"
