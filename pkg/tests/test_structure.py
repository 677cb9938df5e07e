"""Connectivity, cellularity and (weak) primeness."""
from hypothesis import given

from helpers import HOPF, KINK, TREFOIL, VIRTUAL_TREFOIL, code, colourable_codes, gauss_codes
from surface_links.diagram import CombMap
from surface_links.gauss import connect_sum, gauss_to_surface
from surface_links.structure import classify, classify_virtual, two_cuts


def test_trefoil_is_prime():
    r = classify(gauss_to_surface(code(TREFOIL)))
    assert (r.connected, r.cellular, r.weaklyPrime, r.prime) == (True, True, True, True)
    assert r.removableNugatory == [] and r.splitComponents == 1


def test_trefoil_sum_is_not_weakly_prime():
    t = code(TREFOIL)
    r = classify(gauss_to_surface(connect_sum(t, t, (0, 0), (0, 0))))
    assert r.connected and not r.weaklyPrime and not r.prime


def test_disjoint_union_is_split():
    r = classify_virtual(code(TREFOIL + " / " + TREFOIL.replace("1", "4").replace("2", "5").replace("3", "6")))
    assert not r.connected and r.splitComponents == 2


def test_two_trivial_circles_on_sphere_count_as_prime():
    r = classify(CombMap({}, loops=2))
    assert not r.connected and r.prime and not r.weaklyPrime


def test_kink_crossing_is_removable():
    r = classify_virtual(code(KINK))
    assert r.removableNugatory == [1]
    # the only cut-off disk is the whole diagram
    assert r.weaklyPrime


def test_virtual_trefoil_is_prime():
    r = classify_virtual(code(VIRTUAL_TREFOIL))
    assert r.connected and r.prime and r.weaklyPrime
    assert gauss_to_surface(code(VIRTUAL_TREFOIL)).genus() == 1


def test_sum_of_virtual_trefoils_is_weakly_prime_but_not_prime():
    # the cutting circle separates two genus-one halves: neither is a disk
    v = code(VIRTUAL_TREFOIL)
    s = connect_sum(v, v, (0, 1), (0, 1))
    m = gauss_to_surface(s)
    assert m.genus() == 2
    r = classify(m)
    assert r.weaklyPrime and not r.prime
    assert any("essential" in n for n in r.notes)


def test_stabilized_map_is_flagged():
    m = gauss_to_surface(code(TREFOIL))
    st = CombMap(m._match, m.loops, m.incoming, declared_genus=1)
    r = classify(st)
    assert not r.cellular and r.notes


def test_hopf_is_prime():
    r = classify_virtual(code(HOPF))
    assert r.connected and r.prime


@given(gauss_codes(max_crossings=6, max_components=2))
def test_prime_implies_weakly_prime_when_connected(c):
    r = classify_virtual(c)
    if r.connected and r.prime:
        assert r.weaklyPrime


@given(gauss_codes(max_crossings=6, max_components=3))
def test_connected_matches_graph(c):
    m = gauss_to_surface(c)
    # union-find oracle over the 4-valent graph plus free loops
    parent = {x: x for x in m.crossings}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for d, e in m.edges():
        parent[find(d[0])] = find(e[0])
    roots = {find(x) for x in m.crossings}
    assert classify(m).splitComponents == len(roots) + m.loops


@given(colourable_codes())
def test_cuts_split_genus_additively_or_not_at_all(c):
    m = gauss_to_surface(c)
    for side, other, gs, go in two_cuts(m):
        assert side and other and not (side & other)
        assert gs + go in (m.genus(), m.genus() - 1)


@given(colourable_codes())
def test_removable_nugatory_means_not_weakly_prime(c):
    m = gauss_to_surface(c)
    r = classify(m)
    if r.removableNugatory and len(m.crossings) > 1:
        assert not r.weaklyPrime
