import pytest

from gkmcalc.builtins import (BUILTIN_GKM, BUILTIN_GRAPHS, WeightedProjectiveSpec, builtin,
                              make_complete_gkm, make_fig3_complex,
                              make_weighted_projective_line)
from gkmcalc.gkm import check_divisive, rtilde, validate_gkm
from gkmcalc.graphs import OrientedEdge, filter_complex


def test_fig3_structure():
    gc = make_fig3_complex(1, 1, 1, 1)
    assert gc.complex.names == ["O1", "O2", "O3"]
    assert len(gc.complex.edges) == 5
    assert ("v2", "v3") not in gc.complex.edges
    assert all(gc.alpha(e).is_integral() for e in gc.oriented_edges())


def test_fig3_axial_values_and_weights():
    gc = make_fig3_complex(8, 4, 2, 2)
    e = OrientedEdge("v1", "v2")
    # (y1 + y4) - (c2/c1)(y1 + y3) with r = c1
    assert gc.alpha(e).to_strings() == ["1/2", "0", "-1/2", "1"]
    assert gc.r(e) == 4
    assert gc.alpha(OrientedEdge("v1", "v0")).to_strings() == ["-1", "1", "-2", "0"]


def test_fig3_divisiveness():
    good = make_fig3_complex(8, 4, 2, 2)
    assert check_divisive(good, filter_complex(good.complex, "v0"))
    bad = make_fig3_complex(2, 3, 1, 1)
    assert validate_gkm(bad).ok
    assert not check_divisive(bad, filter_complex(bad.complex, "v0"))


def test_weighted_projective_line():
    wp = make_weighted_projective_line(1, 1)
    assert all(gc_e.is_integral() for gc_e in wp.axial.values.values())
    wp12 = make_weighted_projective_line(1, 2)
    assert sorted(rtilde(wp12, e) for e in wp12.oriented_edges()) == [1, 2]
    wp33 = make_weighted_projective_line(3, 3)
    assert {e: wp33.alpha(e) for e in wp33.oriented_edges()} == \
        {e: wp.alpha(e) for e in wp.oriented_edges()}
    with pytest.raises(ValueError):
        make_weighted_projective_line(0, 1)


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_complete_graphs(k):
    gc = make_complete_gkm(k)
    f = filter_complex(gc.complex, "v0")
    assert f.degrees == tuple(range(k))
    assert sum(f.degrees) == k * (k - 1) // 2
    assert validate_gkm(gc).ok and check_divisive(gc, f)


def test_weighted_projective_data_validation():
    with pytest.raises(ValueError):
        WeightedProjectiveSpec((1, 0), 1, ((0,), (1,)))
    with pytest.raises(ValueError):
        WeightedProjectiveSpec((1, 1), 1, ((1,), (1,)))


def test_lookup():
    for name in BUILTIN_GKM:
        assert validate_gkm(builtin(name)).ok
    for name in BUILTIN_GRAPHS:
        assert builtin(name).members
    assert builtin("complete", (4,)).torus_rank == 4
    with pytest.raises(KeyError):
        builtin("nope")
    with pytest.raises(ValueError):
        builtin("fig1", (1,))
