import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gkmcalc.algebra import Cohomology, IntPoly, KTheory, make_theory
from gkmcalc.algebra.intlinalg import lattice_equal, smith_invariants
from gkmcalc.builtins import make_complete_gkm, make_fig3_complex, make_weighted_projective_line
from gkmcalc.cohomology import (BasisClass, CohomologyClass, build_system, compute_basis, decompose,
                                graded_rank, is_member, member_lattice, monomials,
                                reconstruct, span_lattice, system_from_characters)
from gkmcalc.errors import (CapExceeded, CoprimalityFailure, NotAMember, NotDivisive,
                            NotInSpan)
from gkmcalc.graphs import filter_complex


def system(gc, theory="H", **kw):
    return build_system(gc, filter_complex(gc.complex, gc.vertices[0]), theory, **kw)


def edge_system(theory="H"):
    """Single edge with divisor y1 - y2 (K: 1 - z1*z2^-1)."""
    return system_from_characters(make_theory(theory, 2), ["v0", "v1"], [[], [(0, (1, -1))]])


H2 = Cohomology(2)
y1, y2 = H2.variable(0), H2.variable(1)


def test_system_shapes():
    sys_ = system(make_fig3_complex(8, 4, 2, 2))
    assert len(sys_) == 4
    assert sorted(sys_.pairs()) == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]
    assert [len(r) for r in system(make_complete_gkm(3)).divisors] == [0, 1, 2]
    assert len(system(make_weighted_projective_line(1, 1)).divisors[1]) == 1


def test_build_system_rejects_non_divisive():
    with pytest.raises(NotDivisive):
        system(make_fig3_complex(2, 3, 1, 1))
    assert len(system(make_fig3_complex(2, 3, 1, 1), rational=True)) == 4


def test_coprimality_failure():
    with pytest.raises(CoprimalityFailure):
        system_from_characters(H2, ["a", "b", "c"], [[], [(0, (1, 0))], [(0, (1, 1)), (1, (2, 2))]])


def test_membership_examples():
    sys_ = edge_system()
    assert is_member(sys_, sys_.constant_class(7))
    assert is_member(sys_, sys_.make_class([y1, y2]))
    res = is_member(sys_, sys_.make_class([H2.zero(), H2.one()]))
    assert not res
    assert res.witness[:2] == ("v1", "v0") and res.witness[2] == H2.one()


def test_edge_basis_and_decomposition():
    sys_ = edge_system()
    basis = compute_basis(sys_)
    assert basis[0].cls == sys_.constant_class(1)
    assert basis[1].cls == sys_.make_class([H2.zero(), y1 - y2])
    p = decompose(sys_, basis, sys_.make_class([y1, y2]))
    assert p == [y1, H2.constant(-1)]


def test_k3_top_class():
    sys_ = system(make_complete_gkm(3))
    basis = compute_basis(sys_)
    H3 = Cohomology(3)
    y = [H3.variable(i) for i in range(3)]
    top = basis[2].cls["v2"]
    assert top in ((y[0] - y[2]) * (y[1] - y[2]), -((y[0] - y[2]) * (y[1] - y[2])))
    assert [sys_.degrees[b.j] for b in basis] == [0, 1, 2]


def test_decompose_rejects_non_members():
    sys_ = edge_system()
    with pytest.raises(NotAMember):
        decompose(sys_, compute_basis(sys_), sys_.make_class([H2.zero(), H2.one()]))


def test_not_in_span_for_bad_basis():
    sys_ = edge_system()
    basis = compute_basis(sys_)
    # doubling the top class breaks spanning over Z
    bad = [basis[0], BasisClass(1, basis[1].cls * 2)]
    with pytest.raises(NotInSpan):
        decompose(sys_, bad, basis[1].cls)


def test_cap_exceeded():
    sys_ = system(make_complete_gkm(4))
    with pytest.raises(CapExceeded):
        compute_basis(sys_, degree_cap=2)


def test_graded_rank_examples():
    sys_ = edge_system()
    assert graded_rank(sys_, compute_basis(sys_), 2, cross_check=True) == [1, 3, 5]
    pt = system_from_characters(Cohomology(3), ["p"], [[]])
    assert graded_rank(pt, None, 3) == [len(monomials(3, d)) for d in range(4)]
    k3 = system(make_complete_gkm(3))
    assert graded_rank(k3, compute_basis(k3), 3, cross_check=True) == [1, 4, 10, 19]
    with pytest.raises(ValueError):
        graded_rank(edge_system("K"), None, 1)


BUILTIN_CASES = [
    ("fig3-8422", lambda: make_fig3_complex(8, 4, 2, 2)),
    ("fig3-1111", lambda: make_fig3_complex(1, 1, 1, 1)),
    ("K2", lambda: make_complete_gkm(2)),
    ("K3", lambda: make_complete_gkm(3)),
    ("K4", lambda: make_complete_gkm(4)),
    ("wp-4-2", lambda: make_weighted_projective_line(4, 2)),
]


@pytest.mark.parametrize("theory", ["H", "K"])
@pytest.mark.parametrize("name,make", BUILTIN_CASES)
def test_basis_properties(name, make, theory):
    sys_ = system(make(), theory)
    basis = compute_basis(sys_)
    assert [b.j for b in basis] == list(range(len(sys_)))
    for b in basis:
        assert is_member(sys_, b.cls)
        vals = [b.cls[v] for v in sys_.ordering]
        assert all(x.is_zero() for x in vals[:b.j])
        assert vals[b.j] == sys_.top(b.j)
    for a in basis:
        p = decompose(sys_, basis, a.cls)
        assert p == [sys_.theory.one() if i == a.j else sys_.theory.zero()
                     for i in range(len(basis))]


def test_basis_is_deterministic():
    a = compute_basis(system(make_fig3_complex(8, 4, 2, 2), "K"))
    b = compute_basis(system(make_fig3_complex(8, 4, 2, 2), "K"))
    assert [x.cls for x in a] == [x.cls for x in b]


def _random_element(theory, rng, deg=2):
    n = theory.rank
    if isinstance(theory, KTheory):
        terms = {tuple(rng.randint(-1, 1) for _ in range(n)): rng.randint(-3, 3)
                 for _ in range(3)}
    else:
        terms = {tuple(rng.choice(monomials(n, rng.randint(0, deg)))): rng.randint(-3, 3)
                 for _ in range(3)}
    return theory.from_terms(terms)


@pytest.mark.parametrize("theory", ["H", "K"])
@pytest.mark.parametrize("name,make", BUILTIN_CASES[:4])
def test_round_trip_random_members(name, make, theory):
    rng = random.Random(7)
    sys_ = system(make(), theory)
    basis = compute_basis(sys_)
    for _ in range(10):
        coeffs = [_random_element(sys_.theory, rng, 1) for _ in basis]
        x = reconstruct(sys_, basis, coeffs)
        assert is_member(sys_, x)
        assert decompose(sys_, basis, x) == coeffs


def test_mu_projects_to_h():
    for gc in (make_complete_gkm(2), make_complete_gkm(3), make_fig3_complex(1, 1, 1, 1),
               make_fig3_complex(8, 4, 2, 2)):
        mu_basis = compute_basis(system(gc, "MU", truncation=3))
        h_basis = compute_basis(system(gc, "H"))
        for m, h in zip(mu_basis, h_basis):
            for v in gc.vertices:
                assert m.cls[v].specialize({}).to_u_poly() == \
                    IntPoly(gc.torus_rank, h.cls[v].terms)


def test_rational_basis_for_non_divisive():
    sys_ = system(make_fig3_complex(2, 3, 1, 1), rational=True)
    basis = compute_basis(sys_)
    assert all(is_member(sys_, b.cls) for b in basis)
    prod = basis[1].cls * basis[1].cls
    assert reconstruct(sys_, basis, decompose(sys_, basis, prod)) == prod


@pytest.mark.parametrize("degree", range(0, 4))
def test_member_lattice_equals_span(degree):
    sys_ = system(make_complete_gkm(3))
    basis = compute_basis(sys_)
    for cumulative in (False, True):
        members, coords = member_lattice(sys_, degree, cumulative)
        span, coords2 = span_lattice(sys_, basis, degree, cumulative)
        assert coords == coords2
        assert lattice_equal(members, span, len(coords))
        assert len(smith_invariants(members)) == len(members)


def test_class_arithmetic():
    sys_ = edge_system()
    x = sys_.make_class([y1, y2])
    assert (x + x) == x * 2 == 2 * x
    assert (x - x).is_zero()
    assert -x == x * -1
    assert x.render() == ["v0: y1", "v1: y2"]
    with pytest.raises(ValueError):
        sys_.make_class([y1])
    with pytest.raises(ValueError):
        x + CohomologyClass(H2, {"other": y1})


# subring closure over random members


@st.composite
def member_pairs(draw, sys_, basis):
    def one():
        coeffs = []
        for _ in basis:
            terms = draw(st.dictionaries(
                st.tuples(*[st.integers(0, 1)] * sys_.theory.rank), st.integers(-3, 3),
                max_size=2))
            coeffs.append(sys_.theory.from_terms(terms))
        return reconstruct(sys_, basis, coeffs)
    return one(), one()


_K3 = system(make_complete_gkm(3))
_K3_BASIS = compute_basis(_K3)


@given(member_pairs(_K3, _K3_BASIS))
def test_closure_property(pair):
    x, y = pair
    assert is_member(_K3, x + y)
    assert is_member(_K3, x * y)
