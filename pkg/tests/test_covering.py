import pytest

from nctangent.algebras import (
    direct_sum,
    make_function_algebra,
    make_matrix_algebra,
)
from nctangent.covering import (
    Covering,
    IntersectionNonzero,
    NotAnIdeal,
    check_covering,
    ideal_from_declaration,
    ideal_from_generators,
    ideal_span,
    overlap_maps,
    project,
    section,
    verify_covering,
    verify_ideal,
)
from nctangent.scalars import Subspace, vec_is_zero


def block_model():
    A = direct_sum(make_matrix_algebra(2), make_matrix_algebra(3))
    block1 = ideal_from_declaration(A, {"type": "blocks", "kill": ["1"]})
    block2 = ideal_from_declaration(A, {"type": "blocks", "kill": ["2"]})
    return A, block1, block2


def test_block_ideals():
    A, block1, block2 = block_model()
    assert block1.dim == 4
    assert block2.dim == 9
    verify_ideal(A, block1)
    verify_ideal(A, block2)


def test_not_an_ideal_witness():
    A = make_matrix_algebra(2)
    # the span of E_12 alone is not an ideal
    sub = Subspace(4, [A.basis_vector(1)])
    with pytest.raises(NotAnIdeal) as err:
        verify_ideal(A, sub)
    assert err.value.witness is not None
    with pytest.raises(NotAnIdeal):
        ideal_span(A, [A.basis_vector(1)])


def test_ideal_from_generators_closure():
    A = make_matrix_algebra(2)
    # any nonzero generator closes up to all of M_2 (simple algebra)
    sub = ideal_from_generators(A, [A.basis_vector(1)])
    assert sub.dim == 4


def test_block_covering():
    A, block1, block2 = block_model()
    # killing block 2 leaves the M_2 chart
    cov = check_covering(A, [block2, block1])
    assert cov.size == 2
    assert cov.chart(0).dim == 4
    assert cov.chart(1).dim == 9
    assert cov.overlap_algebra(0, 1).dim == 0
    assert verify_covering(cov) == []


def test_block_chart_is_matrix_algebra():
    A, block1, block2 = block_model()
    cov = Covering(A, [block2, block1])
    M2 = make_matrix_algebra(2)
    chart = cov.chart(0)
    # the chart reproduces the 2x2 matrix product table exactly
    assert chart.table == M2.table
    assert chart.involution.entries == M2.involution.entries


def test_intersection_nonzero():
    A, block1, block2 = block_model()
    with pytest.raises(IntersectionNonzero) as err:
        Covering(A, [block1, block1])
    assert not vec_is_zero(err.value.witness)


def test_function_covering_overlap():
    A = make_function_algebra(4)
    i1 = ideal_from_declaration(A, {"type": "vanishing_on", "points": [1, 2, 3]})
    i2 = ideal_from_declaration(A, {"type": "vanishing_on", "points": [3, 4]})
    assert i1.dim == 1 and i2.dim == 2
    cov = Covering(A, [i1, i2])
    assert cov.chart(0).dim == 3
    assert cov.chart(1).dim == 2
    # the overlap is the single common point
    alg, joint, via1, via2 = overlap_maps(cov, 0, 1)
    assert alg.dim == 1
    assert (via1 @ cov.projection(0)).entries == joint.entries
    assert (via2 @ cov.projection(1)).entries == joint.entries
    assert verify_covering(cov) == []


def test_projection_section_roundtrip():
    A = make_function_algebra(4)
    i1 = ideal_from_declaration(A, {"type": "vanishing_on", "points": [1, 2, 3]})
    cov = Covering(A, [i1, Subspace(4, [])])
    for x in range(cov.chart(0).dim):
        e = cov.chart(0).basis_vector(x)
        assert project(cov, 0, section(cov, 0, e)) == e
    # trivial ideal gives a full-size chart
    assert cov.chart(1).dim == 4
    assert cov.overlap_algebra(0, 0).dim == cov.chart(0).dim


def test_single_zero_ideal_is_identity_covering():
    A = make_matrix_algebra(2)
    cov = Covering(A, [Subspace(A.dim, [])])
    assert cov.chart(0).dim == A.dim
    assert verify_covering(cov) == []
    u = A.basis_vector(2)
    assert cov.lift(0, cov.project(0, u)) == u


def test_index_errors():
    A = make_matrix_algebra(2)
    cov = Covering(A, [Subspace(A.dim, [])])
    with pytest.raises(IndexError):
        cov.chart(1)
    with pytest.raises(IndexError):
        cov.overlap_algebra(0, 3)


def test_declaration_errors():
    A = make_matrix_algebra(2)
    with pytest.raises(Exception):
        ideal_from_declaration(A, {"type": "vanishing_on", "points": [1]})
    with pytest.raises(Exception):
        ideal_from_declaration(A, {"type": "nope"})
    F = make_function_algebra(3)
    with pytest.raises(Exception):
        ideal_from_declaration(F, {"type": "vanishing_on", "points": [9]})
