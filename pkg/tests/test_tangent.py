from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy as sp

from grobstrata import TVar, row_reduce
from grobstrata.oracle import is_reduced_groebner
from grobstrata.tangent import kernel_basis
from support import FIXTURES, family_at, full_point, pipeline, stratum_point

DELTA1_ELIMINABLE = {
    ((1, 0, 1), (0, 0, 0)), ((1, 0, 1), (0, 1, 0)), ((1, 0, 1), (0, 2, 0)),
    ((0, 0, 2), (0, 0, 0)), ((0, 0, 2), (0, 1, 0)), ((0, 0, 2), (1, 0, 0)),
    ((2, 1, 0), (0, 0, 0)), ((2, 1, 0), (0, 1, 0)), ((2, 1, 0), (0, 2, 0)),
    ((2, 1, 0), (0, 3, 0)), ((2, 1, 0), (1, 0, 0)), ((3, 0, 0), (0, 0, 0)),
    ((3, 0, 0), (0, 0, 1)), ((3, 0, 0), (0, 1, 0)), ((3, 0, 0), (0, 1, 1)),
    ((3, 0, 0), (0, 2, 0)), ((3, 0, 0), (0, 2, 1)), ((3, 0, 0), (0, 3, 0)),
    ((3, 0, 0), (1, 0, 0)), ((3, 0, 0), (1, 1, 0)), ((3, 0, 0), (1, 2, 0)),
}


def test_row_reduce_trivial():
    r = row_reduce([{0: 1}, {1: 1}, {2: 1}], 3)
    assert r.rank == 3 and list(r.pivots) == [0, 1, 2]
    z = row_reduce([], 4)
    assert z.rank == 0
    assert len(kernel_basis(z, 4)) == 4


@pytest.mark.parametrize("name", list(FIXTURES))
def test_matrix_shape(name):
    _, tr, _ = pipeline(name)
    for row in tr.matrix.rows:
        assert 1 <= len(row) <= 2
        assert all(v in (1, -1) for v in row.values())
    assert tr.rank + tr.embedding_dim == tr.num_vars


@pytest.mark.parametrize("name", list(FIXTURES))
def test_dense_null_space(name):
    _, tr, _ = pipeline(name)
    dense = sp.Matrix(tr.matrix.dense()) if tr.matrix.rows else sp.zeros(1, tr.num_vars)
    assert len(dense.nullspace()) == tr.embedding_dim
    for vec in tr.kernel:
        col = {v: i for i, v in enumerate(tr.matrix.columns)}
        x = sp.Matrix([sp.Rational(str(vec.get(v, 0))) for v in tr.matrix.columns])
        assert dense * x == sp.zeros(dense.rows, 1)
        assert len(col) == tr.num_vars


def test_delta1_tangent():
    _, tr, ep = pipeline("delta1")
    assert tr.num_vars == 32 and tr.rank == 21 and len(tr.matrix.rows) == 21
    assert {(v.alpha, v.beta) for v in tr.eliminable} == DELTA1_ELIMINABLE
    assert ep.embedding_dim == 11


@pytest.mark.parametrize("name", list(FIXTURES))
def test_residual_generators_have_no_low_terms(name):
    _, _, ep = pipeline(name)
    res = set(ep.residual_vars)
    for g in ep.residual_gens:
        assert g.constant_term() == 0
        assert not g.linear_component()
        assert g.variables() <= res
    for p in ep.substitutions.values():
        assert p.variables() <= res


@pytest.mark.parametrize("name", list(FIXTURES))
def test_points_extend_to_full_solutions(name):
    si, _, ep = pipeline(name)
    rng = random.Random(7)
    for _ in range(20):
        pt = full_point(ep, stratum_point(ep, rng))
        assert all(g.poly.evaluate(pt) == 0 for g in si.generators)


def test_flat_cases():
    for name, n in (("ex1", 5), ("delta0", 9)):
        _, _, ep = pipeline(name)
        assert ep.flat and ep.embedding_dim == n


def test_perturbed_point_leaves_scheme():
    si, _, ep = pipeline("ex1")
    pt = full_point(ep, stratum_point(ep, random.Random(3)))
    t = next(iter(ep.substitutions))
    pt[t] += 1
    assert not is_reduced_groebner(family_at(si, pt), si.ss, si.order)[0]
    assert any(g.poly.evaluate(pt) != 0 for g in si.generators)
    assert isinstance(t, TVar) and isinstance(pt[t], Fraction)
