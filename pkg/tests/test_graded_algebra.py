import json
from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from a3formal.fp_core import FpError
from a3formal.graded_algebra import (DegreeOverflow, Elt, QuadraticPresentation, algebra_from_quadratic,
                                     associativity_violations, exterior_presentation,
                                     free_algebra_dims_oracle, free_presentation, multiply,
                                     square_zero_presentation, unit_violations)


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_exterior_dims(p, d):
    names = [f"x{i}" for i in range(d)]
    A = algebra_from_quadratic(exterior_presentation(p, names), d + 1)
    assert list(A.dims) == [comb(d, n) for n in range(d + 2)]
    assert A.finite


@pytest.mark.parametrize("d", [1, 2, 3])
def test_free_dims(d):
    A = algebra_from_quadratic(free_presentation(5, d), 4)
    assert list(A.dims) == [d ** n for n in range(5)]


def test_square_zero():
    A = algebra_from_quadratic(square_zero_presentation(3, 3), 3)
    assert list(A.dims) == [1, 3, 0, 0]
    assert A.finite and A.dim(10) == 0


@st.composite
def presentations(draw, p=3, max_d=3):
    d = draw(st.integers(1, max_d))
    k = draw(st.integers(0, d * d))
    vecs = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=d * d, max_size=d * d), min_size=k, max_size=k))
    return QuadraticPresentation.from_vectors(p, [f"g{i}" for i in range(d)], np.array(vecs).reshape(-1, d * d))


@given(presentations())
def test_dims_match_brute_force(pres):
    A = algebra_from_quadratic(pres, 4)
    for n in range(5):
        assert A.dims[n] == free_algebra_dims_oracle(pres, n)


@given(presentations())
def test_associative_and_unital(pres):
    A = algebra_from_quadratic(pres, 4)
    assert associativity_violations(A) == []
    assert unit_violations(A) == []


def test_exterior_products_anticommute():
    A = algebra_from_quadratic(exterior_presentation(5), 3)
    x, y = A.basis_elt(1, 0), A.basis_elt(1, 1)
    xy, yx = multiply(A, x, y), multiply(A, y, x)
    assert np.array_equal((xy.vec + yx.vec) % 5, [0])
    assert xy.vec.any()
    assert not multiply(A, x, x).vec.any()


def test_degree_overflow():
    A = algebra_from_quadratic(free_presentation(3, 2), 2)
    with pytest.raises(DegreeOverflow):
        A.dim(3)
    with pytest.raises(DegreeOverflow):
        multiply(A, A.basis_elt(1, 0), A.basis_elt(2, 0))


def test_truncate():
    A = algebra_from_quadratic(free_presentation(3, 2), 3)
    T = A.truncate(2)
    assert list(T.dims) == [1, 2, 4] and T.finite
    assert T.dim(3) == 0
    assert associativity_violations(T) == []


@given(presentations(5))
def test_json_roundtrip(pres):
    data = json.loads(json.dumps(pres.to_json()))
    back = QuadraticPresentation.from_json(data)
    assert back.relations == pres.relations and back.gen_names == pres.gen_names


@pytest.mark.parametrize("bad", [
    {"p": 4, "generators": ["x"], "relations": []},
    {"p": 3, "generators": [], "relations": []},
    {"p": 3, "generators": ["x"], "relations": [[[1, 0, 1]]]},
    {"p": 3, "relations": []},
])
def test_json_rejects(bad):
    with pytest.raises(FpError):
        QuadraticPresentation.from_json(bad)


def test_budget_guard():
    from a3formal.graded_algebra import BudgetExceeded
    with pytest.raises(BudgetExceeded):
        algebra_from_quadratic(free_presentation(3, 10), 8)


def test_cap_too_small():
    with pytest.raises(FpError):
        algebra_from_quadratic(free_presentation(3, 2), 1)
