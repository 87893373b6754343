"""Cochain and coboundary behaviour on the 4-simplex."""

from __future__ import annotations

import numpy as np
import pytest

from pachner33.simplicial import (
    Cochain,
    coboundary,
    cochain_primitive,
    faces,
    is_cocycle,
    permutation_sign,
    random_cocycle,
    star_tetrahedra,
    vertex_coboundary_sign,
)

SIMPLEX = (1, 2, 3, 4, 5)


def test_faces_counts():
    assert len(faces(SIMPLEX, 0)) == 5
    assert len(faces(SIMPLEX, 1)) == 10
    assert len(faces(SIMPLEX, 2)) == 10
    assert len(faces(SIMPLEX, 3)) == 5


def test_permutation_sign():
    assert permutation_sign((1, 2, 3)) == 1
    assert permutation_sign((2, 1, 3)) == -1
    assert permutation_sign((3, 1, 2)) == 1
    assert permutation_sign((1, 1, 2)) == 0
    # full reversal of 4 elements: 6 inversions
    assert permutation_sign((4, 3, 2, 1)) == 1


def test_star_tetrahedra():
    star = star_tetrahedra((1, 2), SIMPLEX)
    assert star == [(1, 2, 3, 4), (1, 2, 3, 5), (1, 2, 4, 5)]
    assert all(len(star_tetrahedra(e, SIMPLEX)) == 3 for e in faces(SIMPLEX, 1))


def test_cochain_fills_missing_cells_with_zero():
    c = Cochain(SIMPLEX, 1, {(1, 2): 3.0})
    assert c[(1, 2)] == 3.0
    assert c[(4, 5)] == 0.0
    assert len(c.cells()) == 10


def test_cochain_rejects_foreign_cell():
    with pytest.raises(ValueError):
        Cochain(SIMPLEX, 1, {(1, 6): 1.0})


def test_coboundary_of_vertex_indicator():
    one_at_3 = Cochain(SIMPLEX, 0, {(3,): 1.0})
    d = coboundary(one_at_3)
    for i, j in faces(SIMPLEX, 1):
        expected = vertex_coboundary_sign(3, (i, j))
        assert d[(i, j)] == expected


def test_coboundary_squares_to_zero():
    rng = np.random.default_rng(7)
    f = Cochain(SIMPLEX, 0, {(v,): complex(*rng.normal(size=2)) for v in SIMPLEX})
    dd = coboundary(coboundary(f))
    assert dd.max_abs() < 1e-15


def test_coboundary_of_one_cochain_is_cocycle(rng):
    for _ in range(20):
        omega = random_cocycle(SIMPLEX, rng)
        assert is_cocycle(omega)


def test_non_cocycle_detected():
    c = Cochain(SIMPLEX, 2, {(1, 2, 3): 1.0})
    assert not is_cocycle(c)


def test_primitive_roundtrip(rng):
    for _ in range(10):
        omega = random_cocycle(SIMPLEX, rng)
        nu = cochain_primitive(omega)
        back = coboundary(nu)
        diff = max(abs(back[c] - omega[c]) for c in omega.cells())
        assert diff < 1e-10 * omega.max_abs()


def test_primitive_rejects_non_cocycle():
    c = Cochain(SIMPLEX, 2, {(1, 2, 3): 1.0})
    with pytest.raises(ValueError):
        cochain_primitive(c)


def test_restrict_keeps_values(rng):
    omega = random_cocycle((1, 2, 3, 4, 5, 6), rng)
    sub = omega.restrict(SIMPLEX)
    assert sub.vertices == SIMPLEX
    for c in sub.cells():
        assert sub[c] == omega[c]
    assert is_cocycle(sub)


def test_random_cocycle_components_bounded(rng):
    # primitives live in an annulus, so cocycle entries stay in [0, 6] roughly
    omega = random_cocycle(SIMPLEX, rng)
    assert 0 < omega.max_abs() < 10.0


def test_as_vector_order():
    c = Cochain(SIMPLEX, 1, {e: i for i, e in enumerate(faces(SIMPLEX, 1))})
    v = c.as_vector()
    assert np.allclose(v, np.arange(10))
