"""Weight matrices, Gaussian weights, gauges, and double ratios."""

from __future__ import annotations

import numpy as np
import pytest

from pachner33.errors import DegenerateWeightError
from pachner33.grassmann import GrassmannElement
from pachner33.operators import (
    LinearOperator,
    nullspace,
    subspaces_equal,
    operator_matrix,
)
from pachner33.simplicial import Cochain, faces
from pachner33.weights import (
    CANONICAL_RATIO_PAIRS,
    GaugeTransform,
    WeightMatrix,
    apply_gauge_to_F,
    apply_gauge_to_element,
    canonical_ratios,
    double_ratio,
    gaussian_weight,
    interchange_F,
    odd_weight,
    opposite_tetrahedra,
    quadratic_form,
    solve_F_from_ratios,
    tetra_space,
    weight_operators,
)

SIMPLEX = (1, 2, 3, 4, 5)


def random_phi(rng, min_abs=0.05):
    vals = {}
    for s in faces(SIMPLEX, 2):
        z = 0.0
        while abs(z) < min_abs:
            z = complex(*rng.uniform(-1, 1, size=2))
        vals[s] = z
    return Cochain(SIMPLEX, 2, vals)


def random_wm(rng):
    return WeightMatrix.from_phi(SIMPLEX, random_phi(rng))


def test_opposite_order():
    assert opposite_tetrahedra(SIMPLEX) == [
        (2, 3, 4, 5),
        (1, 3, 4, 5),
        (1, 2, 4, 5),
        (1, 2, 3, 5),
        (1, 2, 3, 4),
    ]


def test_matrix_layout_matches_reference(rng):
    phi = random_phi(rng)
    wm = WeightMatrix.from_phi(SIMPLEX, phi)
    p = lambda *v: phi[v]
    expected = np.array(
        [
            [0, -p(3, 4, 5), p(2, 4, 5), -p(2, 3, 5), p(2, 3, 4)],
            [p(3, 4, 5), 0, -p(1, 4, 5), p(1, 3, 5), -p(1, 3, 4)],
            [-p(2, 4, 5), p(1, 4, 5), 0, -p(1, 2, 5), p(1, 2, 4)],
            [p(2, 3, 5), -p(1, 3, 5), p(1, 2, 5), 0, -p(1, 2, 3)],
            [-p(2, 3, 4), p(1, 3, 4), -p(1, 2, 4), p(1, 2, 3), 0],
        ],
        dtype=complex,
    )
    assert np.abs(wm.entries - expected).max() < 1e-15


def test_phi_roundtrip(rng):
    phi = random_phi(rng)
    back = WeightMatrix.from_phi(SIMPLEX, phi).phi()
    assert max(abs(back[s] - phi[s]) for s in faces(SIMPLEX, 2)) < 1e-15


def test_quadratic_form_single_face():
    phi = Cochain(SIMPLEX, 2, {(3, 4, 5): 2.0})
    q = quadratic_form(WeightMatrix.from_phi(SIMPLEX, phi))
    # inversion count of (1,3,4,5,2) is odd, so the lone term gets a minus
    assert abs(q.coefficient([(1, 3, 4, 5), (2, 3, 4, 5)]) + 2.0) < 1e-15
    assert len(q.coeffs) == 1


def test_quadratic_form_matches_direct_expansion(rng):
    wm = random_wm(rng)
    space = tetra_space(SIMPLEX)
    tets = wm.tetrahedra
    direct = GrassmannElement.zero(space)
    for k in range(5):
        for l in range(5):
            if l == k:
                continue
            direct = direct + GrassmannElement.monomial(
                space, [tets[k], tets[l]], -0.5 * wm.entries[k, l]
            )
    assert (quadratic_form(wm) - direct).max_abs() < 1e-13


def test_gaussian_weight_annihilated(rng):
    wm = random_wm(rng)
    W = gaussian_weight(wm)
    assert W.constant_term() == 1.0
    for d in weight_operators(wm):
        assert d.apply(W).max_abs() <= 1e-12 * W.max_abs()


def test_gaussian_weight_spans_joint_kernel(rng):
    wm = random_wm(rng)
    space = tetra_space(SIMPLEX)
    W = gaussian_weight(wm)
    ops = weight_operators(wm)
    blocks = []
    for d in ops:
        M = np.zeros((32, 32), dtype=complex)
        for mask in range(32):
            out = d.apply(GrassmannElement(space, {mask: 1.0}))
            for m2, c in out.coeffs.items():
                M[m2, mask] = c
        blocks.append(M)
    K = nullspace(np.vstack(blocks))
    assert K.shape[1] == 1
    wvec = np.array([W.coeffs.get(m, 0.0) for m in range(32)])
    # kernel vector proportional to the weight's coefficient vector
    kv = K[:, 0]
    ratio = wvec @ kv.conj() / (kv @ kv.conj())
    assert np.abs(wvec - ratio * kv).max() < 1e-10


def test_skew_rejected():
    E = np.ones((5, 5))
    with pytest.raises(ValueError):
        WeightMatrix(SIMPLEX, E)


def test_odd_weight_properties(rng):
    wm = random_wm(rng)
    t = (1, 2, 4, 5)
    Wodd = odd_weight(wm, t)
    assert Wodd.is_odd()
    zero = WeightMatrix.from_phi(SIMPLEX, Cochain(SIMPLEX, 2, {}))
    lone = odd_weight(zero, t)
    assert (lone + GrassmannElement.generator(lone.space, t)).max_abs() == 0
    # swapping the roles of derivative and variable at t annihilates the image
    space = tetra_space(SIMPLEX)
    i = space.index[t]
    for d in weight_operators(wm):
        beta, gamma = d.beta.copy(), d.gamma.copy()
        beta[i], gamma[i] = gamma[i], beta[i]
        swapped = LinearOperator(space, beta, gamma)
        assert swapped.apply(Wodd).max_abs() <= 1e-11 * Wodd.max_abs()


def test_gauge_on_F_and_elements(rng):
    wm = random_wm(rng)
    tets = wm.tetrahedra
    identity = GaugeTransform(SIMPLEX, {})
    assert np.abs(apply_gauge_to_F(wm, identity).entries - wm.entries).max() == 0
    g2 = GaugeTransform(SIMPLEX, {tets[0]: 2.0})
    scaled = apply_gauge_to_F(wm, g2)
    assert np.allclose(scaled.entries[0, 1:], 2.0 * wm.entries[0, 1:])
    assert np.allclose(scaled.entries[1:, 1:], wm.entries[1:, 1:])
    assert scaled.entries[0, 0] == 0

    lam = {t: complex(*rng.normal(size=2)) for t in tets}
    g = GaugeTransform(SIMPLEX, lam)
    W_gauged = gaussian_weight(apply_gauge_to_F(wm, g))
    W_subst = apply_gauge_to_element(gaussian_weight(wm), g)
    assert (W_gauged - W_subst).max_abs() < 1e-12 * W_subst.max_abs()


def test_gauge_rejects_zero_scale():
    with pytest.raises(ValueError):
        GaugeTransform(SIMPLEX, {(2, 3, 4, 5): 0.0})


def test_double_ratio_explicit(rng):
    phi = random_phi(rng)
    wm = WeightMatrix.from_phi(SIMPLEX, phi)
    dr = double_ratio(wm, (1, 2), (4, 5))
    expected = (phi[(2, 3, 5)] * phi[(1, 3, 4)]) / (phi[(1, 3, 5)] * phi[(2, 3, 4)])
    assert abs(dr - expected) < 1e-12 * abs(expected)


def test_double_ratio_gauge_invariant(rng):
    wm = random_wm(rng)
    lam = {t: complex(*rng.normal(size=2)) for t in wm.tetrahedra}
    gauged = apply_gauge_to_F(wm, GaugeTransform(SIMPLEX, lam))
    for rows, cols in CANONICAL_RATIO_PAIRS:
        a = double_ratio(wm, rows, cols)
        b = double_ratio(gauged, rows, cols)
        assert abs(a - b) <= 1e-11 * abs(a)


def test_double_ratio_all_ones():
    phi = Cochain(SIMPLEX, 2, {s: 1.0 for s in faces(SIMPLEX, 2)})
    wm = WeightMatrix.from_phi(SIMPLEX, phi)
    assert abs(double_ratio(wm, (1, 2), (4, 5)) - 1.0) < 1e-15


def test_double_ratio_degenerate_entry():
    phi = Cochain(SIMPLEX, 2, {s: 1.0 for s in faces(SIMPLEX, 2)})
    phi = Cochain(SIMPLEX, 2, {**phi.values, (2, 3, 5): 0.0})
    wm = WeightMatrix.from_phi(SIMPLEX, phi)
    with pytest.raises(DegenerateWeightError):
        double_ratio(wm, (1, 2), (4, 5))  # entry (1,4) carries the zero


def test_solve_F_from_ratios_roundtrip(rng):
    for _ in range(20):
        wm = random_wm(rng)
        target = canonical_ratios(wm)
        rebuilt = solve_F_from_ratios(SIMPLEX, target)
        again = canonical_ratios(rebuilt)
        worst = max(abs(x - y) / abs(y) for x, y in zip(again, target))
        assert worst < 1e-10
        E = rebuilt.entries
        assert np.allclose([E[0, 1], E[1, 2], E[2, 3], E[3, 4]], 1.0)
        assert abs(E[0, 4] + 1.0) < 1e-15


def test_canonical_ratio_jacobian_full_rank(rng):
    # numeric independence of the five canonical ratios w.r.t. the entries
    wm = random_wm(rng)
    pairs = [(k, l) for k in range(5) for l in range(k + 1, 5)]
    h = 1e-7

    def ratios_of(E):
        return np.array(canonical_ratios(WeightMatrix(SIMPLEX, E)))

    J = np.zeros((5, 10), dtype=complex)
    base = ratios_of(wm.entries)
    for j, (k, l) in enumerate(pairs):
        Ep = wm.entries.copy()
        Ep[k, l] += h
        Ep[l, k] -= h
        J[:, j] = (ratios_of(Ep) - base) / h
    s = np.linalg.svd(J, compute_uv=False)
    assert s[4] / s[0] > 1e-4


def test_interchange_pair(rng):
    wm = random_wm(rng)
    tets = wm.tetrahedra
    sibling = interchange_F(wm, [tets[1], tets[3]])
    # the sibling's span is the original span with the two coordinate pairs swapped
    M = operator_matrix(weight_operators(wm))
    i1, i3 = (tetra_space(SIMPLEX).index[tets[k]] for k in (1, 3))
    for i in (i1, i3):
        M[:, [i, 5 + i]] = M[:, [5 + i, i]]
    sib = operator_matrix(weight_operators(sibling))
    assert subspaces_equal(M.T, sib.T, tol=1e-8)
    W_sib = gaussian_weight(sibling)
    for row in M:
        d = LinearOperator.from_vector(tetra_space(SIMPLEX), row)
        assert d.apply(W_sib).max_abs() <= 1e-9 * W_sib.max_abs()


def test_interchange_odd_subset_fails(rng):
    wm = random_wm(rng)
    with pytest.raises(DegenerateWeightError):
        interchange_F(wm, [wm.tetrahedra[0]])
