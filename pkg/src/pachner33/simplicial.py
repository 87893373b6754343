"""Cochains on simplices and the tools the weight machinery needs.

A complex here is just the full k-skeleton of a single simplex, described by
its sorted vertex tuple.  Cochains of degree d assign complex values to the
(d+1)-subsets of the vertices, keyed by sorted tuples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping

import numpy as np


def faces(vertices, k: int):
    """All sorted (k+1)-subsets of a sorted vertex tuple."""
    return list(combinations(tuple(vertices), k + 1))


def permutation_sign(seq) -> int:
    """Sign of the permutation taking sorted(seq) to seq; 0 on repeats."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
            elif seq[i] == seq[j]:
                return 0
    return sign


def star_tetrahedra(edge, simplex) -> list[tuple[int, ...]]:
    """The tetrahedra of a 4-simplex containing a given edge (three of them)."""
    edge = tuple(sorted(edge))
    return [t for t in combinations(tuple(simplex), 4) if set(edge) <= set(t)]


@dataclass(frozen=True)
class Cochain:
    """A degree-d cochain on the full simplex with the given vertices."""

    vertices: tuple[int, ...]
    degree: int
    values: Mapping[tuple[int, ...], complex] = field(default_factory=dict)

    def __post_init__(self):
        verts = tuple(sorted(int(v) for v in self.vertices))
        object.__setattr__(self, "vertices", verts)
        cells = faces(verts, self.degree)
        vals = {}
        for cell, v in self.values.items():
            cell = tuple(sorted(int(i) for i in cell))
            if cell not in cells:
                raise ValueError(f"{cell} is not a {self.degree}-cell of {verts}")
            vals[cell] = complex(v)
        for cell in cells:
            vals.setdefault(cell, 0.0 + 0.0j)
        object.__setattr__(self, "values", vals)

    def __getitem__(self, cell) -> complex:
        return self.values[tuple(sorted(cell))]

    def cells(self):
        return faces(self.vertices, self.degree)

    def as_vector(self) -> np.ndarray:
        return np.array([self.values[c] for c in self.cells()], dtype=complex)

    def max_abs(self) -> float:
        return max((abs(v) for v in self.values.values()), default=0.0)

    def scaled(self, factor: complex) -> "Cochain":
        return Cochain(self.vertices, self.degree, {c: factor * v for c, v in self.values.items()})

    def restrict(self, sub_vertices) -> "Cochain":
        """Restriction to the full subsimplex on a subset of the vertices."""
        sub = tuple(sorted(int(v) for v in sub_vertices))
        if not set(sub) <= set(self.vertices):
            raise ValueError("restriction target is not a subsimplex")
        vals = {c: self.values[c] for c in faces(sub, self.degree)}
        return Cochain(sub, self.degree, vals)


def coboundary(c: Cochain) -> Cochain:
    """Simplicial coboundary for degrees 0 and 1."""
    if c.degree == 0:
        vals = {(i, j): c[(j,)] - c[(i,)] for i, j in faces(c.vertices, 1)}
        return Cochain(c.vertices, 1, vals)
    if c.degree == 1:
        vals = {
            (i, j, k): c[(j, k)] - c[(i, k)] + c[(i, j)]
            for i, j, k in faces(c.vertices, 2)
        }
        return Cochain(c.vertices, 2, vals)
    raise ValueError("coboundary implemented for degrees 0 and 1 only")


def is_cocycle(c: Cochain, rel_tol: float = 1e-12) -> bool:
    """Check the alternating four-term sum on every tetrahedron."""
    if c.degree != 2:
        raise ValueError("cocycle test applies to degree-2 cochains")
    scale = max(c.max_abs(), 1e-300)
    for i, j, k, l in faces(c.vertices, 3):
        s = c[(j, k, l)] - c[(i, k, l)] + c[(i, j, l)] - c[(i, j, k)]
        if abs(s) > rel_tol * scale:
            return False
    return True


def vertex_coboundary_sign(vertex: int, edge) -> int:
    """Coefficient of an edge in the coboundary of the indicator 0-cochain."""
    a, b = tuple(sorted(edge))
    if vertex == b:
        return 1
    if vertex == a:
        return -1
    return 0


def random_annulus(rng: np.random.Generator, lo: float = 0.5, hi: float = 1.5) -> complex:
    """Point of the annulus lo <= |z| <= hi, uniform in area."""
    r = np.sqrt(rng.uniform(lo * lo, hi * hi))
    theta = rng.uniform(0.0, 2.0 * np.pi)
    return r * np.exp(1j * theta)


def random_cocycle(vertices, rng: np.random.Generator) -> Cochain:
    """A 2-cocycle built as the coboundary of a random 1-cochain.

    Cohomology of a simplex is trivial, so this reaches every cocycle; the
    annulus keeps components away from zero without growing the dynamic range.
    """
    nu = Cochain(
        vertices, 1, {e: random_annulus(rng) for e in faces(tuple(vertices), 1)}
    )
    return coboundary(nu)


def cochain_primitive(omega: Cochain, rel_tol: float = 1e-9) -> Cochain:
    """Solve delta(nu) = omega for a 1-cochain nu (least squares).

    Any primitive works for the callers here; the residual check rejects
    inputs that are not cocycles.
    """
    if omega.degree != 2:
        raise ValueError("primitive is defined for degree-2 cochains")
    edges = faces(omega.vertices, 1)
    tris = faces(omega.vertices, 2)
    A = np.zeros((len(tris), len(edges)), dtype=complex)
    col = {e: idx for idx, e in enumerate(edges)}
    for r, (i, j, k) in enumerate(tris):
        A[r, col[(j, k)]] += 1.0
        A[r, col[(i, k)]] -= 1.0
        A[r, col[(i, j)]] += 1.0
    b = omega.as_vector()
    x, *_ = np.linalg.lstsq(A, b, rcond=None)
    resid = np.linalg.norm(A @ x - b)
    if resid > rel_tol * max(np.linalg.norm(b), 1e-300):
        raise ValueError("cochain has no primitive: not a cocycle")
    return Cochain(omega.vertices, 1, {e: x[col[e]] for e in edges})
