"""Eigendecompositions, vertex spectral measures, spectral embeddings.

A decomposition keeps an eigenbasis orthonormal in the operator's own
inner product (w-weighted for transition/laplacian/signless, standard
for the combinatorial operator).  Mass assigned by the resolution of
identity to [0, delta], seen from the unit vector at a vertex, becomes
a finite step measure; the embedding of a vertex is its projection onto
the low-spectrum subspace.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import errors
from .constants import (ATOM_GROUP_REL_TOL, ATOM_QUERY_TOL, MASS_CLAMP)
from .graphs import WeightedGraph
from .operators import (GraphOperator, OperatorKind, WEIGHTED,
                        build_operator, symmetrize)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Ascending eigenvalues with an orthonormal eigenbasis (columns)."""

    operator_kind: OperatorKind
    eigenvalues: np.ndarray
    eigenbasis: np.ndarray
    inner_product: str
    graph: WeightedGraph

    @property
    def n(self) -> int:
        return self.graph.n

    def atoms(self):
        """(locations, column groups): eigenvalues within a relative gap
        of ATOM_GROUP_REL_TOL times the spectral span merge into one
        atom, so multiplicity handling is robust to eigensolver jitter."""
        lam = self.eigenvalues
        span = max(float(lam[-1] - lam[0]), 1.0)
        tol = ATOM_GROUP_REL_TOL * span
        locs: list[float] = []
        groups: list[list[int]] = []
        for j, value in enumerate(lam):
            if locs and value - lam[groups[-1][0]] <= tol:
                groups[-1].append(j)
            else:
                locs.append(float(value))
                groups.append([j])
        locs = [float(np.mean(lam[idx])) for idx in groups]
        return np.array(locs), groups

    def coefficient_matrix(self) -> np.ndarray:
        """C[x, j] = <unit vector at x, h_j> in the tagged inner product."""
        if self.inner_product == WEIGHTED:
            sq = np.sqrt(self.graph.vertex_weight)
            return sq[:, None] * self.eigenbasis
        return self.eigenbasis

    def mass_matrix(self) -> np.ndarray:
        """M[x, k] = spectral mass of atom k as seen from vertex x."""
        key = "mass_matrix"
        cache = self.graph._cache.setdefault(("spectral", self.operator_kind), {})
        if key not in cache:
            C = self.coefficient_matrix()
            _, groups = self.atoms()
            M = np.column_stack([(C[:, idx] ** 2).sum(axis=1)
                                 for idx in groups])
            M.flags.writeable = False
            cache[key] = M
        return cache[key]


def decompose(op: GraphOperator) -> SpectralDecomposition:
    """Symmetric eigensolve in the right inner product.

    Weighted operators are conjugated by W^(1/2) first and the basis is
    mapped back by W^(-1/2), so <h_i, h_j>_w = delta_ij.
    """
    try:
        if op.inner_product == WEIGHTED:
            S = symmetrize(op)
            lam, vec = np.linalg.eigh(0.5 * (S + S.T))
            basis = vec / np.sqrt(op.graph.vertex_weight)[:, None]
        else:
            M = op.matrix
            lam, vec = np.linalg.eigh(0.5 * (M + M.T))
            basis = vec
    except np.linalg.LinAlgError as exc:
        raise errors.EigensolveFailure(str(exc)) from exc
    lam.flags.writeable = False
    basis.flags.writeable = False
    return SpectralDecomposition(operator_kind=op.kind, eigenvalues=lam,
                                 eigenbasis=basis,
                                 inner_product=op.inner_product,
                                 graph=op.graph)


def decompose_kind(g: WeightedGraph, kind: OperatorKind
                   ) -> SpectralDecomposition:
    """Build the operator and decompose it, memoized per graph."""
    kind = OperatorKind(kind)
    cache = g._cache.setdefault(("spectral", kind), {})
    if "dec" not in cache:
        cache["dec"] = decompose(build_operator(g, kind))
    return cache["dec"]


@dataclass(frozen=True)
class StepMeasure:
    """Finite atomic measure on the line: sorted locations with masses.

    The CDF is right-continuous; a query exactly at an atom includes it
    (closed intervals [0, delta]).  Round-off masses below MASS_CLAMP in
    magnitude are clamped to zero and no renormalization is applied, so
    raw identities stay checkable.
    """

    locations: np.ndarray
    masses: np.ndarray

    def __post_init__(self):
        if np.any(self.masses < MASS_CLAMP):
            raise ValueError("measure has a significantly negative mass")
        clamped = np.where(self.masses < 0, 0.0, self.masses)
        object.__setattr__(self, "masses", clamped)
        self.locations.flags.writeable = False
        self.masses.flags.writeable = False

    @property
    def total_mass(self) -> float:
        return float(self.masses.sum())

    def cdf(self, delta: float) -> float:
        """Mass of [min location, delta]; atoms at delta included."""
        tol = ATOM_QUERY_TOL * max(1.0, float(np.abs(self.locations).max(initial=1.0)))
        return float(self.masses[self.locations <= delta + tol].sum())

    def __call__(self, delta: float) -> float:
        return self.cdf(delta)

    def moment(self, power_base: float, t: int) -> float:
        """sum of (power_base - location)^t * mass; the return-probability
        representation uses power_base = 1 for laplacian-side measures."""
        return float(np.dot((power_base - self.locations) ** t, self.masses))

    def power_sum(self, t: int) -> float:
        """sum of location^t * mass (transition-side measures)."""
        return float(np.dot(self.locations ** t, self.masses))

    def drop_atom_at(self, location: float, mass: float) -> "StepMeasure":
        """Remove `mass` from the atom nearest `location`."""
        idx = int(np.argmin(np.abs(self.locations - location)))
        new_masses = self.masses.copy()
        new_masses[idx] -= mass
        if abs(new_masses[idx]) < 1e-14:
            return StepMeasure(np.delete(self.locations, idx),
                               np.delete(new_masses, idx))
        return StepMeasure(self.locations.copy(), new_masses)

    def to_csv(self) -> str:
        lines = ["location,mass"]
        for loc, mass in zip(self.locations, self.masses):
            lines.append(f"{float(loc)!r},{float(mass)!r}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_csv(text: str) -> "StepMeasure":
        lines = [ln for ln in text.strip().splitlines() if ln]
        if not lines or lines[0] != "location,mass":
            raise IOError("bad measure CSV header")
        locs, masses = [], []
        for ln in lines[1:]:
            a, b = ln.split(",")
            locs.append(float(a))
            masses.append(float(b))
        return StepMeasure(np.array(locs), np.array(masses))


def vertex_measure(dec: SpectralDecomposition, x: int) -> StepMeasure:
    """Spectral measure of the decomposition's operator at vertex x."""
    locs, _ = dec.atoms()
    masses = dec.mass_matrix()[x].copy()
    return StepMeasure(locs.copy(), masses)


def reduced_measure(dec: SpectralDecomposition, x: int) -> StepMeasure:
    """Laplacian measure with the stationary atom at 0 removed; total
    mass 1 - pi(x)."""
    if dec.operator_kind is not OperatorKind.LAPLACIAN:
        raise errors.WrongOperatorKind(
            f"reduced measure needs the laplacian, got {dec.operator_kind}")
    pi_x = float(dec.graph.stationary()[x])
    return vertex_measure(dec, x).drop_atom_at(0.0, pi_x)


def counting_identity(dec: SpectralDecomposition, delta: float
                      ) -> tuple[float, int]:
    """(sum over x of the vertex measure at delta, eigenvalue count).

    The two agree because the sum is the trace of the projection onto
    eigenvalues <= delta.
    """
    locs, groups = dec.atoms()
    M = dec.mass_matrix()
    tol = ATOM_QUERY_TOL * max(1.0, float(np.abs(locs).max(initial=1.0)))
    sel = locs <= delta + tol
    total = float(M[:, sel].sum())
    count = int(sum(len(groups[k]) for k in np.nonzero(sel)[0]))
    return total, count


@dataclass(frozen=True)
class EmbeddingVector:
    """Projection of a vertex onto the spectrum at or below delta.

    For weighted operators the coordinates equal the projection of
    1_x / w(x) and satisfy |F_x|_w^2 = F_x(x) = measure(delta) / w(x);
    for the combinatorial operator, |F_x|^2 = F_x(x) = measure(delta).
    """

    x: int
    delta: float
    coordinates: np.ndarray
    inner_product: str
    graph: WeightedGraph

    @property
    def norm_sq(self) -> float:
        f = self.coordinates
        if self.inner_product == WEIGHTED:
            return float(np.dot(self.graph.vertex_weight * f, f))
        return float(np.dot(f, f))

    @property
    def value_at_base(self) -> float:
        return float(self.coordinates[self.x])

    def normalized(self) -> np.ndarray:
        norm = np.sqrt(self.norm_sq)
        if norm <= 0.0:
            raise errors.ZeroMeasure(
                f"embedding of vertex {self.x} at delta={self.delta} is zero")
        return self.coordinates / norm


def embedding(dec: SpectralDecomposition, delta: float, x: int
              ) -> EmbeddingVector:
    locs, groups = dec.atoms()
    tol = ATOM_QUERY_TOL * max(1.0, float(np.abs(locs).max(initial=1.0)))
    cols = [j for k, loc in enumerate(locs) if loc <= delta + tol
            for j in groups[k]]
    H = dec.eigenbasis
    if cols:
        coords = H[:, cols] @ H[x, cols]
    else:
        coords = np.zeros(dec.n)
    return EmbeddingVector(x=x, delta=float(delta), coordinates=coords,
                           inner_product=dec.inner_product, graph=dec.graph)


def embedding_gram(dec: SpectralDecomposition, delta: float) -> np.ndarray:
    """Gram matrix G[x, y] = <F_x, F_y> of all vertex embeddings at delta
    in the decomposition's inner product.  Diagonal entries recover the
    vertex measures: measure_x(delta) = w(x) G[x, x] (weighted case)."""
    locs, groups = dec.atoms()
    tol = ATOM_QUERY_TOL * max(1.0, float(np.abs(locs).max(initial=1.0)))
    cols = [j for k, loc in enumerate(locs) if loc <= delta + tol
            for j in groups[k]]
    H = dec.eigenbasis
    if not cols:
        return np.zeros((dec.n, dec.n))
    sel = H[:, cols]
    return sel @ sel.T


def average_measure(dec: SpectralDecomposition) -> StepMeasure:
    """Atom-wise average of the vertex measures; total mass 1."""
    locs, _ = dec.atoms()
    masses = dec.mass_matrix().mean(axis=0)
    return StepMeasure(locs.copy(), masses.copy())
