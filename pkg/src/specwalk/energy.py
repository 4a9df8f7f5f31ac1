"""The energy-efficiency functional and the greedy set-selection algorithm.

The functional is the minimum of the signless quadratic form over
sign-changing vertex functions normalized in sup norm.  It is zero
exactly on bipartite graphs; on non-bipartite graphs it is sandwiched
between a certified lower bound 1/(diameter + 1) and the objective of
an explicit feasible witness found numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from . import errors
from .graphs import WeightedGraph, bipartiteness, diameter
from .operators import OperatorKind, q_form
from .report import BoundCheck
from .spectral import SpectralDecomposition, decompose_kind, embedding_gram

# strict "min f < 0" closed off by this margin inside the solvers
SIGN_EPS = 1e-6


@dataclass(frozen=True)
class EfficiencyEstimate:
    """Sandwich for the energy efficiency: certified lower bound and an
    achieved feasible objective as upper bound."""

    lower_bound: float
    upper_bound: float
    witness: np.ndarray
    method: str


def _theta_matrix(g: WeightedGraph) -> np.ndarray:
    return np.diag(g.vertex_weight) + g.adjacency_matrix()


def efficiency_lower(g: WeightedGraph) -> float:
    """Certified lower bound 1/(diameter + 1); bipartite graphs have
    efficiency exactly zero and are rejected."""
    if bipartiteness(g).is_bipartite:
        raise errors.BipartiteGraph(
            f"{g.label} is bipartite: energy efficiency is 0")
    return 1.0 / (diameter(g) + 1.0)


def bipartite_certificate(g: WeightedGraph) -> np.ndarray:
    """Sign-alternating witness with objective exactly zero (bipartite
    graphs only); certifies that the efficiency vanishes."""
    bip = bipartiteness(g)
    if not bip.is_bipartite:
        raise ValueError(f"{g.label} is not bipartite")
    return np.where(bip.side == 0, 1.0, -1.0)


def _box_qp(theta: np.ndarray, v: int, u: int, eps: float = SIGN_EPS
            ) -> tuple[float, np.ndarray]:
    """Minimize f^T Theta f over the box |f| <= 1 with f[v] = 1 fixed and
    f[u] <= -eps.  Convex (Theta is PSD), so the solver is exact up to
    gradient tolerance."""
    n = theta.shape[0]
    free = [i for i in range(n) if i != v]
    bounds = [(-1.0, -eps) if i == u else (-1.0, 1.0) for i in free]

    def objective(x):
        f = np.empty(n)
        f[free] = x
        f[v] = 1.0
        grad_full = 2.0 * (theta @ f)
        return float(f @ (theta @ f)), grad_full[free]

    x0 = np.zeros(len(free))
    x0[free.index(u)] = -0.5
    res = optimize.minimize(objective, x0, jac=True, method="L-BFGS-B",
                            bounds=bounds,
                            options={"maxiter": 2000, "ftol": 1e-16,
                                     "gtol": 1e-12})
    f = np.empty(n)
    f[free] = res.x
    f[v] = 1.0
    return float(f @ (theta @ f)), f


def pairwise_upper_bound(g: WeightedGraph, eps: float = SIGN_EPS
                         ) -> tuple[float, np.ndarray]:
    """Exhaustive pairwise scheme: one convex box subproblem per ordered
    vertex pair (positive peak, negative vertex); exact up to eps closure.
    Quadratic in n times a dense solve, intended for n <= 12."""
    theta = _theta_matrix(g)
    best = math.inf
    best_f = None
    for v in range(g.n):
        for u in range(g.n):
            if u == v:
                continue
            val, f = _box_qp(theta, v, u, eps)
            if val < best:
                best, best_f = val, f
    return best, best_f


def _sign_changing(f: np.ndarray) -> bool:
    return float(f.min()) < 0.0 < float(f.max())


def _projected_descent(theta: np.ndarray, f0: np.ndarray,
                       max_iter: int = 400) -> tuple[float, np.ndarray]:
    """Gradient descent on the quadratic form with sup-norm normalization
    after each step; steps that lose the sign-change constraint are
    rejected by the backtracking."""
    f = f0 / np.abs(f0).max()
    value = float(f @ (theta @ f))
    step = 1.0 / max(1.0, float(np.abs(theta).sum(axis=1).max()))
    for _ in range(max_iter):
        grad = 2.0 * (theta @ f)
        eta = step
        improved = False
        while eta > 1e-14:
            cand = f - eta * grad
            peak = np.abs(cand).max()
            if peak > 0:
                cand = cand / peak
                cand_value = float(cand @ (theta @ cand))
                if _sign_changing(cand) and cand_value < value - 1e-15:
                    f, value = cand, cand_value
                    improved = True
                    break
            eta *= 0.5
        if not improved:
            break
    return value, f


def multistart_upper_bound(g: WeightedGraph, restarts: int = 32,
                           seed: int = 0) -> tuple[float, np.ndarray]:
    """Multistart projected descent from low signless eigenvectors plus
    random sign patterns, each run polished by one convex box subproblem
    at its active (peak, most-negative) pair."""
    theta = _theta_matrix(g)
    dec_Q = decompose_kind(g, OperatorKind.SIGNLESS)
    rng = np.random.default_rng(seed)
    starts = []
    for j in range(min(4, g.n)):
        vec = dec_Q.eigenbasis[:, j]
        if _sign_changing(vec):
            starts.append(vec)
        elif _sign_changing(-vec):
            starts.append(-vec)
    while len(starts) < restarts:
        vec = rng.standard_normal(g.n)
        if _sign_changing(vec):
            starts.append(vec)
    best = math.inf
    best_f = None
    for f0 in starts[:restarts]:
        value, f = _projected_descent(theta, np.array(f0, dtype=float))
        if f[int(np.argmax(np.abs(f)))] < 0:
            f = -f
        v = int(np.argmax(np.abs(f)))
        u = int(np.argmin(f))
        value, f = _box_qp(theta, v, u)
        if value < best:
            best, best_f = value, f
    return best, best_f


def efficiency_upper(g: WeightedGraph, restarts: int = 32, seed: int = 0
                     ) -> EfficiencyEstimate:
    """Best feasible objective found; a valid upper bound because every
    witness satisfies min f < 0 < max f and sup norm 1."""
    lower = efficiency_lower(g)
    value, witness = multistart_upper_bound(g, restarts, seed)
    method = "multistart_descent"
    if g.n <= 12:
        pair_value, pair_witness = pairwise_upper_bound(g)
        if pair_value <= value:
            value, witness, method = pair_value, pair_witness, "pairwise_qp"
    return EfficiencyEstimate(lower_bound=lower, upper_bound=float(value),
                              witness=witness, method=method)


def path_energy_bound(g: WeightedGraph, f, path) -> BoundCheck:
    """Quadratic form against the alternating-sign path lower bound
    (edge weights at least 1 required by the underlying inequality)."""
    if not g.weights_ge_1:
        raise errors.PreconditionViolated(
            f"{g.label}: path energy bound needs edge weights >= 1")
    path = [int(z) for z in path]
    if len(path) < 2:
        raise errors.NotAPath("path needs at least one edge")
    edges_seen = set()
    for a, b in zip(path, path[1:]):
        key = (min(a, b), max(a, b))
        if b not in {y for y, _ in g.adjacency[a]}:
            raise errors.NotAPath(f"({a}, {b}) is not an edge")
        if key in edges_seen:
            raise errors.NotAPath(f"edge ({a}, {b}) repeated")
        edges_seen.add(key)
    f = np.asarray(f, dtype=float)
    k = len(path) - 1
    lhs = q_form(g, f)
    rhs = (f[path[0]] - (-1) ** k * f[path[-1]]) ** 2 / k
    return BoundCheck.make("path_energy", "alternating-path-energy",
                           lhs, rhs, "ge",
                           {"graph": g.label, "path_len": k})


# -- set selection ----------------------------------------------------------

@dataclass(frozen=True)
class SelectionResult:
    """Output of the greedy high-measure center extraction at level delta.

    Per center: its region (embedding-close vertices up to sign), the
    star of tightly aligned neighbors, and a maximal signed-alignment
    tree grown from the star.  Masses and tree energies are recorded for
    the invariant checks.
    """

    delta: float
    m: int
    centers: tuple[int, ...]
    regions: tuple[tuple[int, ...], ...]
    stars: tuple[tuple[int, ...], ...]
    trees: tuple[tuple[int, ...], ...]
    tree_parities: tuple[dict, ...]
    vertex_masses: np.ndarray
    region_masses: tuple[float, ...]
    center_masses: tuple[float, ...]
    tree_energies: tuple[float, ...]
    average_mass: float


def _grow_tree(g: WeightedGraph, gram: np.ndarray, x: int,
               star: list[int]) -> tuple[list[int], dict]:
    """Maximal connected bipartite (tree) growth from the star around x.

    Breadth-first augmentation: a vertex joins at parity p when
    |F_x - (-1)^p F_vertex|^2 <= |F_x|^2 / 81; leaf additions keep the
    subgraph bipartite.  Ties are broken by vertex id for determinism.
    """
    threshold = gram[x, x] / 81.0
    parity = {x: 0}
    order = [x]
    for y in star:
        parity[y] = 1
        order.append(y)
    queue = list(order)
    while queue:
        y = queue.pop(0)
        p = parity[y] + 1
        sign = -1.0 if p % 2 else 1.0
        for z, _ in g.adjacency[y]:
            if z in parity:
                continue
            gap = gram[x, x] + gram[z, z] - 2.0 * sign * gram[x, z]
            if gap <= threshold:
                parity[z] = p
                order.append(z)
                queue.append(z)
    return order, parity


def set_selection(g: WeightedGraph, dec_Q: SpectralDecomposition,
                  delta: float) -> SelectionResult:
    """Greedy extraction of m = floor(n/2 * average mass) + 1 centers,
    removing each center's region before the next pick."""
    if dec_Q.operator_kind is not OperatorKind.SIGNLESS:
        raise errors.WrongOperatorKind("set selection needs the signless "
                                       "decomposition")
    if bipartiteness(g).is_bipartite:
        raise errors.PreconditionViolated(f"{g.label} is bipartite")
    lam_min = float(dec_Q.eigenvalues[0])
    if delta < lam_min - 1e-9:
        raise errors.EmptySelection(
            f"delta={delta} lies below the spectral minimum {lam_min}")
    gram = embedding_gram(dec_Q, delta)
    norms = np.diag(gram).copy()
    masses = g.vertex_weight * norms
    avg = float(masses.mean())
    # forward nudge so an exact integer product is not floored away
    m = int(math.floor(0.5 * g.n * avg + 1e-9)) + 1

    active = set(range(g.n))
    centers, regions, stars, trees, parities = [], [], [], [], []
    for _ in range(m):
        if not active:
            raise RuntimeError(f"{g.label}: selection ran out of vertices")
        x = min(active, key=lambda v: (-masses[v], v))
        centers.append(x)
        quarter = norms[x] / 16.0
        dist_sq = norms[x] + norms - 2.0 * gram[x]
        sum_sq = norms[x] + norms + 2.0 * gram[x]
        region = [y for y in range(g.n)
                  if dist_sq[y] <= quarter or sum_sq[y] <= quarter]
        regions.append(tuple(region))
        active -= set(region)
        star = [y for y, _ in g.adjacency[x]
                if sum_sq[y] <= norms[x] / 81.0]
        stars.append(tuple(star))
        tree, parity = _grow_tree(g, gram, x, star)
        trees.append(tuple(tree))
        parities.append(parity)

    tree_energies = [
        _incident_energy(g, gram, set(tree)) for tree in trees
    ]
    return SelectionResult(
        delta=float(delta), m=m, centers=tuple(centers),
        regions=tuple(regions), stars=tuple(stars), trees=tuple(trees),
        tree_parities=tuple(parities), vertex_masses=masses,
        region_masses=tuple(float(masses[list(r)].sum()) for r in regions),
        center_masses=tuple(float(masses[x]) for x in centers),
        tree_energies=tuple(tree_energies), average_mass=avg)


def _incident_energy(g: WeightedGraph, gram: np.ndarray, vertices: set
                     ) -> float:
    total = 0.0
    for a, b, _ in g.edges:
        if a in vertices or b in vertices:
            total += gram[a, a] + gram[b, b] + 2.0 * gram[a, b]
    return total


def tree_energy(g: WeightedGraph, dec_Q: SpectralDecomposition,
                delta: float, vertices) -> float:
    """Embedding energy of every edge incident to the vertex set: the sum
    of |F_a + F_b|^2 over those edges."""
    vset = set(int(v) for v in vertices)
    if not vset:
        return 0.0
    gram = embedding_gram(dec_Q, delta)
    return _incident_energy(g, gram, vset)
