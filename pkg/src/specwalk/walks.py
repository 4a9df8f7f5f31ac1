"""Return probabilities, Green's functions, hitting and mixing times.

Return probabilities travel three independent routes that the test
suite plays against each other: exact spectral sums, repeated matrix
multiplication, and seeded Monte Carlo simulation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import errors
from ._kernels import jump_walk_distribution, sample_return_hits
from .constants import MIXING_THRESHOLD
from .graphs import WeightedGraph
from .operators import OperatorKind, build_operator
from .spectral import SpectralDecomposition, decompose_kind


@dataclass(frozen=True)
class WalkEstimate:
    """Monte Carlo return-frequency estimate with a normal CI half-width."""

    x: int
    t: int
    estimate: float
    samples: int
    seed: int
    ci_half_width: float


@dataclass(frozen=True)
class ChainTimes:
    """Relaxation and uniform mixing data of the simple random walk.

    lambda_star is the largest nontrivial transition eigenvalue in
    absolute value; relaxation_time = 1 / (1 - lambda_star).  The
    uniform mixing time is the first t at which the worst relative
    deviation max |p_t(x,y) - pi(y)| / pi(y) drops to `threshold`;
    `deviations` holds that scan (index t-1), verified non-increasing.
    """

    relaxation_time: float
    lambda_star: float
    t_prime: int
    uniform_mixing_time: int
    threshold: float
    hitting: np.ndarray
    deviations: np.ndarray = field(repr=False)


# -- exact return probabilities ------------------------------------------

def return_prob_spectral(dec: SpectralDecomposition, x: int, t: int) -> float:
    """p_t(x, x) from the vertex spectral measure.

    Accepts the transition decomposition (sum of lambda^t masses) or the
    laplacian one (sum of (1 - lambda)^t masses); the two agree.
    """
    return float(return_probs_spectral(dec, x, np.array([t]))[0])


def return_probs_spectral(dec: SpectralDecomposition, x: int,
                          ts: np.ndarray) -> np.ndarray:
    locs, _ = dec.atoms()
    masses = dec.mass_matrix()[x]
    if dec.operator_kind is OperatorKind.TRANSITION:
        bases = locs
    elif dec.operator_kind is OperatorKind.LAPLACIAN:
        bases = 1.0 - locs
    else:
        raise errors.WrongOperatorKind(
            "return probabilities need the transition or laplacian operator")
    ts = np.asarray(ts)
    return (masses[None, :] * bases[None, :] ** ts[:, None]).sum(axis=1)


def return_prob_power(g: WeightedGraph, x: int, t: int) -> float:
    """(P^t)[x, x] by repeated row-vector multiplication (oracle route)."""
    P = build_operator(g, OperatorKind.TRANSITION).matrix
    row = np.zeros(g.n)
    row[x] = 1.0
    for _ in range(int(t)):
        row = row @ P
    return float(row[x])


def monte_carlo_return(g: WeightedGraph, x: int, t: int, samples: int,
                       seed: int = 0) -> WalkEstimate:
    """Seeded frequency estimate of p_t(x, x).

    Neighbor steps are drawn with probability w(x, y)/w(x) via a
    per-sample splitmix64 stream, so the result is reproducible for a
    fixed seed regardless of backend or thread count.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    indptr, nbrs, cum = g.csr()
    hits = sample_return_hits(indptr, nbrs, cum, x, int(t), int(samples),
                              int(seed))
    p_hat = hits / samples
    ci = 1.96 * math.sqrt(p_hat * (1.0 - p_hat) / samples)
    return WalkEstimate(x=x, t=int(t), estimate=p_hat, samples=int(samples),
                        seed=int(seed), ci_half_width=ci)


# -- Green's functions ----------------------------------------------------

def greens_function(g: WeightedGraph, x: int, y: int, t: int) -> float:
    """Partial sum of transition entries: sum of p_s(x, y) for s = 0..t.
    Monotone nondecreasing in t."""
    P = build_operator(g, OperatorKind.TRANSITION).matrix
    row = np.zeros(g.n)
    row[x] = 1.0
    total = row[y]
    for _ in range(int(t)):
        row = row @ P
        total += row[y]
    return float(total)


def greens_matrix(dec: SpectralDecomposition, t: int) -> np.ndarray:
    """All-pairs partial sums G[x, y] = sum of p_s(x, y), s = 0..t, via
    per-atom geometric sums.  The trivial eigenvalue contributes
    (t + 1) pi(y) exactly."""
    if dec.operator_kind is not OperatorKind.TRANSITION:
        raise errors.WrongOperatorKind("greens_matrix needs the transition "
                                       "decomposition")
    g = dec.graph
    locs, groups = dec.atoms()
    H = dec.eigenbasis
    w = g.vertex_weight
    G = np.zeros((g.n, g.n))
    for loc, idx in zip(locs, groups):
        block = H[:, idx] @ H[:, idx].T
        if abs(1.0 - loc) < 1e-12:
            geom = float(t) + 1.0
        else:
            geom = (1.0 - loc ** (t + 1)) / (1.0 - loc)
        G += geom * block
    return G * w[None, :]


def transition_power_matrix(dec: SpectralDecomposition, t: int) -> np.ndarray:
    """P^t reconstructed from the eigenbasis: H diag(lambda^t) H^T W."""
    if dec.operator_kind is not OperatorKind.TRANSITION:
        raise errors.WrongOperatorKind("needs the transition decomposition")
    H = dec.eigenbasis
    lam = dec.eigenvalues
    w = dec.graph.vertex_weight
    return (H * lam[None, :] ** t) @ H.T * w[None, :]


def local_green(g: WeightedGraph, x: int, targets) -> float:
    """Expected number of visits to x strictly before the walk started at
    x hits the target set, via the absorbing-chain linear system."""
    A = set(int(a) for a in targets)
    if not A:
        raise errors.EmptyTarget("target set is empty")
    if x in A:
        raise ValueError(f"start vertex {x} lies in the target set")
    keep = np.array([v for v in range(g.n) if v not in A])
    P = build_operator(g, OperatorKind.TRANSITION).matrix
    sub = P[np.ix_(keep, keep)]
    rhs = np.zeros(keep.size)
    pos = int(np.searchsorted(keep, x))
    rhs[pos] = 1.0
    try:
        visits = np.linalg.solve(np.eye(keep.size) - sub, rhs)
    except np.linalg.LinAlgError as exc:
        raise errors.SingularSolve(str(exc)) from exc
    return float(visits[pos])


# -- hitting and mixing ----------------------------------------------------

def hitting_times(g: WeightedGraph) -> np.ndarray:
    """H[x, y] = expected steps for the walk from x to first reach y."""
    P = build_operator(g, OperatorKind.TRANSITION).matrix
    H = np.zeros((g.n, g.n))
    for y in range(g.n):
        keep = np.array([v for v in range(g.n) if v != y])
        sub = P[np.ix_(keep, keep)]
        sol = np.linalg.solve(np.eye(g.n - 1) - sub, np.ones(g.n - 1))
        H[keep, y] = sol
    return H


def commute_diameter(g: WeightedGraph) -> float:
    H = hitting_times(g)
    return float((H + H.T).max())


def _deviation_scan(dec: SpectralDecomposition, threshold: float,
                    cap: int) -> np.ndarray:
    """Worst relative deviation of p_t from stationarity for t = 1..t*.

    Scans upward with literal matrix powers.  On vertex-transitive
    graphs a single start row suffices: the per-start deviation is
    non-increasing by the same reversibility argument as the full
    maximum, and all starts agree by symmetry.
    """
    g = dec.graph
    P = build_operator(g, OperatorKind.TRANSITION).matrix
    pi = g.stationary()
    devs = []
    if g.vertex_transitive:
        state = P[0].copy()
        while True:
            devs.append(float(np.abs(state / pi - 1.0).max()))
            if devs[-1] <= threshold or len(devs) >= cap:
                break
            state = state @ P
    else:
        state = P.copy()
        while True:
            devs.append(float(np.abs(state / pi[None, :] - 1.0).max()))
            if devs[-1] <= threshold or len(devs) >= cap:
                break
            state = state @ P
    if devs[-1] > threshold:
        raise RuntimeError(f"mixing scan exceeded cap {cap}")
    return np.array(devs)


def chain_times(g: WeightedGraph, dec_P: SpectralDecomposition | None = None,
                threshold: float = MIXING_THRESHOLD) -> ChainTimes:
    """Relaxation time, uniform mixing time and the hitting-time matrix.

    Raises BipartiteChain when the nontrivial spectral radius is 1 (the
    walk is periodic and never mixes).
    """
    key = ("chain_times", threshold)
    if key in g._cache:
        return g._cache[key]
    if dec_P is None:
        dec_P = decompose_kind(g, OperatorKind.TRANSITION)
    lam = dec_P.eigenvalues
    lambda_star = float(max(abs(lam[0]), abs(lam[-2]))) if g.n > 1 else 0.0
    if lambda_star >= 1.0 - 1e-12:
        raise errors.BipartiteChain(
            f"{g.label}: nontrivial spectral radius is 1")
    t_rel = 1.0 / (1.0 - lambda_star)
    # backward nudge so eigensolver jitter cannot push an exactly-integer
    # relaxation time over the next ceiling
    t_prime = math.ceil(t_rel - 1e-9) - 1
    cap = int(math.ceil(8.0 * (g.n ** 3))) + 2
    devs = _deviation_scan(dec_P, threshold, cap)
    increases = np.diff(devs)
    if increases.size and float(increases.max()) > 1e-10:
        raise RuntimeError(f"{g.label}: deviation scan is not non-increasing")
    times = ChainTimes(relaxation_time=t_rel, lambda_star=lambda_star,
                       t_prime=t_prime, uniform_mixing_time=len(devs),
                       threshold=threshold, hitting=hitting_times(g),
                       deviations=devs)
    g._cache[key] = times
    return times


# -- 1-D jump walk ----------------------------------------------------------

_EXACT_JUMP_LIMIT = 64


def _jump_counts(t: int) -> list[int]:
    """Exact path counts over offsets -2t..2t for steps in {-2,-1,1,2}."""
    size = 4 * t + 1
    counts = [0] * size
    counts[2 * t] = 1
    for _ in range(t):
        nxt = [0] * size
        for i, c in enumerate(counts):
            if not c:
                continue
            for d in (-2, -1, 1, 2):
                j = i + d
                if 0 <= j < size:
                    nxt[j] += c
        counts = nxt
    return counts


def jump_walk_return(t: int) -> float:
    """Return probability at the origin of the walk on the integers with
    steps uniform on {-2, -1, 1, 2}.

    Exact integer counting up to t = 64 (numerator over 4^t), then the
    double-precision DP kernel.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t == 0:
        return 1.0
    if t <= _EXACT_JUMP_LIMIT:
        return _jump_counts(t)[2 * t] / 4 ** t
    dist = jump_walk_distribution(t)
    return float(dist[2 * t])


def jump_walk_profile(t_max: int) -> np.ndarray:
    """Origin return probabilities of the jump walk for every t up to
    t_max, from a single DP sweep (double precision throughout)."""
    size = 4 * t_max + 1
    center = 2 * t_max
    p = np.zeros(size)
    p[center] = 1.0
    out = np.zeros(t_max + 1)
    out[0] = 1.0
    shifted = [np.zeros(size) for _ in range(4)]
    for t in range(1, t_max + 1):
        l2, l1, r1, r2 = shifted
        l2[2:] = p[:-2]
        l2[:2] = 0.0
        l1[1:] = p[:-1]
        l1[0] = 0.0
        r1[:-1] = p[1:]
        r1[-1] = 0.0
        r2[:-2] = p[2:]
        r2[-2:] = 0.0
        p = ((l2 + l1) + (r1 + r2)) * 0.25
        out[t] = p[center]
    return out
