"""Finite weighted graphs: validation, generators, metrics, resistance.

Vertices are dense integers 0..n-1.  A WeightedGraph is immutable after
construction and safe to share across threads; every operation here is
pure.  External vertex names are mapped to dense ids at the IO boundary
by callers.
"""

from __future__ import annotations

import io
import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from . import errors
from .report import BoundCheck


class WeightedGraph:
    """Simple connected weighted graph.

    Attributes
    ----------
    n : int
        Vertex count.
    edges : tuple of (u, v, w) with u < v
        Canonical edge list, sorted lexicographically.
    adjacency : tuple of tuples of (neighbor, weight)
        Per-vertex neighbor lists, neighbors ascending.
    vertex_weight : ndarray
        w(x) = sum of incident edge weights.
    total_volume : float
        vol(V) = sum of vertex weights = twice the total edge weight.
    """

    __slots__ = ("n", "edges", "adjacency", "vertex_weight", "total_volume",
                 "unweighted", "weights_ge_1", "vertex_transitive", "label",
                 "_cache")

    def __init__(self, edge_list, n=None, label="", vertex_transitive=False):
        edges = []
        seen = set()
        max_vertex = -1
        for u, v, w in edge_list:
            u, v, w = int(u), int(v), float(w)
            if u == v:
                raise errors.SelfLoop(f"self-loop at vertex {u}")
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                raise errors.DuplicateEdge(f"duplicate edge ({u}, {v})")
            if not w > 0:
                raise errors.NonpositiveWeight(
                    f"edge ({u}, {v}) has weight {w}")
            if u < 0:
                raise errors.BadVertex(f"negative vertex id {u}")
            seen.add((u, v))
            edges.append((u, v, w))
            max_vertex = max(max_vertex, v)
        edges.sort()
        self.n = int(n) if n is not None else max_vertex + 1
        if max_vertex >= self.n:
            raise errors.BadVertex(
                f"vertex {max_vertex} out of range for n={self.n}")
        if self.n <= 0:
            raise errors.DisconnectedGraph("graph has no vertices")
        self.edges = tuple(edges)

        nbrs: list[list[tuple[int, float]]] = [[] for _ in range(self.n)]
        weight = np.zeros(self.n)
        for u, v, w in edges:
            nbrs[u].append((v, w))
            nbrs[v].append((u, w))
            weight[u] += w
            weight[v] += w
        self.adjacency = tuple(tuple(sorted(a)) for a in nbrs)
        self.vertex_weight = weight
        self.vertex_weight.flags.writeable = False
        self.total_volume = float(weight.sum())
        self.unweighted = all(w == 1.0 for _, _, w in edges)
        self.weights_ge_1 = all(w >= 1.0 for _, _, w in edges)
        self.vertex_transitive = bool(vertex_transitive)
        self.label = label or f"graph(n={self.n})"
        self._cache = {}

        # connectivity via BFS from vertex 0
        seen_v = np.zeros(self.n, dtype=bool)
        queue = deque([0])
        seen_v[0] = True
        count = 1
        while queue:
            x = queue.popleft()
            for y, _ in self.adjacency[x]:
                if not seen_v[y]:
                    seen_v[y] = True
                    count += 1
                    queue.append(y)
        if count != self.n:
            raise errors.DisconnectedGraph(
                f"only {count} of {self.n} vertices reachable from 0")

    # -- linear-algebra views ------------------------------------------

    def adjacency_matrix(self) -> np.ndarray:
        """Dense weighted adjacency matrix A."""
        if "A" not in self._cache:
            A = np.zeros((self.n, self.n))
            for u, v, w in self.edges:
                A[u, v] = w
                A[v, u] = w
            self._cache["A"] = A
        return self._cache["A"]

    def edge_arrays(self):
        """(u, v, w) as three aligned arrays, u < v."""
        if "edge_arrays" not in self._cache:
            if self.edges:
                eu, ev, ew = (np.array(col) for col in zip(*self.edges))
            else:  # single-vertex graph is rejected by connectivity, keep safe
                eu = ev = np.zeros(0, dtype=int)
                ew = np.zeros(0)
            self._cache["edge_arrays"] = (eu.astype(int), ev.astype(int), ew)
        return self._cache["edge_arrays"]

    def csr(self):
        """(indptr, neighbor ids, cumulative transition probabilities).

        Cumulative probabilities within each row end exactly at 1.0 so
        inverse-CDF sampling never falls off the end.
        """
        if "csr" not in self._cache:
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            for x in range(self.n):
                indptr[x + 1] = indptr[x] + len(self.adjacency[x])
            nbr = np.zeros(indptr[-1], dtype=np.int64)
            cum = np.zeros(indptr[-1])
            for x in range(self.n):
                ws = np.array([w for _, w in self.adjacency[x]])
                ids = np.array([y for y, _ in self.adjacency[x]], dtype=np.int64)
                c = np.cumsum(ws / self.vertex_weight[x])
                c[-1] = 1.0
                nbr[indptr[x]:indptr[x + 1]] = ids
                cum[indptr[x]:indptr[x + 1]] = c
            for arr in (indptr, nbr, cum):
                arr.flags.writeable = False
            self._cache["csr"] = (indptr, nbr, cum)
        return self._cache["csr"]

    # -- degrees --------------------------------------------------------

    def degree(self, x: int) -> int:
        return len(self.adjacency[x])

    @property
    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.adjacency])

    @property
    def d_min(self) -> int:
        return int(self.degrees.min())

    @property
    def d_max(self) -> int:
        return int(self.degrees.max())

    @property
    def d_avg(self) -> float:
        return float(self.degrees.mean())

    @property
    def regular(self) -> bool:
        return self.d_min == self.d_max

    def stationary(self) -> np.ndarray:
        """pi(x) = w(x) / vol(V)."""
        return self.vertex_weight / self.total_volume

    def __repr__(self):
        return (f"WeightedGraph({self.label!r}, n={self.n}, "
                f"m={len(self.edges)})")


@dataclass(frozen=True)
class Bipartition:
    """Two-coloring, or an odd closed walk certifying non-bipartiteness.

    `side` is a per-vertex 0/1 array when the graph is bipartite;
    `odd_walk` is a closed vertex sequence (first == last) of odd edge
    count otherwise.
    """

    side: np.ndarray | None
    odd_walk: tuple[int, ...] | None

    @property
    def is_bipartite(self) -> bool:
        return self.side is not None


def build_graph(edge_list, n=None, label="", vertex_transitive=False
                ) -> WeightedGraph:
    """Validate an edge list into a WeightedGraph.

    Rejects self-loops, duplicate edges, nonpositive weights and
    disconnected inputs.  `n` may declare isolated trailing vertices,
    which then fail the connectivity check.
    """
    return WeightedGraph(edge_list, n=n, label=label,
                         vertex_transitive=vertex_transitive)


def bipartiteness(g: WeightedGraph) -> Bipartition:
    """BFS two-coloring; on a parity conflict, return the odd closed walk
    through the BFS tree (conflict edge plus the two tree paths)."""
    side = -np.ones(g.n, dtype=int)
    parent = -np.ones(g.n, dtype=int)
    side[0] = 0
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y, _ in g.adjacency[x]:
            if side[y] < 0:
                side[y] = 1 - side[x]
                parent[y] = x
                queue.append(y)
            elif side[y] == side[x]:
                walk = _close_walk(parent, x, y)
                return Bipartition(side=None, odd_walk=tuple(walk))
    return Bipartition(side=side, odd_walk=None)


def _close_walk(parent, x, y):
    """Odd closed walk x -> root -> y -> x through BFS tree paths."""
    def to_root(v):
        path = [v]
        while parent[path[-1]] >= 0:
            path.append(parent[path[-1]])
        return path

    up = to_root(x)
    down = to_root(y)[::-1]
    # paths meet at the root; walk may repeat vertices, which is fine
    return up + down[1:] + [x]


def distances(g: WeightedGraph, x: int) -> np.ndarray:
    """Hop distances from x on the unweighted skeleton."""
    dist = np.full(g.n, -1, dtype=np.int64)
    dist[x] = 0
    queue = deque([x])
    while queue:
        u = queue.popleft()
        for v, _ in g.adjacency[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def distance_matrix(g: WeightedGraph) -> np.ndarray:
    if "dist" not in g._cache:
        d = np.vstack([distances(g, x) for x in range(g.n)])
        d.flags.writeable = False
        g._cache["dist"] = d
    return g._cache["dist"]


def diameter(g: WeightedGraph) -> int:
    return int(distance_matrix(g).max())


def ball_count(g: WeightedGraph, x: int, r) -> int:
    """Number of vertices within hop distance r of x (r may be real)."""
    if r < 0:
        return 0
    return int((distances(g, x) <= math.floor(r)).sum())


def ball_volume(g: WeightedGraph, x: int, r) -> float:
    """Sum of w(y) over vertices within hop distance r of x."""
    if r < 0:
        return 0.0
    mask = distances(g, x) <= math.floor(r)
    return float(g.vertex_weight[mask].sum())


# -- effective resistance ---------------------------------------------

def resistance_matrix(g: WeightedGraph) -> np.ndarray:
    """All-pairs effective resistance, edges as weight-valued conductors.

    Grounds vertex 0 and inverts the reduced combinatorial Laplacian
    W - A once; R(x, y) = M[x,x] + M[y,y] - 2 M[x,y] with M the grounded
    inverse extended by a zero row/column.
    """
    if "resistance" in g._cache:
        return g._cache["resistance"]
    lap = np.diag(g.vertex_weight) - g.adjacency_matrix()
    reduced = lap[1:, 1:]
    try:
        inv = np.linalg.solve(reduced, np.eye(g.n - 1))
    except np.linalg.LinAlgError as exc:
        raise errors.SingularSolve(str(exc)) from exc
    M = np.zeros((g.n, g.n))
    M[1:, 1:] = inv
    diag = np.diag(M)
    R = diag[:, None] + diag[None, :] - 2 * M
    np.fill_diagonal(R, 0.0)
    R.flags.writeable = False
    g._cache["resistance"] = R
    return R


def effective_resistance(g: WeightedGraph, x: int, y: int) -> float:
    return float(resistance_matrix(g)[x, y])


def resistance_diameter(g: WeightedGraph) -> float:
    return float(resistance_matrix(g).max())


def diameter_regular_bound(g: WeightedGraph) -> BoundCheck:
    """Diameter against 3n/(d_min + 1) - 1; holds on every finite simple
    connected graph."""
    lhs = float(diameter(g))
    rhs = 3.0 * g.n / (g.d_min + 1) - 1.0
    return BoundCheck.make("diameter_min_degree", "diameter-vs-min-degree",
                           lhs, rhs, "le", {"graph": g.label})


# -- generators --------------------------------------------------------

def _cycle(n):
    if n < 3:
        raise errors.InfeasibleParams("cycle needs n >= 3")
    return [(i, (i + 1) % n, 1.0) for i in range(n)]


def _complete(n):
    if n < 2:
        raise errors.InfeasibleParams("complete graph needs n >= 2")
    return [(i, j, 1.0) for i in range(n) for j in range(i + 1, n)]


def _hypercube(k):
    if k < 1:
        raise errors.InfeasibleParams("hypercube needs k >= 1")
    edges = []
    for v in range(1 << k):
        for b in range(k):
            u = v ^ (1 << b)
            if v < u:
                edges.append((v, u, 1.0))
    return edges


def _circulant(n, offsets):
    offsets = sorted({int(o) % n for o in offsets} - {0})
    if not offsets:
        raise errors.InfeasibleParams("circulant needs a nonzero offset")
    edges = set()
    for i in range(n):
        for o in offsets:
            j = (i + o) % n
            if i != j:
                edges.add((min(i, j), max(i, j)))
    return [(u, v, 1.0) for u, v in sorted(edges)]


def _random_regular(n, d, rng):
    """Pairing (configuration) model with rejection of loops/multi-edges."""
    if n * d % 2 != 0 or d >= n or d < 1:
        raise errors.InfeasibleParams(f"no {d}-regular graph on {n} vertices")
    for _ in range(10_000):
        stubs = np.repeat(np.arange(n), d)
        rng.shuffle(stubs)
        pairs = stubs.reshape(-1, 2)
        edges = set()
        ok = True
        for a, b in pairs:
            a, b = int(a), int(b)
            if a == b or (min(a, b), max(a, b)) in edges:
                ok = False
                break
            edges.add((min(a, b), max(a, b)))
        if ok:
            return [(u, v, 1.0) for u, v in sorted(edges)]
    raise errors.InfeasibleParams("pairing model failed to converge")


def _grid_torus(dims):
    dims = [int(d) for d in dims]
    if any(d < 3 for d in dims) or not dims:
        raise errors.InfeasibleParams("torus needs every dimension >= 3")
    n = math.prod(dims)
    strides = np.cumprod([1] + dims[:-1]).tolist()

    def flat(coord):
        return sum(c * s for c, s in zip(coord, strides))

    edges = set()
    for v in range(n):
        coord = []
        rest = v
        for d in dims:
            coord.append(rest % d)
            rest //= d
        for axis, d in enumerate(dims):
            nb = list(coord)
            nb[axis] = (nb[axis] + 1) % d
            u = flat(nb)
            if u != v:
                edges.add((min(v, u), max(v, u)))
    return [(u, v, 1.0) for u, v in sorted(edges)]


def _lollipop(m, k):
    """Complete graph on m vertices with a k-vertex path attached."""
    if m < 3 or k < 1:
        raise errors.InfeasibleParams("lollipop needs m >= 3 and k >= 1")
    edges = _complete(m)
    prev = m - 1
    for i in range(k):
        edges.append((prev, m + i, 1.0))
        prev = m + i
    return edges


def generate(kind: str, params: dict, seed: int = 0) -> WeightedGraph:
    """Deterministic graph generator.

    kind in {cycle, complete, hypercube, circulant, random_regular,
    grid_torus, lollipop}.  Circulants with symmetric offsets (and the
    cycle/complete/hypercube/torus families) are vertex-transitive and
    flagged as such.
    """
    rng = np.random.default_rng(seed)
    transitive = False
    if kind == "cycle":
        n = int(params["n"])
        edges, transitive = _cycle(n), True
        label = f"cycle({n})"
    elif kind == "complete":
        n = int(params["n"])
        edges, transitive = _complete(n), True
        label = f"complete({n})"
    elif kind == "hypercube":
        k = int(params["k"])
        edges, transitive = _hypercube(k), True
        label = f"hypercube({k})"
    elif kind == "circulant":
        n = int(params["n"])
        offsets = tuple(params["offsets"])
        edges, transitive = _circulant(n, offsets), True
        label = f"circulant({n},{'-'.join(str(o) for o in sorted(set(offsets)))})"
    elif kind == "random_regular":
        n, d = int(params["n"]), int(params["d"])
        edges = _random_regular(n, d, rng)
        label = f"random_regular({n},{d},seed={seed})"
    elif kind == "grid_torus":
        dims = tuple(int(d) for d in params["dims"])
        edges, transitive = _grid_torus(dims), True
        label = f"grid_torus({'x'.join(str(d) for d in dims)})"
    elif kind == "lollipop":
        m, k = int(params["m"]), int(params["k"])
        edges = _lollipop(m, k)
        label = f"lollipop({m},{k})"
    else:
        raise errors.InfeasibleParams(f"unknown generator kind {kind!r}")
    return WeightedGraph(edges, label=label, vertex_transitive=transitive)


def petersen() -> WeightedGraph:
    """The Petersen graph: outer 5-cycle, inner pentagram, spokes."""
    edges = [(i, (i + 1) % 5, 1.0) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5, 1.0) for i in range(5)]
    edges += [(i, 5 + i, 1.0) for i in range(5)]
    return WeightedGraph(edges, label="petersen", vertex_transitive=True)


def random_connected(n: int, extra_edges: int, seed: int = 0
                     ) -> WeightedGraph:
    """Random connected unweighted graph: uniform attachment tree plus
    extra random non-tree edges.  Deterministic for fixed seed."""
    if n < 2:
        raise errors.InfeasibleParams("need n >= 2")
    rng = np.random.default_rng(seed)
    edges = set()
    for v in range(1, n):
        u = int(rng.integers(0, v))
        edges.add((u, v))
    candidates = [(u, v) for u in range(n) for v in range(u + 1, n)
                  if (u, v) not in edges]
    rng.shuffle(candidates)
    for u, v in candidates[:extra_edges]:
        edges.add((u, v))
    return WeightedGraph([(u, v, 1.0) for u, v in sorted(edges)],
                         label=f"random_connected({n},{extra_edges},seed={seed})")


# -- IO -----------------------------------------------------------------

def to_csv(g: WeightedGraph) -> str:
    """Edge-list CSV with header u,v,w; floats use repr so that the
    round trip is bit-exact."""
    lines = ["u,v,w"]
    for u, v, w in g.edges:
        lines.append(f"{u},{v},{w!r}")
    return "\n".join(lines) + "\n"


def from_csv(text: str, label="") -> WeightedGraph:
    reader = io.StringIO(text)
    header = reader.readline().strip()
    if header != "u,v,w":
        raise IOError(f"bad edge-list header {header!r}")
    edges = []
    for lineno, line in enumerate(reader, start=2):
        line = line.strip()
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 3:
            raise IOError(f"line {lineno}: expected u,v,w")
        try:
            edges.append((int(parts[0]), int(parts[1]), float(parts[2])))
        except ValueError as exc:
            raise IOError(f"line {lineno}: {exc}") from exc
    return build_graph(edges, label=label)


def to_json_dict(g: WeightedGraph) -> dict:
    return {"n": g.n, "edges": [[u, v, w] for u, v, w in g.edges]}


def from_json_dict(data: dict, label="") -> WeightedGraph:
    try:
        n = int(data["n"])
        edges = [(int(u), int(v), float(w)) for u, v, w in data["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise IOError(f"bad graph JSON: {exc}") from exc
    return build_graph(edges, n=n, label=label)
