"""Walk operators on a graph and their quadratic forms.

Four dense operators are built from a WeightedGraph:

* transition:   P[x, y] = w(x, y) / w(x)
* laplacian:    I - P
* signless:     I + P
* combinatorial_signless:  W + A  (W the diagonal vertex-weight matrix)

The first three are self-adjoint in the w-weighted inner product, the
last in the standard one.  `symmetrize` conjugates a w-self-adjoint
operator by W^(1/2) so a standard symmetric eigensolver applies.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .constants import SYMMETRY_TOL
from .graphs import WeightedGraph


class OperatorKind(str, Enum):
    TRANSITION = "transition"
    LAPLACIAN = "laplacian"
    SIGNLESS = "signless"
    COMBINATORIAL_SIGNLESS = "combinatorial_signless"


WEIGHTED = "weighted_w"
STANDARD = "standard"


@dataclass(frozen=True)
class GraphOperator:
    kind: OperatorKind
    matrix: np.ndarray
    inner_product: str
    graph: WeightedGraph


def build_operator(g: WeightedGraph, kind: OperatorKind) -> GraphOperator:
    kind = OperatorKind(kind)
    A = g.adjacency_matrix()
    if kind is OperatorKind.COMBINATORIAL_SIGNLESS:
        matrix = np.diag(g.vertex_weight) + A
        ip = STANDARD
    else:
        P = A / g.vertex_weight[:, None]
        if kind is OperatorKind.TRANSITION:
            matrix = P
        elif kind is OperatorKind.LAPLACIAN:
            matrix = np.eye(g.n) - P
        else:
            matrix = np.eye(g.n) + P
        ip = WEIGHTED
    matrix.flags.writeable = False
    return GraphOperator(kind=kind, matrix=matrix, inner_product=ip, graph=g)


def weighted_inner(g: WeightedGraph, f, h) -> float:
    """<f, h>_w = sum_x w(x) f(x) h(x) for real vertex functions."""
    return float(np.dot(g.vertex_weight * np.asarray(f), np.asarray(h)))


def edge_sum_form(g: WeightedGraph, f) -> float:
    """sum over edges of w(u, v) * |f(u) + f(v)|^2."""
    f = np.asarray(f, dtype=float)
    eu, ev, ew = g.edge_arrays()
    if eu.size == 0:
        return 0.0
    s = f[eu] + f[ev]
    return float(np.dot(ew, s * s))


def q_form(g: WeightedGraph, f) -> float:
    """Quadratic form of the signless operator, evaluated edge-wise.

    Equals <(I+P) f, f>_w; the spectral test suite cross-checks the two
    routes against each other.
    """
    return edge_sum_form(g, f)


def theta_form(g: WeightedGraph, f) -> float:
    """Quadratic form of W + A in the standard inner product; the same
    edge-wise sum as q_form but checked against <(W+A) f, f>."""
    return edge_sum_form(g, f)


def symmetrize(op: GraphOperator) -> np.ndarray:
    """S = W^(1/2) M W^(-1/2); similar to M, symmetric for weighted ops."""
    if op.inner_product != WEIGHTED:
        raise ValueError("symmetrize applies to w-self-adjoint operators")
    sq = np.sqrt(op.graph.vertex_weight)
    S = (sq[:, None] * op.matrix) / sq[None, :]
    dev = float(np.abs(S - S.T).max())
    if dev > SYMMETRY_TOL:
        raise ValueError(f"symmetrized operator deviates by {dev}")
    return S
