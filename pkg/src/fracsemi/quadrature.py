"""Composite Gauss-Legendre rules and a level-doubling refinement driver."""
from functools import lru_cache

import numpy as np

from .errors import QuadratureError


@lru_cache(maxsize=None)
def leggauss(order):
    """Gauss-Legendre nodes and weights on [-1, 1] (cached, read-only)."""
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def composite_rule(edges, order):
    """Nodes and weights of the composite Gauss-Legendre rule on ``edges``.

    Parameters
    ----------
    edges : array_like
        Increasing panel boundaries.
    order : int
        Number of nodes per panel.

    Returns
    -------
    nodes, weights : ndarray
        Flat arrays of length ``order * (len(edges) - 1)``.
    """
    edges = np.asarray(edges, dtype=float)
    x, w = leggauss(order)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def geometric_edges(lo, hi, ratio=2.0):
    """Panel edges from ``lo`` to ``hi`` (both > 0) growing by ``ratio``."""
    count = max(1, int(np.ceil(np.log(hi / lo) / np.log(ratio))))
    return np.geomspace(lo, hi, count + 1)


def bisect_edges(edges):
    """Split every panel in two."""
    edges = np.asarray(edges, dtype=float)
    mids = 0.5 * (edges[1:] + edges[:-1])
    out = np.empty(2 * len(edges) - 1)
    out[0::2] = edges
    out[1::2] = mids
    return out


def refine_until_stable(evaluate, edges, order, rtol, atol=0.0, budget=2**20):
    """Integrate by doubling the panel count until two levels agree.

    ``evaluate(nodes)`` must return integrand values with the node axis last,
    so vector-valued integrands (one row per output) are supported.  The
    returned value is the finest level.

    Raises
    ------
    QuadratureError
        If the number of integrand evaluations would exceed ``budget``.
    """
    used = 0
    nodes, weights = composite_rule(edges, order)
    used += nodes.size
    previous = evaluate(nodes) @ weights
    while True:
        edges = bisect_edges(edges)
        nodes, weights = composite_rule(edges, order)
        used += nodes.size
        if used > budget:
            raise QuadratureError(
                f"refinement budget of {budget} evaluations exhausted"
            )
        current = evaluate(nodes) @ weights
        scale = np.maximum(np.abs(current), np.abs(previous))
        if np.all(np.abs(current - previous) <= rtol * scale + atol):
            return current
        previous = current
