"""Uniform and Shishkin (layer-adapted) partitions of [0, 1].

The Shishkin mesh splits [0, 1] at the transition point

    tau = min(1/2, sigma * epsilon * ln(N) / alpha)

and places N/2 equal elements in the layer region [0, tau] and N/2 equal
elements in [tau, 1].  The boundary layer sits at x = 0, so the fine half
is always on the left.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidParameterError


class MeshKind(str, Enum):
    UNIFORM = "uniform"
    SHISHKIN = "shishkin"


def _validate_n_intervals(n_intervals: int, field: str = "n_intervals") -> None:
    if not isinstance(n_intervals, (int, np.integer)) or isinstance(n_intervals, bool):
        raise InvalidParameterError(field, f"must be an integer, got {n_intervals!r}")
    if n_intervals < 4:
        raise InvalidParameterError(field, f"must be >= 4, got {n_intervals}")
    if n_intervals % 2 != 0:
        raise InvalidParameterError(field, f"must be even, got {n_intervals}")


@dataclass(frozen=True)
class ShishkinParams:
    """Parameters of the layer-adapted mesh.

    alpha is the lower bound of the convection coefficient and sigma the
    mesh constant; sigma >= 2 is required for the interpolation theory
    behind the (N^-1 ln N)^2 error bound.
    """

    n_intervals: int
    epsilon: float
    alpha: float = 1.0
    sigma: float = 3.0

    def __post_init__(self) -> None:
        _validate_n_intervals(self.n_intervals)
        if not (0.0 < self.epsilon <= 1.0):
            raise InvalidParameterError(
                "epsilon", f"must be in (0, 1], got {self.epsilon}"
            )
        if not self.alpha > 0.0:
            raise InvalidParameterError("alpha", f"must be > 0, got {self.alpha}")
        if not self.sigma >= 2.0:
            raise InvalidParameterError("sigma", f"must be >= 2, got {self.sigma}")


@dataclass(frozen=True)
class Mesh1D:
    """An ordered partition of [0, 1].

    nodes has n_intervals + 1 entries with nodes[0] = 0 and nodes[-1] = 1;
    element_lengths[k] = nodes[k+1] - nodes[k].  tau is the Shishkin
    transition point and is None for uniform meshes.
    """

    nodes: np.ndarray
    element_lengths: np.ndarray
    kind: MeshKind
    n_intervals: int
    tau: float | None = None

    @property
    def n_interior(self) -> int:
        return self.n_intervals - 1

    def interior_nodes(self) -> np.ndarray:
        return self.nodes[1:-1]

    def midpoints(self) -> np.ndarray:
        return 0.5 * (self.nodes[:-1] + self.nodes[1:])


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    a.setflags(write=False)
    return a


def build_uniform(n_intervals: int) -> Mesh1D:
    """Equidistant mesh with h = 1/N."""
    _validate_n_intervals(n_intervals)
    nodes = np.linspace(0.0, 1.0, n_intervals + 1)
    return Mesh1D(
        nodes=_freeze(nodes),
        element_lengths=_freeze(np.diff(nodes)),
        kind=MeshKind.UNIFORM,
        n_intervals=n_intervals,
    )


def build_shishkin(params: ShishkinParams) -> Mesh1D:
    """Piecewise-equidistant mesh refined toward the layer at x = 0."""
    n = params.n_intervals
    tau = min(0.5, params.sigma * params.epsilon * math.log(n) / params.alpha)
    h_fine = 2.0 * tau / n
    h_coarse = 2.0 * (1.0 - tau) / n
    lengths = np.concatenate(
        [np.full(n // 2, h_fine), np.full(n // 2, h_coarse)]
    )
    nodes = np.concatenate([[0.0], np.cumsum(lengths)])
    nodes[-1] = 1.0  # kill accumulated round-off in the last node
    return Mesh1D(
        nodes=_freeze(nodes),
        element_lengths=_freeze(np.diff(nodes)),
        kind=MeshKind.SHISHKIN,
        n_intervals=n,
        tau=tau,
    )


def check_assumption(params: ShishkinParams, c: float) -> bool:
    """True iff epsilon <= c / N, the convection-dominated regime flag."""
    if not c > 0.0:
        raise InvalidParameterError("c", f"must be > 0, got {c}")
    return params.epsilon <= c / params.n_intervals
