"""Linear finite element assembly on arbitrary meshes of [0, 1].

Hat basis functions with homogeneous Dirichlet conditions eliminated:
all assembled operators act on the n - 1 interior nodes.  Two bilinear
forms are covered, the Poisson form (w', v') and the
convection-diffusion-reaction form

    eps (u', v') - a (u', v) + b (u, v)

whose uniform-mesh matrix is (eps/h) S - C + (h/6) M for a = b = 1, with
S = tridiag(-1, 2, -1), C = (1/2) tridiag(-1, 0, 1) and
M = tridiag(1, 4, 1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError
from .mesh import Mesh1D
from .tridiag import TridiagonalMatrix

# 2-point Gauss-Legendre rule on [0, 1]: exact for cubics, so exact for
# any quadratic source against a linear hat.
_GAUSS2_POINTS = (0.5 - 0.5 / np.sqrt(3.0), 0.5 + 0.5 / np.sqrt(3.0))


@dataclass(frozen=True)
class ProblemCoefficients:
    """Constant coefficients eps, a, b with eps in (0, 1], a > 0, b >= 0."""

    epsilon: float
    a: float = 1.0
    b: float = 1.0

    def __post_init__(self) -> None:
        if not (0.0 < self.epsilon <= 1.0):
            raise InvalidParameterError(
                "epsilon", f"must be in (0, 1], got {self.epsilon}"
            )
        if not self.a > 0.0:
            raise InvalidParameterError("a", f"must be > 0, got {self.a}")
        if not self.b >= 0.0:
            raise InvalidParameterError("b", f"must be >= 0, got {self.b}")


@dataclass(frozen=True)
class AssembledSystem:
    """Interior-node operator, optional right-hand side, and its mesh."""

    matrix: TridiagonalMatrix
    mesh: Mesh1D
    rhs: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.matrix.n != self.mesh.n_interior:
            raise InvalidParameterError(
                "matrix",
                f"dimension {self.matrix.n} != interior node count "
                f"{self.mesh.n_interior}",
            )
        if self.rhs is not None and self.rhs.shape != (self.matrix.n,):
            raise InvalidParameterError("rhs", "length must match matrix dimension")


def element_matrices(h: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Local 2x2 (stiffness, convection, mass) blocks on one element.

    stiffness = (1/h) [[1, -1], [-1, 1]], convection[i][j] = integral of
    phi_j' phi_i (h-independent), mass = (h/6) [[2, 1], [1, 2]].
    """
    if not h > 0.0:
        raise InvalidParameterError("h", f"must be > 0, got {h}")
    stiffness = np.array([[1.0, -1.0], [-1.0, 1.0]]) / h
    convection = np.array([[-0.5, 0.5], [-0.5, 0.5]])
    mass = np.array([[2.0, 1.0], [1.0, 2.0]]) * (h / 6.0)
    return stiffness, convection, mass


def assemble_poisson(mesh: Mesh1D) -> AssembledSystem:
    """Interior operator of (w', v'); on a uniform mesh this is (1/h) S."""
    h = mesh.element_lengths
    diag = 1.0 / h[:-1] + 1.0 / h[1:]
    off = -1.0 / h[1:-1]
    matrix = TridiagonalMatrix(sub=off, diag=diag, sup=off.copy())
    return AssembledSystem(matrix=matrix, mesh=mesh)


def assemble_cdr(mesh: Mesh1D, coeffs: ProblemCoefficients) -> AssembledSystem:
    """Interior operator of eps (u', v') - a (u', v) + b (u, v)."""
    eps, a, b = coeffs.epsilon, coeffs.a, coeffs.b
    h = mesh.element_lengths
    diag = eps * (1.0 / h[:-1] + 1.0 / h[1:]) + b * (h[:-1] + h[1:]) / 3.0
    shared = h[1:-1]  # element between consecutive interior nodes
    sub = -eps / shared + a / 2.0 + b * shared / 6.0
    sup = -eps / shared - a / 2.0 + b * shared / 6.0
    matrix = TridiagonalMatrix(sub=sub, diag=diag, sup=sup)
    return AssembledSystem(matrix=matrix, mesh=mesh)


def load_vector(mesh: Mesh1D, f) -> np.ndarray:
    """Entries (f, phi_i) for interior i via 2-point Gauss per element."""
    nodes = mesh.nodes
    h = mesh.element_lengths
    accum = np.zeros(nodes.shape[0])
    for xi in _GAUSS2_POINTS:
        x = nodes[:-1] + xi * h
        fx = _evaluate(f, x)
        accum[:-1] += 0.5 * h * fx * (1.0 - xi)  # weight of the left hat
        accum[1:] += 0.5 * h * fx * xi           # weight of the right hat
    return accum[1:-1]


def _evaluate(f, x: np.ndarray) -> np.ndarray:
    try:
        fx = np.asarray(f(x), dtype=float)
        if fx.shape == x.shape:
            return fx
        if fx.ndim == 0:
            return np.broadcast_to(fx, x.shape)
    except (TypeError, ValueError):
        pass
    return np.asarray([float(f(float(v))) for v in x])


def load_vector_from_solution(mesh: Mesh1D, w, quadrature: str = "mass") -> np.ndarray:
    """Entries (w_n, phi_i) for a piecewise-linear w_n given by nodal values.

    quadrature="mass" integrates the product exactly (tridiagonal mass
    stencil (h/6)[1, 4, 1] on uniform meshes); "trapezoid" collapses the
    stencil to nodal collocation, w_i (h_i + h_{i+1}) / 2.
    """
    v = np.ascontiguousarray(getattr(w, "values", w), dtype=float)
    if v.shape != mesh.nodes.shape:
        raise InvalidParameterError(
            "w", f"expected {mesh.nodes.shape[0]} nodal values, got {v.shape}"
        )
    h = mesh.element_lengths
    if quadrature == "mass":
        return (
            h[:-1] / 6.0 * (v[:-2] + 2.0 * v[1:-1])
            + h[1:] / 6.0 * (2.0 * v[1:-1] + v[2:])
        )
    if quadrature == "trapezoid":
        return v[1:-1] * (h[:-1] + h[1:]) / 2.0
    raise InvalidParameterError(
        "quadrature", f"must be 'mass' or 'trapezoid', got {quadrature!r}"
    )
