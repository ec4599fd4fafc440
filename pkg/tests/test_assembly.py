"""Assembly: local blocks, global stencils, and quadrature exactness."""

from types import SimpleNamespace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from layerfem import (
    AssembledSystem,
    InvalidParameterError,
    ProblemCoefficients,
    ShishkinParams,
    assemble_cdr,
    assemble_poisson,
    build_shishkin,
    build_uniform,
    element_matrices,
    load_vector,
    load_vector_from_solution,
)
from layerfem.tridiag import matvec


def to_dense(matrix):
    n = matrix.n
    dense = np.zeros((n, n))
    dense[np.arange(n), np.arange(n)] = matrix.diag
    dense[np.arange(1, n), np.arange(n - 1)] = matrix.sub
    dense[np.arange(n - 1), np.arange(1, n)] = matrix.sup
    return dense


def reference_load(mesh, coefficients):
    """(p, phi_i) for a polynomial p, integrated elementwise in closed form."""
    p = np.polynomial.Polynomial(coefficients)
    nodes = mesh.nodes
    out = np.zeros(nodes.shape[0])
    for k, (a, b) in enumerate(zip(nodes[:-1], nodes[1:])):
        h = b - a
        left = p * np.polynomial.Polynomial([b / h, -1.0 / h])
        right = p * np.polynomial.Polynomial([-a / h, 1.0 / h])
        out[k] += left.integ()(b) - left.integ()(a)
        out[k + 1] += right.integ()(b) - right.integ()(a)
    return out[1:-1]


class TestElementMatrices:
    def test_unit_element(self):
        stiffness, convection, mass = element_matrices(1.0)
        assert np.array_equal(stiffness, [[1.0, -1.0], [-1.0, 1.0]])
        assert np.array_equal(convection, [[-0.5, 0.5], [-0.5, 0.5]])
        assert np.allclose(mass, [[1 / 3, 1 / 6], [1 / 6, 1 / 3]], atol=1e-16)

    def test_quarter_element_mass(self):
        _, _, mass = element_matrices(0.25)
        assert np.allclose(mass, [[1 / 12, 1 / 24], [1 / 24, 1 / 12]], atol=1e-17)

    def test_scaling_in_h(self):
        s1, c1, m1 = element_matrices(0.5)
        s2, c2, m2 = element_matrices(0.125)
        assert np.allclose(s2, 4.0 * s1)
        assert np.array_equal(c1, c2)  # convection block is h-free
        assert np.allclose(m2, m1 / 4.0)

    def test_structure(self):
        stiffness, convection, mass = element_matrices(0.3)
        assert np.allclose(stiffness.sum(axis=1), 0.0, atol=1e-15)
        assert np.allclose(convection.sum(axis=1), 0.0, atol=1e-15)
        assert np.allclose(mass.sum(), 0.3, atol=1e-15)  # integral of 1*1
        assert np.allclose(stiffness, stiffness.T)
        assert np.allclose(mass, mass.T)

    @pytest.mark.parametrize("h", [0.0, -0.25])
    def test_rejects_nonpositive_length(self, h):
        with pytest.raises(InvalidParameterError) as excinfo:
            element_matrices(h)
        assert excinfo.value.field == "h"


class TestCoefficients:
    def test_defaults(self):
        coeffs = ProblemCoefficients(epsilon=1e-8)
        assert coeffs.a == 1.0 and coeffs.b == 1.0

    @pytest.mark.parametrize(
        "kwargs, field",
        [
            ({"epsilon": 0.0}, "epsilon"),
            ({"epsilon": 2.0}, "epsilon"),
            ({"epsilon": -1e-8}, "epsilon"),
            ({"epsilon": 0.5, "a": 0.0}, "a"),
            ({"epsilon": 0.5, "b": -1.0}, "b"),
        ],
    )
    def test_validation(self, kwargs, field):
        with pytest.raises(InvalidParameterError) as excinfo:
            ProblemCoefficients(**kwargs)
        assert excinfo.value.field == field


class TestPoisson:
    def test_uniform_stencil(self):
        system = assemble_poisson(build_uniform(4))
        assert np.allclose(system.matrix.diag, 8.0, atol=1e-12)
        assert np.allclose(system.matrix.sub, -4.0, atol=1e-12)
        assert np.allclose(system.matrix.sup, -4.0, atol=1e-12)

    def test_no_diffusion_scaling(self):
        # the first-stage operator carries no eps factor
        system = assemble_poisson(build_uniform(16))
        assert np.allclose(system.matrix.diag, 32.0, atol=1e-10)

    def test_shishkin_transition_row(self):
        mesh = build_shishkin(ShishkinParams(n_intervals=8, epsilon=1e-8))
        system = assemble_poisson(mesh)
        h = mesh.element_lengths
        i = mesh.n_intervals // 2 - 1  # interior index of the node at tau
        assert system.matrix.diag[i] == pytest.approx(1.0 / h[i] + 1.0 / h[i + 1])
        assert system.matrix.sub[i - 1] == pytest.approx(-1.0 / h[i])
        assert system.matrix.sup[i] == pytest.approx(-1.0 / h[i + 1])

    def test_symmetry(self):
        mesh = build_shishkin(ShishkinParams(n_intervals=16, epsilon=1e-4))
        system = assemble_poisson(mesh)
        assert np.array_equal(system.matrix.sub, system.matrix.sup)


class TestCdr:
    def test_uniform_combined_stencil(self):
        n, eps = 8, 1e-2
        h = 1.0 / n
        system = assemble_cdr(build_uniform(n), ProblemCoefficients(epsilon=eps))
        m = n - 1
        S = 2.0 * np.eye(m) - np.eye(m, k=1) - np.eye(m, k=-1)
        C = 0.5 * (np.eye(m, k=1) - np.eye(m, k=-1))
        M = 4.0 * np.eye(m) + np.eye(m, k=1) + np.eye(m, k=-1)
        expected = (eps / h) * S - C + (h / 6.0) * M
        assert np.max(np.abs(to_dense(system.matrix) - expected)) < 1e-13

    def test_convection_sits_in_skew_part(self):
        mesh = build_shishkin(ShishkinParams(n_intervals=16, epsilon=1e-6))
        a = 2.5
        with_a = assemble_cdr(mesh, ProblemCoefficients(epsilon=1e-6, a=a))
        skew = 0.5 * (to_dense(with_a.matrix) - to_dense(with_a.matrix).T)
        m = with_a.matrix.n
        assert np.allclose(np.diag(skew, k=-1), a / 2.0, atol=1e-12)
        assert np.allclose(np.diag(skew, k=1), -a / 2.0, atol=1e-12)
        assert np.allclose(skew - np.diag(np.diag(skew, -1), -1)
                           - np.diag(np.diag(skew, 1), 1), 0.0, atol=1e-15)
        assert m == 15

    def test_quadratic_form_positive(self):
        rng = np.random.default_rng(7)
        mesh = build_shishkin(ShishkinParams(n_intervals=32, epsilon=1e-8))
        system = assemble_cdr(mesh, ProblemCoefficients(epsilon=1e-8))
        for _ in range(20):
            v = rng.standard_normal(system.matrix.n)
            assert float(v @ matvec(system.matrix, v)) > 0.0

    def test_reaction_free_limit(self):
        n, eps = 8, 0.25
        system = assemble_cdr(build_uniform(n), ProblemCoefficients(epsilon=eps, b=0.0))
        assert np.allclose(system.matrix.diag, 2.0 * eps * n, atol=1e-13)
        assert np.allclose(system.matrix.sub, -eps * n + 0.5, atol=1e-13)
        assert np.allclose(system.matrix.sup, -eps * n - 0.5, atol=1e-13)


class TestAssembledSystem:
    def test_dimension_guard(self):
        mesh = build_uniform(8)
        wrong = assemble_poisson(build_uniform(4)).matrix
        with pytest.raises(InvalidParameterError) as excinfo:
            AssembledSystem(matrix=wrong, mesh=mesh)
        assert excinfo.value.field == "matrix"

    def test_rhs_length_guard(self):
        mesh = build_uniform(8)
        matrix = assemble_poisson(mesh).matrix
        with pytest.raises(InvalidParameterError):
            AssembledSystem(matrix=matrix, mesh=mesh, rhs=np.zeros(3))


class TestLoadVector:
    def test_constant_source_uniform(self):
        mesh = build_uniform(8)
        assert np.allclose(load_vector(mesh, lambda x: np.ones_like(x)), 0.125,
                           atol=1e-15)

    def test_linear_source_uniform(self):
        mesh = build_uniform(8)
        rhs = load_vector(mesh, lambda x: x)
        assert np.allclose(rhs, 0.125 * mesh.interior_nodes(), atol=1e-15)

    def test_constant_source_shishkin(self):
        mesh = build_shishkin(ShishkinParams(n_intervals=16, epsilon=1e-6))
        h = mesh.element_lengths
        rhs = load_vector(mesh, lambda x: np.ones_like(x))
        assert np.allclose(rhs, (h[:-1] + h[1:]) / 2.0, rtol=1e-13)

    def test_scalar_callable_fallback(self):
        mesh = build_uniform(4)
        vectorized = load_vector(mesh, lambda x: x * x)
        scalar_only = load_vector(mesh, lambda x: float(x) ** 2)
        assert np.array_equal(vectorized, scalar_only)

    @given(
        coefficients=st.lists(
            st.floats(min_value=-5.0, max_value=5.0, allow_nan=False),
            min_size=1, max_size=3,
        ),
        n=st.sampled_from([4, 8, 16, 32]),
        shishkin=st.booleans(),
    )
    @settings(deadline=None, max_examples=60)
    def test_quadratic_sources_integrated_exactly(self, coefficients, n, shishkin):
        if shishkin:
            mesh = build_shishkin(ShishkinParams(n_intervals=n, epsilon=1e-4))
        else:
            mesh = build_uniform(n)
        p = np.polynomial.Polynomial(coefficients)
        rhs = load_vector(mesh, p)
        expected = reference_load(mesh, coefficients)
        assert np.allclose(rhs, expected, rtol=1e-12, atol=1e-14)


class TestLoadVectorFromSolution:
    def test_plateau_example(self):
        # nodal values [0, 1, 1, 1, 0] on h = 1/4: first entry 5h/6
        mesh = build_uniform(4)
        rhs = load_vector_from_solution(mesh, np.array([0.0, 1.0, 1.0, 1.0, 0.0]))
        h = 0.25
        assert rhs[0] == pytest.approx(5.0 * h / 6.0, rel=1e-14)
        assert rhs[1] == pytest.approx(h, rel=1e-14)
        assert rhs[2] == pytest.approx(5.0 * h / 6.0, rel=1e-14)

    def test_matches_gauss_on_interpolant(self):
        # Gauss-2 is exact on the product of two piecewise linears, so
        # feeding the interpolant through load_vector must reproduce the
        # mass-quadrature path.
        mesh = build_shishkin(ShishkinParams(n_intervals=16, epsilon=1e-6))
        rng = np.random.default_rng(3)
        v = rng.standard_normal(mesh.nodes.shape[0])
        direct = load_vector_from_solution(mesh, v, quadrature="mass")
        via_gauss = load_vector(mesh, lambda x: np.interp(x, mesh.nodes, v))
        assert np.allclose(direct, via_gauss, rtol=1e-12, atol=1e-15)

    def test_trapezoid_collocates(self):
        mesh = build_shishkin(ShishkinParams(n_intervals=8, epsilon=1e-8))
        v = mesh.nodes * (1.0 - mesh.nodes)
        h = mesh.element_lengths
        rhs = load_vector_from_solution(mesh, v, quadrature="trapezoid")
        assert np.allclose(rhs, v[1:-1] * (h[:-1] + h[1:]) / 2.0, rtol=1e-15)

    def test_accepts_solution_like_object(self):
        mesh = build_uniform(4)
        v = np.array([0.0, 1.0, 2.0, 1.0, 0.0])
        wrapped = SimpleNamespace(values=v)
        assert np.array_equal(
            load_vector_from_solution(mesh, wrapped),
            load_vector_from_solution(mesh, v),
        )

    def test_rejects_unknown_quadrature(self):
        mesh = build_uniform(4)
        with pytest.raises(InvalidParameterError) as excinfo:
            load_vector_from_solution(mesh, np.zeros(5), quadrature="simpson")
        assert excinfo.value.field == "quadrature"

    def test_rejects_length_mismatch(self):
        mesh = build_uniform(4)
        with pytest.raises(InvalidParameterError) as excinfo:
            load_vector_from_solution(mesh, np.zeros(4))
        assert excinfo.value.field == "w"
