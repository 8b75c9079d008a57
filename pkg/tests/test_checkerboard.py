import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zitterlab import checkerboard as cb
from zitterlab.errors import CapExceeded, DomainError, InsufficientHistory
from zitterlab.proc_calc import Amplitude

S = 1 / math.sqrt(2)


def close(amp, z, tol=1e-15):
    return abs(complex(amp) - z) <= tol


# -- matrices ----------------------------------------------------------------------


def test_default_matrices_entrywise():
    m = cb.make_step_matrices()
    np.testing.assert_allclose(m.P, S * np.array([[1, 1j], [0, 0]]), rtol=0, atol=1e-15)
    np.testing.assert_allclose(m.Q, S * np.array([[0, 0], [1j, 1]]), rtol=0, atol=1e-15)
    assert m.cy.real == 0 and m.cx.imag == 0  # exact quarter turn on the default branch
    assert m.unitarity_error() <= 1e-15


def test_other_branch():
    m = cb.make_step_matrices(0.6, 3 * math.pi / 2)
    assert m.cx == 0.8 and m.cy == -0.6j
    assert m.unitarity_error() <= 1e-15
    # angles equal mod 2 pi select the same branch
    assert cb.make_step_matrices(0.6, -math.pi / 2).cy == m.cy
    assert cb.make_step_matrices(0.6, 5 * math.pi / 2).cy == 0.6j


@pytest.mark.parametrize("b,theta", [(0.0, math.pi / 2), (1.0, math.pi / 2), (-0.2, math.pi / 2),
                                     (0.5, 0.0), (0.5, math.pi), (0.5, 1.0)])
def test_matrix_domain(b, theta):
    with pytest.raises(DomainError):
        cb.make_step_matrices(b, theta)


@settings(max_examples=200)
@given(st.floats(1e-9, 1 - 1e-9), st.sampled_from([math.pi / 2, 3 * math.pi / 2]))
def test_unitarity_property(b, theta):
    m = cb.make_step_matrices(b, theta)
    assert m.unitarity_error() <= 1e-12
    x, y = m.cx, m.cy
    assert abs(x.conjugate() * y + y.conjugate() * x) <= 1e-15


def test_dirac_matrices():
    m = cb.dirac_matrices(2.0, 1 / 64)
    assert m.b == 1 / 32 and m.cy == 1j / 32
    free = cb.dirac_matrices(0.0, 0.1)
    assert free.cx == 1 and free.cy == 0
    with pytest.raises(DomainError):
        cb.dirac_matrices(10.0, 0.1)


# -- one step ------------------------------------------------------------------------


def test_point_source_one_step():
    f = cb.step(cb.Field.point_source("P"), cb.make_step_matrices())
    assert f.t == 1 and f.bounds == (-1, 1)
    assert close(f.spinor_at(1).phi_P, S)
    assert close(f.spinor_at(-1).phi_Q, 1j * S)
    assert close(f.spinor_at(1).phi_Q, 0) and close(f.spinor_at(-1).phi_P, 0)
    assert close(f.spinor_at(0).phi_P, 0) and close(f.spinor_at(0).phi_Q, 0)
    assert f.total_probability() == pytest.approx(1, abs=1e-15)


def test_q_source_one_step():
    f = cb.step(cb.Field.point_source("Q"), cb.make_step_matrices())
    assert close(f.spinor_at(1).phi_P, 1j * S)
    assert close(f.spinor_at(-1).phi_Q, S)


def test_zero_field_stays_zero():
    f = cb.evolve(cb.Field(0, np.zeros(5), np.zeros(5)), cb.make_step_matrices(), 4)
    assert f.support() is None and f.total_probability() == 0


def test_two_steps():
    f = cb.evolve(cb.Field.point_source("P"), cb.make_step_matrices(), 2)
    assert f.total_probability() == pytest.approx(1, abs=1e-15)
    assert f.support() == (-2, 2)
    assert close(f.spinor_at(2).phi_P, 0.5)
    assert close(f.spinor_at(0).phi_P, -0.5)
    assert close(f.spinor_at(0).phi_Q, 0.5j)
    assert close(f.spinor_at(-2).phi_Q, 0.5j)


def test_step_is_linear():
    m = cb.make_step_matrices(0.3)
    rng = np.random.default_rng(1)
    a = cb.Field(-3, rng.normal(size=7) + 1j * rng.normal(size=7), rng.normal(size=7))
    b = cb.Field(-3, rng.normal(size=7), rng.normal(size=7) - 1j * rng.normal(size=7))
    both = cb.step(cb.Field(-3, a.phi_p + 2 * b.phi_p, a.phi_q + 2 * b.phi_q), m)
    sa, sb = cb.step(a, m), cb.step(b, m)
    np.testing.assert_allclose(both.phi_p, sa.phi_p + 2 * sb.phi_p, atol=1e-14)
    np.testing.assert_allclose(both.phi_q, sa.phi_q + 2 * sb.phi_q, atol=1e-14)
    assert sa.total_probability() == pytest.approx(a.total_probability(), rel=1e-13)


def test_from_spinors_round_trip():
    spinors = {2: cb.Spinor(Amplitude(1), Amplitude(0, 1)), -1: cb.Spinor(Amplitude(0.5), Amplitude(0))}
    f = cb.Field.from_spinors(spinors)
    assert f.bounds == (-1, 2)
    assert f.spinor_at(2) == spinors[2]
    assert f.spinor_at(0).norm == 0
    assert cb.Spinor(Amplitude(S), Amplitude(0, S)).is_normalized()


# -- path amplitudes -----------------------------------------------------------------


@pytest.mark.parametrize("seq,initial,z", [
    ("P", "P", S),
    ("Q", "P", 1j * S),
    ("PQ", "P", 0.5j),
    ("QP", "P", -0.5),
    ("PP", "P", 0.5),
    ("QQ", "Q", 0.5),
])
def test_path_amplitude_examples(seq, initial, z):
    assert close(cb.path_amplitude(seq, initial, cb.make_step_matrices()), z)


@given(st.text("PQ", min_size=1, max_size=30), st.sampled_from(cb.STATES))
def test_path_amplitude_closed_form(seq, initial):
    r = sum(a != b for a, b in zip(initial + seq, seq))
    expected = S ** len(seq) * 1j**r
    assert close(cb.path_amplitude(seq, initial, cb.make_step_matrices()), expected, 1e-14)


def test_path_amplitude_validation():
    m = cb.make_step_matrices()
    with pytest.raises(ValueError):
        cb.path_amplitude("", "P", m)
    with pytest.raises(DomainError):
        cb.path_amplitude("P", "R", m)


# -- kernels -------------------------------------------------------------------------


def test_kernel_n2_examples():
    m = cb.make_step_matrices()
    k = cb.kernel_bruteforce(cb.KernelQuery(2, "P", 0), m)
    assert close(k["Q"], 0.5j) and close(k["P"], -0.5)
    unreachable = cb.kernel_bruteforce(cb.KernelQuery(2, "P", 1), m)
    assert close(unreachable["P"], 0) and close(unreachable["Q"], 0)
    assert close(cb.kernel_dp(cb.KernelQuery(2, "P", 1), m)["P"], 0)


def test_kernel_n0_is_a_delta():
    m = cb.make_step_matrices()
    for state in cb.STATES:
        k = cb.kernel_bruteforce(cb.KernelQuery(0, state, 0), m)
        other = "Q" if state == "P" else "P"
        assert close(k[state], 1) and close(k[other], 0)
        assert cb.kernel_dp(cb.KernelQuery(0, state, 0), m) == k
    assert cb.reachable_entries(0, "Q") == [(0, "Q")]


def test_reachable_entries():
    assert cb.reachable_entries(2, "P") == [(-2, "Q"), (0, "P"), (0, "Q"), (2, "P")]


@pytest.mark.parametrize("b,theta", [(S, math.pi / 2), (0.3, 3 * math.pi / 2)])
def test_dp_matches_bruteforce(b, theta):
    m = cb.make_step_matrices(b, theta)
    for n in range(9):
        for state in cb.STATES:
            table = cb.kernel_dp_table(n, state, m)
            for (x, comp), amp in cb.kernel_bruteforce_table(n, state, m).items():
                assert abs(complex(amp) - complex(table.at(x)[comp])) <= 1e-13


def test_kernel_mirror_symmetry():
    m = cb.make_step_matrices(0.4)
    n = 15
    from_p, from_q = cb.kernel_dp_table(n, "P", m), cb.kernel_dp_table(n, "Q", m)
    for x in range(-n, n + 1, 2):
        assert complex(from_p.at(x)["P"]) == complex(from_q.at(-x)["Q"])
        assert complex(from_p.at(x)["Q"]) == complex(from_q.at(-x)["P"])


def test_kernel_table_matches_field_evolution():
    m = cb.make_step_matrices(0.2)
    table = cb.kernel_dp_table(25, "Q", m)
    field = cb.evolve(cb.Field.point_source("Q"), m, 25)
    as_field = table.to_field()
    np.testing.assert_allclose(as_field.phi_p, field.phi_p, atol=1e-15)
    np.testing.assert_allclose(as_field.phi_q, field.phi_q, atol=1e-15)
    # wrong-parity sites stay exactly zero
    assert not np.any(field.phi_p[1::2]) and not np.any(field.phi_q[1::2])


def test_bruteforce_cap(monkeypatch):
    m = cb.make_step_matrices()
    with pytest.raises(CapExceeded):
        cb.kernel_bruteforce(cb.KernelQuery(21, "P", 1), m)
    monkeypatch.setenv("ZITTERLAB_MAX_STEPS", "4")
    assert cb.brute_force_cap() == 4
    with pytest.raises(CapExceeded):
        cb.kernel_bruteforce(cb.KernelQuery(5, "P", 1), m)
    with pytest.raises(CapExceeded):
        cb.corner_counts(5, 1)
    monkeypatch.setenv("ZITTERLAB_MAX_STEPS", "lots")
    with pytest.raises(DomainError):
        cb.brute_force_cap()


def test_query_validation():
    with pytest.raises(DomainError):
        cb.KernelQuery(-1, "P", 0)
    with pytest.raises(DomainError):
        cb.KernelQuery(1, "X", 0)
    with pytest.raises(DomainError):
        cb.kernel_dp_table(-2, "P", cb.make_step_matrices())


# -- corners -------------------------------------------------------------------------


def test_corner_counts_n3():
    # from P to x=+1: PPQ (1 reversal), PQP (2), QPP (1 at the start, 1 more)
    assert cb.corner_counts(3, 1, "P") == {1: 1, 2: 2}
    assert cb.corner_counts(3, 1, "P", final_state="Q") == {1: 1}
    assert cb.corner_counts(3, 2) == {}
    assert cb.corner_counts(0, 0, "Q", final_state="P") == {}


def test_corner_sum_matches_bruteforce_small():
    m = cb.make_step_matrices()
    for n in range(8):
        for state in cb.STATES:
            for x in range(-n, n + 1, 2):
                k = cb.kernel_bruteforce(cb.KernelQuery(n, state, x), m)
                total = complex(k["P"]) + complex(k["Q"])
                assert close(cb.corner_weighted_sum(n, x, initial_state=state), total, 1e-14)
                for comp in cb.STATES:
                    got = cb.corner_weighted_sum(n, x, initial_state=state, final_state=comp)
                    assert close(got, complex(k[comp]), 1e-14)


def test_corner_truncation():
    full = complex(cb.corner_weighted_sum(6, 0))
    parts = sum(complex(cb.corner_weighted_sum(6, 0, r)) - complex(cb.corner_weighted_sum(6, 0, r - 1))
                for r in range(1, 7)) + complex(cb.corner_weighted_sum(6, 0, 0))
    assert abs(full - parts) <= 1e-15
    assert cb.corner_weighted_sum(6, 0, -1) == Amplitude(0)


def test_corner_sum_massless_limit():
    assert cb.corner_weighted_sum(5, 5, b=0.0) == Amplitude(1)
    assert cb.corner_weighted_sum(5, 3, b=0.0) == Amplitude(0)
    assert cb.corner_weighted_sum(5, -5, b=0.0, initial_state="Q") == Amplitude(1)
    with pytest.raises(DomainError):
        cb.corner_weighted_sum(3, 1, b=1.0)


# -- phase freedom -------------------------------------------------------------------


def test_rotation_leaves_probabilities():
    m = cb.make_step_matrices(0.35)
    base = cb.kernel_dp_table(30, "P", m).probabilities()
    for gamma in (0.1, 1.0, math.pi, 5.5):
        r = m.rotated(gamma)
        assert r.unitarity_error() <= 1e-15
        assert np.max(np.abs(cb.kernel_dp_table(30, "P", r).probabilities() - base)) <= 1e-13
    assert m.rotated(1.0).phase == 1.0


def test_branches_give_the_same_probabilities():
    up = cb.kernel_dp_table(40, "P", cb.make_step_matrices(0.5, math.pi / 2))
    down = cb.kernel_dp_table(40, "P", cb.make_step_matrices(0.5, 3 * math.pi / 2))
    np.testing.assert_allclose(up.probabilities(), down.probabilities(), rtol=0, atol=1e-14)
    # the amplitudes themselves are complex conjugates
    np.testing.assert_allclose(up.phi_p, down.phi_p.conj(), atol=1e-15)


# -- symmetric source ------------------------------------------------------------


@pytest.mark.parametrize("mode", ["mixture", "coherent"])
def test_symmetric_source_is_mirror_symmetric(mode):
    m = cb.make_step_matrices()
    for t, sites, probs in cb.symmetric_distribution(200, m, mode):
        assert list(sites) == list(range(-t, t + 1, 2))
        assert cb.mirror_error(probs) == 0
        assert cb.mean_displacement(sites, probs) == 0
        assert probs.sum() == pytest.approx(1, abs=1e-12)


def test_one_sided_source_drifts():
    tab = cb.kernel_dp_table(20, "P", cb.make_step_matrices())
    assert cb.mean_displacement(tab.sites, tab.probabilities()) > 0
    with pytest.raises(DomainError):
        next(cb.symmetric_distribution(3, cb.make_step_matrices(), "both"))


def test_mean_displacement_examples():
    assert cb.mean_displacement(np.array([-1, 1]), np.array([0.25, 0.75])) == 0.5
    assert cb.mean_displacement(np.array([0]), np.array([1.0])) == 0


# -- Dirac limit -------------------------------------------------------------------


def test_massless_transport_has_zero_residual():
    eps = 1 / 32
    m = cb.dirac_matrices(0.0, eps)
    history = cb.evolve(cb.gaussian_field(eps), m, 32, history=True)
    assert cb.dirac_residual(history, 0.0, eps) <= 1e-12
    # the components just translate
    last = history[-1]
    first = history[0]
    lo, hi = first.bounds
    np.testing.assert_array_equal(last.window(lo + 32, hi + 32)[0], first.phi_p)
    np.testing.assert_array_equal(last.window(lo - 32, hi - 32)[1], first.phi_q)


def test_uniform_field_rotates():
    # a constant spinor only sees the k = 0 mode: rotation by phi with cos(phi) = a
    m = cb.make_step_matrices(0.3)
    phi = math.acos(m.a)
    width, k = 60, 20
    field = cb.Field(-width, np.ones(2 * width + 1), np.zeros(2 * width + 1))
    history = cb.evolve(field, m, k, history=True)
    lo, hi = -width + k, width - k
    p, q = history[-1].window(lo, hi)
    np.testing.assert_allclose(p, math.cos(k * phi), atol=1e-13)
    np.testing.assert_allclose(q, 1j * math.sin(k * phi), atol=1e-13)
    # inside the unaffected window the residual is exactly (a - 1)/eps times the field
    eps = 0.3
    res = cb.dirac_residual(history[:2], m.b, eps, sites=(-width + 2, width - 2))
    assert res == pytest.approx(abs(m.a - 1) / eps * math.hypot(1, 0), rel=1e-12)


def test_gaussian_field_normalization():
    for eps in (1 / 16, 1 / 64):
        f = cb.gaussian_field(eps)
        assert f.total_probability() * eps == pytest.approx(1, rel=1e-9)
        assert f.bounds == (-8 * int(1 / eps), 8 * int(1 / eps))


def test_dirac_convergence_is_first_order():
    report = cb.dirac_convergence(1.0, (1 / 16, 1 / 32, 1 / 64), duration=0.5)
    assert all(r1 < r0 for r0, r1 in zip(report.residuals, report.residuals[1:]))
    assert all(0.8 <= p <= 1.2 for p in report.orders)


def test_dirac_residual_needs_history():
    f = cb.gaussian_field(0.25)
    with pytest.raises(InsufficientHistory):
        cb.dirac_residual([f], 0.1, 0.25)
    g = cb.evolve(f, cb.dirac_matrices(0.4, 0.25), 2)
    with pytest.raises(InsufficientHistory):
        cb.dirac_residual([f, g], 0.1, 0.25)


# -- propagation at larger n -------------------------------------------------------


def test_norm_over_many_steps():
    tab = cb.kernel_dp_table(3000, "Q", cb.make_step_matrices(0.9, 3 * math.pi / 2), track_norm=True)
    assert tab.max_norm_error <= 1e-11
    assert len(tab.phi_p) == 3001
