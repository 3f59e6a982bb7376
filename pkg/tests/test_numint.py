"""Curve tracing and numerical integration of 1-forms along traces."""

from fractions import Fraction

import pytest

from resilift.algebra import Polynomial, RationalFunction
from resilift.forms import differential
from resilift.numint import (
    DivergenceError,
    SeedingError,
    export_trace_csv,
    integrate_1form,
    trace_real_curve,
)
from resilift.residue import analyze
from resilift.weights import WeightSystem

F = Fraction
UV = ("u1", "u2")

# frozen independent quadrature value for the unbounded chart integral
REFERENCE = 1.76663875028190811


@pytest.fixture(scope="module")
def fermat_trace():
    u1, u2 = Polynomial.generators(UV)
    curve = Polynomial.one(UV) + u1**3 + u2**3
    return trace_real_curve(curve, (0.0, -1.0), F(1, 100), 1200)


def test_closed_circle_trace():
    u1, u2 = Polynomial.generators(UV)
    circle = u1**2 + u2**2 - 1
    trace = trace_real_curve(circle, (1.0, 0.0), F(1, 20), 400)
    assert trace.closed
    assert len(trace) < 140
    assert (trace.samples[-1] == trace.samples[0]).all()


def test_exact_form_integrates_to_zero_on_loop():
    u1, u2 = Polynomial.generators(UV)
    circle = u1**2 + u2**2 - 1
    trace = trace_real_curve(circle, (1.0, 0.0), F(1, 20), 400)
    exact = differential(UV, "u1") * u2 + differential(UV, "u2") * u1
    result = integrate_1form(exact, trace)
    assert abs(result.value) < 1e-8


def test_segment_endpoints_and_value():
    line = Polynomial.variable(UV, "u2")
    trace = trace_real_curve(line, (0.5, 0.0), F(1, 100), 50)
    assert not trace.closed
    assert abs(trace.samples[0][0]) < 1e-9
    assert abs(trace.samples[-1][0] - 1.0) < 1e-9
    result = integrate_1form(differential(UV, "u1"), trace)
    assert result.value == pytest.approx(1.0, abs=1e-8)


def test_vertical_line_trace():
    vert = Polynomial.variable(UV, "u1")
    trace = trace_real_curve(vert, (0.0, 3.0), F(1, 10), 30)
    assert not trace.closed
    assert len(trace) == 61
    assert all(abs(p[0]) < 1e-12 for p in trace.samples)


def test_fermat_branch_reaches_both_ends(fermat_trace):
    assert not fermat_trace.closed
    # marching orientation: u1 increases along the stitched trace
    assert fermat_trace.samples[0][0] < -5
    assert fermat_trace.samples[-1][0] > 5


def test_unbounded_integral_with_tails(fermat_trace):
    u1, u2 = Polynomial.generators(UV)
    rep = (differential(UV, "u2") * u1 - differential(UV, "u1") * u2) * F(1, 3)
    result = integrate_1form(rep, fermat_trace)
    assert result.value > 0
    assert abs(result.value - REFERENCE) < 5e-3
    assert result.tail_start > 0
    assert result.tail_end > 0
    assert result.error_estimate < 1e-2


def test_second_residue_integral_and_reversal(fermat_trace):
    z = ("z0", "z1", "z2")
    z0, z1, z2 = Polynomial.generators(z)
    report = analyze(
        z0**3 + z1**3 + z2**3, Polynomial.one(z), WeightSystem(("1/3", "1/3", "1/3"))
    )
    form = report.second_residue.form
    forward = integrate_1form(form, fermat_trace)
    # the near-pole chords around (0, -1) are regularized on the curve
    assert forward.value < 0
    assert abs(forward.value + REFERENCE) < 5e-3
    backward = integrate_1form(form, fermat_trace.reversed())
    assert backward.value == pytest.approx(-forward.value, abs=1e-12)


def test_step_halving_stability(fermat_trace):
    u1, u2 = Polynomial.generators(UV)
    curve = Polynomial.one(UV) + u1**3 + u2**3
    rep = (differential(UV, "u2") * u1 - differential(UV, "u1") * u2) * F(1, 3)
    coarse = integrate_1form(rep, fermat_trace)
    halved_trace = trace_real_curve(curve, (0.0, -1.0), F(1, 200), 2400)
    halved = integrate_1form(rep, halved_trace)
    assert abs(halved.value - coarse.value) / abs(coarse.value) < 1e-4
    assert abs(halved.value - coarse.value) < coarse.error_estimate


def test_divergent_integrand_detected(fermat_trace):
    u1, _ = Polynomial.generators(UV)
    bad = differential(UV, "u1") * RationalFunction(
        Polynomial.one(UV), (u1 + 1) ** 2
    )
    with pytest.raises(DivergenceError):
        integrate_1form(bad, fermat_trace)


def test_seeding_errors():
    u1, u2 = Polynomial.generators(UV)
    with pytest.raises(SeedingError):
        trace_real_curve(u1**2 + u2**2 + 1, (0.3, 0.2), F(1, 10), 10)
    with pytest.raises(SeedingError):
        trace_real_curve(u1**2 + u2**2, (0.0, 0.0), F(1, 10), 10)


def test_integrand_must_be_one_form():
    from resilift.forms import volume_form

    line = Polynomial.variable(UV, "u2")
    trace = trace_real_curve(line, (0.5, 0.0), F(1, 100), 50)
    with pytest.raises(Exception) as info:
        integrate_1form(volume_form(UV, 1), trace)
    assert "1-form" in str(info.value)


def test_export_trace_csv(tmp_path):
    u1, u2 = Polynomial.generators(UV)
    circle = u1**2 + u2**2 - 1
    trace = trace_real_curve(circle, (1.0, 0.0), F(1, 20), 400)
    path = tmp_path / "circle.csv"
    export_trace_csv(trace, path)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "u1,u2"
    assert len(lines) == len(trace) + 1
    first = lines[1].split(",")
    assert float(first[0]) == pytest.approx(1.0, abs=1e-12)
