"""Symbolic residue pipeline for first order poles on quasihomogeneous hypersurfaces.

For omega = (g/s) dz0 /\ ... /\ dzn with s quasihomogeneous of valuation 1,
the Leray residue is the form r on {s=0} with ds /\ r = g dz0 /\ ... /\ dzn;
in the chart where ds/dz_i does not vanish it is written down directly.
The analysis then moves to a branched cover z_i -> z_i^(l*a_i) that turns
the quasihomogeneous data homogeneous, and to the 0-th chart of a weighted
blow-up, z_0 = u_0 and z_i = u_0 u_i, where the pulled back form acquires a
single pure power u_0^e du_0.  The exponent e = l*(alpha - 1 + kappa) - 1
is negative one exactly on the logarithmic boundary alpha = 1 - kappa, and
there the coefficient of du_0/u_0, the second residue, is the symbolic
obstruction to lifting: it is recovered by dividing the chart volume form
by d of the chart equation.

Everything here is exact.  The scalar prefactor 1/(2*pi*i) that
conventionally normalizes residues is carried as a symbolic tag on the
report; no decision made by this module depends on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from .algebra import (
    Polynomial,
    RationalFunction,
    divides,
    with_variables,
)
from .criteria import (
    CriterionDecision,
    LiftVerdict,
    RemovablePoleError,
    SpectrumEntry,
    cover_image,
    lift_criterion,
    lift_verdict,
    obstruction_component,
    spectrum_nonpositive,
)
from .forms import (
    DifferentialForm,
    SplitResult,
    basis_form,
    d_of_polynomial_over,
    pullback,
    recombine_split,
    split_du0,
    volume_form,
    wedge,
)
from .weights import (
    WeightSystem,
    is_quasihomogeneous,
    quasi_decompose,
    require_normalized,
    rescaled_weights,
    valuation_poly,
)

PREFACTOR_TAG = "1/(2*pi*i)"


class ResidueError(Exception):
    """Base error for the residue pipeline."""


class DegenerateChartError(ResidueError):
    """The requested chart derivative vanishes identically."""

    def __init__(self, message, usable_chart: Optional[int] = None):
        super().__init__(message)
        self.usable_chart = usable_chart


class ResidueDivisionError(ResidueError):
    """The defining identity admits no solution of the expected shape."""


class ImpureNumeratorError(ResidueError):
    """The numerator mixes degrees; decompose it and process components."""


@dataclass(frozen=True)
class NonvanishingCertificate:
    """Witness that the second residue numerator survives in the chart.

    ``numerator`` is the chart image of the obstruction component; it is
    nonzero and not divisible by ``relation``, which is what makes the
    extracted form a genuine nonzero class on the chart hypersurface.
    """

    numerator: Polynomial
    relation: Polynomial


@dataclass(frozen=True)
class ChartForm:
    """A form attached to one chart of the hypersurface {relation = 0}."""

    chart_index: Optional[int]
    relation: Polynomial
    form: DifferentialForm
    certificate: Optional[NonvanishingCertificate] = None

    def __post_init__(self):
        if self.relation.is_zero:
            raise ResidueError("chart relation polynomial is zero")
        relation = with_variables(self.relation, self.form.variables)
        for coeff in self.form.components.values():
            if not coeff.den.is_constant and divides(relation, coeff.den)[0]:
                raise ResidueError(
                    "chart relation divides a coefficient denominator; "
                    "the form has a pole on the hypersurface"
                )


def _first_usable_chart(s: Polynomial) -> Optional[int]:
    for i in range(len(s.variables)):
        if not s.partial_derivative(i).is_zero:
            return i
    return None


def leray_residue(g: Polynomial, s: Polynomial, chart: int) -> ChartForm:
    """The chart form r = (-1)^chart (g/s_chart) dz0 /\ ...omit chart... /\ dzn.

    Satisfies ds /\ r = g dz0 /\ ... /\ dzn exactly as forms, not merely
    modulo s.
    """
    g._check_same_variables(s)
    n = len(s.variables)
    if not 0 <= chart < n:
        raise ResidueError(f"chart index {chart} out of range for {s.variables}")
    if s.is_zero:
        raise ResidueError("hypersurface equation is zero")
    if divides(s, g)[0]:
        raise RemovablePoleError(
            f"{s} divides {g}; the pole is removable and the residue vanishes"
        )
    s_chart = s.partial_derivative(chart)
    if s_chart.is_zero:
        usable = _first_usable_chart(s)
        hint = f"; chart {usable} is usable" if usable is not None else ""
        raise DegenerateChartError(
            f"derivative in chart {chart} vanishes identically{hint}",
            usable_chart=usable,
        )
    coeff = RationalFunction(g, s_chart)
    if chart % 2:
        coeff = -coeff
    indices = tuple(i for i in range(n) if i != chart)
    return ChartForm(
        chart_index=chart,
        relation=s,
        form=basis_form(s.variables, indices, coeff),
    )


def residue_division(eta: DifferentialForm, f: Polynomial, chart: int) -> ChartForm:
    """Solve df /\ r = eta for a top form eta in the chart variables.

    Same construction as the Leray residue, applied to the single
    coefficient of eta; the sign is fixed by the defining identity, which
    is re-verified exactly before returning.
    """
    variables = eta.variables
    f = with_variables(f, variables)
    n = len(variables)
    if not 0 <= chart < n:
        raise ResidueError(f"chart index {chart} out of range for {variables}")
    if eta.is_zero:
        return ChartForm(chart_index=chart, relation=f, form=eta)
    top = tuple(range(n))
    if set(eta.components) != {top}:
        raise ResidueError("expected a top degree form in the chart variables")
    f_chart = f.partial_derivative(chart)
    if f_chart.is_zero:
        usable = _first_usable_chart(f)
        hint = f"; chart {usable} is usable" if usable is not None else ""
        raise DegenerateChartError(
            f"derivative in chart {chart} vanishes identically{hint}",
            usable_chart=usable,
        )
    coeff = eta.component(top) / RationalFunction.from_polynomial(f_chart)
    if chart % 2:
        coeff = -coeff
    indices = tuple(i for i in range(n) if i != chart)
    r = basis_form(variables, indices, coeff)
    if wedge(d_of_polynomial_over(f, variables), r) != eta:
        raise ResidueDivisionError("defining identity failed to close")
    return ChartForm(chart_index=chart, relation=f, form=r)


def cover_pullback_form(
    g: Polynomial, s: Polynomial, w: WeightSystem
) -> DifferentialForm:
    """Pullback of (g/s) dz0 /\ ... /\ dzn under the cover z_i -> z_i^(l*a_i).

    The result is (prod l*a_i) * (cover g / cover s) * prod z_i^(l*a_i - 1)
    times the volume form; the constant prod l*a_i is exactly the Jacobian
    factor forced by the chain rule.
    """
    g._check_same_variables(s)
    if len(s.variables) != len(w):
        raise ResidueError(
            f"weight system size {len(w)} does not match variables {s.variables}"
        )
    require_normalized(s, w)
    if divides(s, g)[0]:
        raise RemovablePoleError(
            f"{s} divides {g}; the pole is removable and the residue vanishes"
        )
    omega = volume_form(s.variables, RationalFunction(g, s))
    gens = Polynomial.generators(s.variables)
    images = [z**e for z, e in zip(gens, w.cover_exponents)]
    return pullback(omega, images)


def _chart_names(count: int, start: int = 0) -> Tuple[str, ...]:
    return tuple(f"u{i}" for i in range(start, start + count))


def blowup_pullback(
    omega_hat: DifferentialForm, w: WeightSystem
) -> Tuple[Optional[int], SplitResult]:
    """Substitute the 0-th blow-up chart z_0 = u_0, z_i = u_0 u_i and split.

    Requires the coefficients of omega_hat to have homogeneous numerator and
    denominator in the ordinary grading, which is what the cover pullback of
    a quasihomogeneous (g, s) produces; a mixed-degree numerator means g
    should be decomposed first and the components processed independently.
    Returns the pure u_0 exponent of the du_0 part together with the split.
    """
    variables = omega_hat.variables
    if len(variables) != len(w):
        raise ResidueError(
            f"weight system size {len(w)} does not match variables {variables}"
        )
    degrees = {}
    for key, coeff in omega_hat.components.items():
        for part, label in ((coeff.num, "numerator"), (coeff.den, "denominator")):
            if part.is_constant:
                continue
            terms_degrees = {m.degree for m in part.terms}
            if len(terms_degrees) > 1:
                raise ImpureNumeratorError(
                    f"coefficient {label} mixes degrees {sorted(terms_degrees)}; "
                    "decompose the numerator into quasihomogeneous components "
                    "and process them separately"
                )
        degrees[key] = (
            (0 if coeff.num.is_zero else coeff.num.total_degree()),
            (0 if coeff.den.is_constant else coeff.den.total_degree()),
        )
    chart_vars = _chart_names(len(variables))
    gens = Polynomial.generators(chart_vars)
    images = [gens[0]] + [gens[0] * gens[i] for i in range(1, len(gens))]
    blown = pullback(omega_hat, images)
    split = split_du0(blown, 0)
    top = tuple(range(len(variables)))
    if split.exponent is not None and set(omega_hat.components) == {top}:
        # structural cross-check: for a top form with homogeneous
        # numerator/denominator the pure power is forced by the degrees
        p, q = degrees[top]
        expected = p + (len(variables) - 1) - q
        if split.exponent != expected:
            raise ResidueError(
                f"blow-up exponent {split.exponent} contradicts degree count {expected}"
            )
    return split.exponent, split


def blowup_exponent_formula(alpha: Fraction, w: WeightSystem) -> int:
    """The predicted u_0 exponent l*(alpha - 1 + kappa) - 1 for numerator weight alpha."""
    value = w.cover_order * (alpha - 1 + w.kappa) - 1
    if value.denominator != 1:
        raise ResidueError(
            f"weight {alpha} is not attainable over this weight system"
        )
    return int(value)


def _tilde(p: Polynomial, chart_vars: Tuple[str, ...]) -> Polynomial:
    """Evaluate the first variable at 1: p(1, u_1, ..., u_n) over chart_vars."""
    images = [Polynomial.one(chart_vars)] + [
        Polynomial.variable(chart_vars, name) for name in chart_vars
    ]
    return p.substitute(images)


def second_residue(g: Polynomial, s: Polynomial, w: WeightSystem) -> ChartForm:
    """The symbolic obstruction form r2' in the 0-th blow-up chart.

    Extracts the weight-(1 - kappa) component g_a of g; when it vanishes the
    zero chart form is returned.  Otherwise r2' solves

        d(cover s)(1,u) /\ r2' = C * (cover g_a)(1,u) * prod u_i^(l*a_i - 1)
                                  * du_1 /\ ... /\ du_n

    exactly, where C is the Jacobian constant of the cover.  The returned
    chart form carries a certificate that the right hand side numerator is
    nonzero and not divisible by the chart equation, which is what makes
    the obstruction genuinely nonvanishing on the chart hypersurface.
    """
    g._check_same_variables(s)
    if len(s.variables) != len(w):
        raise ResidueError(
            f"weight system size {len(w)} does not match variables {s.variables}"
        )
    if len(s.variables) < 2:
        raise ResidueError("the blow-up chart needs at least two variables")
    require_normalized(s, w)
    decision = lift_criterion(w)
    if decision.holds:
        raise ResidueError(
            "the lift criterion holds for these weights; no obstruction exists"
        )
    chart_vars = _chart_names(len(s.variables) - 1, start=1)
    s_chart = _tilde(cover_image(s, w), chart_vars)
    nonzero, component = obstruction_component(s, g, w)
    if not nonzero:
        return ChartForm(
            chart_index=None,
            relation=s_chart,
            form=DifferentialForm.zero(chart_vars),
        )
    g_chart = _tilde(cover_image(component, w), chart_vars)
    if g_chart.is_zero:
        raise ResidueError("chart image of the obstruction component vanished")
    if divides(s_chart, g_chart)[0]:
        raise ResidueError(
            "chart equation divides the obstruction numerator; the numerator "
            "weight is not below the equation weight"
        )
    factor = Polynomial.constant(chart_vars, w.jacobian_constant)
    for name, exponent in zip(chart_vars, w.cover_exponents[1:]):
        factor = factor * Polynomial.variable(chart_vars, name) ** (exponent - 1)
    rhs = volume_form(chart_vars, g_chart * factor)
    chart = _first_usable_chart(s_chart)
    if chart is None:
        raise DegenerateChartError("chart equation has no usable chart")
    result = residue_division(rhs, s_chart, chart)
    return ChartForm(
        chart_index=result.chart_index,
        relation=result.relation,
        form=result.form,
        certificate=NonvanishingCertificate(
            numerator=g_chart, relation=s_chart
        ),
    )


@dataclass(frozen=True)
class ResidueReport:
    """Aggregate of every symbolic object the pipeline produced for one point."""

    s: Polynomial
    g: Polynomial
    weight_system: WeightSystem
    criterion: CriterionDecision
    spectrum: Tuple[SpectrumEntry, ...]
    leray: ChartForm
    cover_form: DifferentialForm
    blowup_form: Optional[DifferentialForm]
    blowup_exponent: Optional[int]
    blowup_split: Optional[SplitResult]
    second_residue: Optional[ChartForm]
    obstruction_nonzero: bool
    obstruction_component: Polynomial
    verdict: LiftVerdict
    warnings: Tuple[str, ...] = ()
    prefactor_tag: str = PREFACTOR_TAG

    @property
    def kappa(self) -> Fraction:
        return self.weight_system.kappa

    @property
    def cover_order(self) -> int:
        return self.weight_system.cover_order

    @property
    def jacobian_constant(self) -> Fraction:
        return self.weight_system.jacobian_constant

    def verify(self) -> bool:
        """Re-expand every defining identity in the report; raise on failure."""
        variables = self.s.variables
        ds = d_of_polynomial_over(self.s, variables)
        identity = wedge(ds, self.leray.form)
        if identity != volume_form(variables, self.g):
            raise ResidueError("stored residue fails its defining identity")
        witness = self.criterion.witness
        if witness is not None:
            value = self.kappa + sum(
                (Fraction(c) * a for c, a in zip(witness.k, self.weight_system.weights)),
                Fraction(0),
            )
            if value != witness.value or value != 1:
                raise ResidueError("criterion witness does not recompute")
        for entry in self.spectrum:
            value = self.kappa - 1 + sum(
                (Fraction(c) * a for c, a in zip(entry.k, self.weight_system.weights)),
                Fraction(0),
            )
            if value != entry.value or value > 0:
                raise ResidueError("spectrum entry does not recompute")
        if self.blowup_split is not None and self.blowup_form is not None:
            rebuilt = recombine_split(
                self.blowup_split, self.blowup_form.variables, 0
            )
            if rebuilt != self.blowup_form:
                raise ResidueError("blow-up split does not recombine")
        second = self.second_residue
        if second is not None and not second.form.is_zero:
            chart_vars = second.form.variables
            certificate = second.certificate
            if certificate is None:
                raise ResidueError("second residue lacks its certificate")
            factor = Polynomial.constant(chart_vars, self.jacobian_constant)
            for name, exponent in zip(chart_vars, self.weight_system.cover_exponents[1:]):
                factor = factor * (
                    Polynomial.variable(chart_vars, name) ** (exponent - 1)
                )
            rhs = volume_form(chart_vars, certificate.numerator * factor)
            lhs = wedge(
                d_of_polynomial_over(second.relation, chart_vars), second.form
            )
            if lhs != rhs:
                raise ResidueError("second residue fails its defining identity")
        return True


def analyze(
    s: Polynomial,
    g: Polynomial,
    w: WeightSystem,
    rescale_weights: bool = False,
) -> ResidueReport:
    """Run the whole symbolic pipeline for one singular point.

    With ``rescale_weights`` the weights are divided by the valuation of s
    first, which is the explicit opt-in for equations of valuation other
    than 1.  A numerator mixing weights is decomposed; the single component
    of weight 1 - kappa drives the blow-up and obstruction stages, and the
    remaining components are reported as spectators in the warnings.
    """
    g._check_same_variables(s)
    warnings = []
    if rescale_weights:
        ok, weight = is_quasihomogeneous(s, w)
        if ok and weight != 1:
            w = rescaled_weights(s, w)
            warnings.append(
                f"weights rescaled by 1/{weight} to normalize the equation"
            )
    require_normalized(s, w)
    if divides(s, g)[0]:
        raise RemovablePoleError(
            f"{s} divides {g}; the pole is removable and the residue vanishes"
        )
    criterion = lift_criterion(w)
    spectrum = spectrum_nonpositive(w)
    chart = _first_usable_chart(s)
    leray = leray_residue(g, s, chart)
    cover_form = cover_pullback_form(g, s, w)

    nonzero, component = obstruction_component(s, g, w)
    pure, g_weight = is_quasihomogeneous(g, w)
    if pure:
        blow_input_g = g
        blow_source = cover_form
    elif nonzero:
        alpha = 1 - w.kappa
        spectators = sorted(
            weight
            for weight in quasi_decompose(g, w).components
            if weight != alpha
        )
        listed = ", ".join(str(x) for x in spectators)
        warnings.append(
            f"numerator mixes weights; the weight-{alpha} component drives "
            f"the blow-up and obstruction stages, spectator weights: {listed}"
        )
        blow_input_g = component
        blow_source = cover_pullback_form(component, s, w)
    else:
        blow_input_g = None
        blow_source = None
        warnings.append(
            "numerator mixes weights and has no component of weight "
            f"{1 - w.kappa}; blow-up stage skipped"
        )

    if blow_source is not None:
        exponent, split = blowup_pullback(blow_source, w)
        blowup_form = pullback(
            blow_source,
            _blowup_images(len(s.variables)),
        )
        alpha = valuation_poly(blow_input_g, w)
        if exponent is not None and exponent != blowup_exponent_formula(alpha, w):
            raise ResidueError("blow-up exponent disagrees with the weight formula")
    else:
        exponent, split, blowup_form = None, None, None

    second = None
    if not criterion.holds:
        second = second_residue(g, s, w)

    verdict = lift_verdict(
        [(s, g, w)],
        second_residue_provider=lambda *_args: second,
    )
    return ResidueReport(
        s=s,
        g=g,
        weight_system=w,
        criterion=criterion,
        spectrum=spectrum,
        leray=leray,
        cover_form=cover_form,
        blowup_form=blowup_form,
        blowup_exponent=exponent,
        blowup_split=split,
        second_residue=second,
        obstruction_nonzero=nonzero,
        obstruction_component=component,
        verdict=verdict,
        warnings=tuple(warnings),
    )


def _blowup_images(count: int):
    chart_vars = _chart_names(count)
    gens = Polynomial.generators(chart_vars)
    return [gens[0]] + [gens[0] * gens[i] for i in range(1, count)]
