"""Exterior algebra with rational function coefficients.

A differential form is stored over a fixed ordered variable tuple as a map
from strictly increasing index tuples (the wedge basis) to coefficients.
Forms may mix degrees.  Chart changes never mutate a form; they produce a
new form over a new variable tuple.

Besides the standard operations (wedge, exterior derivative, pullback) this
module provides two more specialised tools used by the residue pipeline:

* ``split_du0`` factors a form as u^e du /\\ r + theta with respect to a
  chosen variable u, insisting that the du-part carries one pure power of u.
* ``equal_mod_hypersurface`` compares two forms as residue representatives
  on a hypersurface {f=0}: it checks that every top coefficient of
  df /\\ (a-b) is divisible by f once denominators (required coprime to f)
  are cleared.  This deliberately avoids general ideal membership; the
  divisibility probe is exact for the comparisons performed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple, Union

from .algebra import (
    ArityError,
    Polynomial,
    RationalFunction,
    divide_with_remainder,
    divides,
    rational_with_variables,
)

Coefficient = Union[int, Fraction, Polynomial, RationalFunction]


class FormError(Exception):
    """Base error for differential form operations."""


class SplitError(FormError):
    """The du0-part of a form does not carry a single pure power of u0."""

    def __init__(self, message, exponents=()):
        super().__init__(message)
        self.exponents = tuple(exponents)


class PoleError(FormError):
    """A residue representative has a pole on the comparison hypersurface."""


def _sort_signed(indices: Sequence[int]):
    """Sort an index tuple, tracking the permutation sign; 0 on repeats."""
    order = list(indices)
    sign = 1
    for i in range(1, len(order)):
        j = i
        while j > 0 and order[j - 1] > order[j]:
            order[j - 1], order[j] = order[j], order[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(order)):
        if order[i - 1] == order[i]:
            return 0, None
    return sign, tuple(order)


def _merge_signed(left: Tuple[int, ...], right: Tuple[int, ...]):
    """Merge two strictly increasing tuples with the wedge permutation sign."""
    sign = 1
    merged = []
    i = j = 0
    while i < len(left) and j < len(right):
        if left[i] == right[j]:
            return 0, None
        if left[i] < right[j]:
            merged.append(left[i])
            i += 1
        else:
            if (len(left) - i) % 2:
                sign = -sign
            merged.append(right[j])
            j += 1
    merged.extend(left[i:])
    merged.extend(right[j:])
    return sign, tuple(merged)


class DifferentialForm:
    """A possibly degree-mixed exterior form over an ordered variable tuple."""

    __slots__ = ("variables", "components")

    def __init__(self, variables: Sequence[str], components: Dict = ()):
        variables = tuple(variables)
        n = len(variables)
        clean: Dict[Tuple[int, ...], RationalFunction] = {}
        items = components.items() if hasattr(components, "items") else components
        for key, value in items:
            key = tuple(key)
            if any(not isinstance(i, int) or not 0 <= i < n for i in key):
                raise FormError(f"basis indices {key} out of range for {variables}")
            if any(key[i] >= key[i + 1] for i in range(len(key) - 1)):
                raise FormError(f"basis indices {key} must be strictly increasing")
            coeff = _coerce_coefficient(value, variables)
            if coeff.is_zero:
                continue
            if key in clean:
                total = clean[key] + coeff
                if total.is_zero:
                    del clean[key]
                else:
                    clean[key] = total
            else:
                clean[key] = coeff
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "components", clean)

    def __setattr__(self, name, value):
        raise FormError("DifferentialForm instances are immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "DifferentialForm":
        return cls(variables, {})

    @property
    def is_zero(self) -> bool:
        return not self.components

    def degrees(self) -> Tuple[int, ...]:
        return tuple(sorted({len(key) for key in self.components}))

    def degree_part(self, p: int) -> "DifferentialForm":
        return DifferentialForm(
            self.variables,
            {k: c for k, c in self.components.items() if len(k) == p},
        )

    def pure_degree(self) -> Optional[int]:
        """The single degree of a degree-homogeneous nonzero form, else None."""
        degs = self.degrees()
        return degs[0] if len(degs) == 1 else None

    def component(self, key: Sequence[int]) -> RationalFunction:
        key = tuple(key)
        if key in self.components:
            return self.components[key]
        return _coerce_coefficient(0, self.variables)

    # -- linear structure ------------------------------------------------

    def _check_same_variables(self, other: "DifferentialForm"):
        if self.variables != other.variables:
            raise ArityError(
                f"variable mismatch: {self.variables} vs {other.variables}"
            )

    def __add__(self, other):
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        self._check_same_variables(other)
        merged = dict(self.components)
        for key, coeff in other.components.items():
            if key in merged:
                total = merged[key] + coeff
                if total.is_zero:
                    del merged[key]
                else:
                    merged[key] = total
            else:
                merged[key] = coeff
        return DifferentialForm(self.variables, merged)

    def __neg__(self):
        return DifferentialForm(
            self.variables, {k: -c for k, c in self.components.items()}
        )

    def __sub__(self, other):
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, DifferentialForm):
            raise FormError("use wedge for products of forms")
        scalar = _coerce_coefficient(other, self.variables)
        return DifferentialForm(
            self.variables, {k: c * scalar for k, c in self.components.items()}
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return self.variables == other.variables and self.components == other.components

    __hash__ = None

    def wedge(self, other: "DifferentialForm") -> "DifferentialForm":
        return wedge(self, other)

    # -- rendering -------------------------------------------------------

    def __str__(self):
        if not self.components:
            return "0"
        parts = []
        for key in sorted(self.components):
            coeff = self.components[key]
            if len(key) > 1:
                # parenthesized so the loose-binding wedge re-parses correctly
                basis = " /\\ ".join("d" + self.variables[i] for i in key)
                parts.append(f"({coeff})*({basis})")
            elif key:
                parts.append(f"({coeff})*d{self.variables[key[0]]}")
            else:
                parts.append(f"({coeff})")
        return " + ".join(parts)

    def __repr__(self):
        return f"DifferentialForm({str(self)!r}, variables={self.variables})"


def _coerce_coefficient(value, variables: Tuple[str, ...]) -> RationalFunction:
    if isinstance(value, RationalFunction):
        if value.variables != variables:
            raise ArityError(
                f"coefficient variables {value.variables} do not match {variables}"
            )
        return value
    if isinstance(value, Polynomial):
        if value.variables != variables:
            raise ArityError(
                f"coefficient variables {value.variables} do not match {variables}"
            )
        return RationalFunction.from_polynomial(value)
    if isinstance(value, (int, Fraction)):
        return RationalFunction.from_polynomial(
            Polynomial.constant(variables, value)
        )
    raise FormError(f"cannot use {value!r} as a form coefficient")


def function_form(value: Coefficient, variables: Sequence[str]) -> DifferentialForm:
    """The 0-form with the given coefficient."""
    return DifferentialForm(variables, {(): value})


def basis_form(
    variables: Sequence[str], indices: Sequence[int], coeff: Coefficient = 1
) -> DifferentialForm:
    """coeff * dz_{i1} /\\ ... /\\ dz_{ip} for strictly increasing indices."""
    return DifferentialForm(variables, {tuple(indices): coeff})


def differential(variables: Sequence[str], name: str) -> DifferentialForm:
    variables = tuple(variables)
    return basis_form(variables, (variables.index(name),))

def volume_form(variables: Sequence[str], coeff: Coefficient = 1) -> DifferentialForm:
    variables = tuple(variables)
    return basis_form(variables, tuple(range(len(variables))), coeff)


def wedge(a: DifferentialForm, b: DifferentialForm) -> DifferentialForm:
    """Exterior product; repeated basis indices annihilate."""
    a._check_same_variables(b)
    out: Dict[Tuple[int, ...], RationalFunction] = {}
    for ka, ca in a.components.items():
        for kb, cb in b.components.items():
            sign, merged = _merge_signed(ka, kb)
            if sign == 0:
                continue
            coeff = ca * cb
            if sign < 0:
                coeff = -coeff
            if merged in out:
                total = out[merged] + coeff
                if total.is_zero:
                    del out[merged]
                else:
                    out[merged] = total
            else:
                if not coeff.is_zero:
                    out[merged] = coeff
    return DifferentialForm(a.variables, out)


def exterior_derivative(a: DifferentialForm) -> DifferentialForm:
    """d(f dz_I) = sum_i (df/dz_i) dz_i /\\ dz_I, via the quotient rule."""
    out = DifferentialForm.zero(a.variables)
    n = len(a.variables)
    for key, coeff in a.components.items():
        for i in range(n):
            if i in key:
                continue
            dc = coeff.partial_derivative(i)
            if dc.is_zero:
                continue
            sign, merged = _merge_signed((i,), key)
            if sign == 0:
                continue
            term = dc if sign > 0 else -dc
            out = out + DifferentialForm(a.variables, {merged: term})
    return out


def d_of_polynomial(p: Polynomial) -> DifferentialForm:
    """The exterior derivative of a polynomial, as a 1-form over its variables."""
    return exterior_derivative(function_form(p, p.variables))


def pullback(
    a: DifferentialForm, images: Sequence[Polynomial]
) -> DifferentialForm:
    """Substitute images into coefficients and map each dz_i to d(image_i).

    One polynomial image per ambient variable; all images must share one
    target variable tuple, which becomes the variable tuple of the result.
    Commutes with wedge and with the exterior derivative.
    """
    images = list(images)
    if len(images) != len(a.variables):
        raise ArityError(
            f"expected {len(a.variables)} images, got {len(images)}"
        )
    if images:
        target = images[0].variables
        for im in images[1:]:
            if im.variables != target:
                raise ArityError("pullback images use different variable tuples")
    else:
        target = ()
    d_images = [d_of_polynomial(im) for im in images]
    out = DifferentialForm.zero(target)
    for key, coeff in a.components.items():
        piece = function_form(coeff.substitute(images), target)
        for i in key:
            piece = wedge(piece, d_images[i])
            if piece.is_zero:
                break
        out = out + piece
    return out


@dataclass(frozen=True)
class SplitResult:
    """Decomposition a = u^e du /\\ du0_factor + remainder for a chart variable u.

    ``exponent`` is None exactly when the du-part vanishes; ``du0_factor``
    contains neither u nor du, while ``remainder`` merely contains no du.
    """

    exponent: Optional[int]
    du0_factor: DifferentialForm
    remainder: DifferentialForm


def _strip_variable_power(coeff: RationalFunction, index: int):
    """Write coeff = u^e * rest with rest free of the variable at index.

    Returns (e, rest) or raises SplitError when no pure power factors out.
    """
    num, den = coeff.num, coeff.den
    cn = num.monomial_content().exponents[index]
    cd = den.monomial_content().exponents[index]

    def strip(poly: Polynomial, amount: int) -> Polynomial:
        if amount == 0:
            return poly
        out = {}
        for mono, c in poly.terms.items():
            exps = list(mono.exponents)
            exps[index] -= amount
            out[tuple(exps)] = c
        return Polynomial(poly.variables, out)

    num = strip(num, cn)
    den = strip(den, cd)
    if num.uses_variable(index) or den.uses_variable(index):
        raise SplitError(
            "coefficient is not a pure power of the chart variable times a "
            f"variable-free factor: {coeff}",
            exponents=(cn, cd),
        )
    return cn - cd, RationalFunction(num, den)


def split_du0(a: DifferentialForm, var_index: int = 0) -> SplitResult:
    """Split a as u^e du /\\ r + theta along the chart variable at var_index.

    Every du-component coefficient must be a single pure power of u times a
    u-free factor, and all those powers must agree; otherwise a SplitError
    reports the offending exponents.  theta collects the du-free components
    unchanged (they may still involve u).
    """
    radial: Dict[Tuple[int, ...], RationalFunction] = {}
    rest: Dict[Tuple[int, ...], RationalFunction] = {}
    exponents = {}
    for key, coeff in a.components.items():
        if var_index not in key:
            rest[key] = coeff
            continue
        pos = key.index(var_index)
        e, stripped = _strip_variable_power(coeff, var_index)
        exponents[key] = e
        reduced = tuple(i for i in key if i != var_index)
        if pos % 2:
            stripped = -stripped
        radial[reduced] = stripped
    distinct = sorted(set(exponents.values()))
    if len(distinct) > 1:
        raise SplitError(
            f"mixed powers {distinct} of the chart variable in the du-part",
            exponents=distinct,
        )
    exponent = distinct[0] if distinct else None
    return SplitResult(
        exponent=exponent,
        du0_factor=DifferentialForm(a.variables, radial),
        remainder=DifferentialForm(a.variables, rest),
    )


def recombine_split(
    split: SplitResult, variables: Sequence[str], var_index: int = 0
) -> DifferentialForm:
    """Re-expand a SplitResult; inverse of split_du0, used for verification."""
    variables = tuple(variables)
    if split.exponent is None:
        return split.remainder
    u = Polynomial.variable(variables, variables[var_index])
    if split.exponent >= 0:
        power = RationalFunction.from_polynomial(u ** split.exponent)
    else:
        power = RationalFunction(Polynomial.one(variables), u ** (-split.exponent))
    du = basis_form(variables, (var_index,))
    return wedge(du * power, split.du0_factor) + split.remainder


def with_variables(
    a: DifferentialForm, variables: Sequence[str]
) -> DifferentialForm:
    """Re-express a form over another variable tuple, by variable name.

    Wedge indices are remapped; dropping a variable is only legal when
    neither the wedge basis nor any coefficient uses it.
    """
    variables = tuple(variables)
    positions = {name: i for i, name in enumerate(variables)}
    out: Dict[Tuple[int, ...], RationalFunction] = {}
    for key, coeff in a.components.items():
        try:
            mapped = tuple(positions[a.variables[i]] for i in key)
        except KeyError as exc:
            raise ArityError(
                f"wedge variable {exc.args[0]!r} absent from {variables}"
            ) from None
        sign, sorted_key = _sort_signed(mapped)
        new_coeff = rational_with_variables(coeff, variables)
        if sign < 0:
            new_coeff = -new_coeff
        out[sorted_key] = new_coeff
    return DifferentialForm(variables, out)


def _require_comparable(a: DifferentialForm, b: DifferentialForm, f: Polynomial):
    a._check_same_variables(b)
    if f.is_zero:
        raise FormError("comparison hypersurface polynomial is zero")
    da, db = a.pure_degree(), b.pure_degree()
    if not a.is_zero and da is None:
        raise FormError("left form mixes degrees")
    if not b.is_zero and db is None:
        raise FormError("right form mixes degrees")
    if da is not None and db is not None and da != db:
        raise FormError(f"degree mismatch: {da} vs {db}")
    for form in (a, b):
        for coeff in form.components.values():
            if not coeff.den.is_constant and divides(f, coeff.den)[0]:
                raise PoleError(
                    "representative has a pole on the hypersurface"
                )


def equal_mod_hypersurface(
    a: DifferentialForm, b: DifferentialForm, f: Polynomial
) -> bool:
    """Equality of residue representatives on {f=0}.

    True iff every coefficient of df /\\ (a-b), after clearing its
    denominator, has numerator divisible by f.  Denominators divisible by f
    raise PoleError instead of producing a verdict.
    """
    f = _embed(f, a.variables)
    _require_comparable(a, b, f)
    diff = a - b
    if diff.is_zero:
        return True
    top = wedge(d_of_polynomial_over(f, a.variables), diff)
    for coeff in top.components.values():
        if not coeff.den.is_constant and divides(f, coeff.den)[0]:
            raise PoleError("representative has a pole on the hypersurface")
        if not divides(f, coeff.num)[0]:
            return False
    return True


def scalar_mod_hypersurface(
    a: DifferentialForm, b: DifferentialForm, f: Polynomial
) -> Optional[Fraction]:
    """The unique rational scalar with a = scalar * b on {f=0}, if one exists.

    Returns None when no scalar works or when every scalar works (b a
    multiple of f times anything, say), since then no scalar is determined.
    """
    f = _embed(f, a.variables)
    _require_comparable(a, b, f)
    wa = wedge(d_of_polynomial_over(f, a.variables), a)
    wb = wedge(d_of_polynomial_over(f, a.variables), b)
    keys = set(wa.components) | set(wb.components)
    candidate = None
    for key in sorted(keys):
        ca = wa.component(key)
        cb = wb.component(key)
        # clear both denominators; vanishing mod f is then a statement
        # about the cross numerators
        u = divide_with_remainder(ca.num * cb.den, f)[1]
        v = divide_with_remainder(cb.num * ca.den, f)[1]
        if v.is_zero:
            if u.is_zero:
                continue
            return None
        mono, coeff = v.leading_term()
        if mono not in u.terms:
            return None
        ratio = u.terms[mono] / coeff
        if u != v * ratio:
            return None
        if candidate is None:
            candidate = ratio
        elif candidate != ratio:
            return None
    return candidate


def _embed(f: Polynomial, variables: Tuple[str, ...]) -> Polynomial:
    from .algebra import with_variables as poly_with_variables

    if f.variables == variables:
        return f
    return poly_with_variables(f, variables)


def d_of_polynomial_over(
    p: Polynomial, variables: Tuple[str, ...]
) -> DifferentialForm:
    return d_of_polynomial(_embed(p, variables))
