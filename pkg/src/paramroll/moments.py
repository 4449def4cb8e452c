"""Analytic moments of roll angular and cargo lateral acceleration.

The roll angular acceleration splits into an internal part (damping plus
restoring, a polynomial in phi and phidot) and a parametric excitation
part (the GM-variation polynomial times phi, a polynomial in phi and a_w).
First and second moments of the total follow from linearity of expectation
and the Gaussian closure engine; third and fourth moments come from the
scalar closure.  Cargo lateral acceleration adds a gravity term g*sin(phi)
handled through a truncated odd sine series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .closure import (
    DEGREE_CAP,
    MomentEngine,
    StateMoments,
    StatePolynomial,
    close_scalar,
    poly_expectation,
)
from .config import G, CargoPosition, RollModel

#: exact Taylor coefficients of sin(phi) for phi^1, phi^3, phi^5, phi^7, phi^9
SINE_COEFFS = (1.0, -1.0 / 6.0, 1.0 / 120.0, -1.0 / 5040.0, 1.0 / 362880.0)

SINE_ORDERS = (3, 5, 7, 9)
DEFAULT_SINE_ORDER = 7  # orders 7 and 9 agree to 4 significant digits


@dataclass(frozen=True)
class SineSeries:
    """Odd truncated Taylor series of sin(phi) up to phi^order."""

    order: int
    coefficients: tuple[float, ...]

    def polynomial(self) -> StatePolynomial:
        return StatePolynomial({(2 * n + 1, 0, 0): c
                                for n, c in enumerate(self.coefficients)})

    def __call__(self, phi: float) -> float:
        return sum(c * phi ** (2 * n + 1) for n, c in enumerate(self.coefficients))


def sine_series(order: int) -> SineSeries:
    """Truncated sine series for an odd order in {3, 5, 7, 9}."""
    if order not in SINE_ORDERS:
        raise ValueError(f"unsupported sine order {order}; choose one of {SINE_ORDERS}")
    n_terms = (order + 1) // 2
    return SineSeries(order=order, coefficients=SINE_COEFFS[:n_terms])


@dataclass(frozen=True)
class AccelDecomposition:
    """Roll angular acceleration as internal + excitation polynomials.

    internal(phi, phidot) = -beta1*phidot - beta3*phidot^3 - restoring(phi)
    excitation(phi, a_w)  = -(omega0^2/gm) * sum_n rho_n a_w^n * phi
    """

    internal: StatePolynomial
    excitation: StatePolynomial

    @classmethod
    def from_model(cls, model: RollModel) -> "AccelDecomposition":
        internal = StatePolynomial({(0, 1, 0): -model.beta1,
                                    (0, 3, 0): -model.beta3})
        for n, a in enumerate(model.alpha):
            internal._add_term((2 * n + 1, 0, 0), -a)
        scale = model.omega0 ** 2 / model.gm
        excitation = StatePolynomial()
        for n, r in enumerate(model.rho):
            excitation._add_term((1, 0, n + 1), -scale * r)
        return cls(internal=internal, excitation=excitation)


@dataclass(frozen=True)
class MomentSet:
    """First four raw moments of one scalar quantity."""

    m1: float
    m2: float
    m3: float
    m4: float

    def __post_init__(self):
        scale2 = max(self.m2, self.m1 * self.m1)
        if self.m2 - self.m1 * self.m1 < -1e-12 * max(scale2, 1e-300):
            raise ValueError(f"m2={self.m2!r} < m1^2: not a realizable moment set")
        scale4 = max(abs(self.m4), self.m2 * self.m2)
        if self.m4 - self.m2 * self.m2 < -1e-12 * max(scale4, 1e-300):
            raise ValueError(f"m4={self.m4!r} < m2^2: violates Cauchy-Schwarz")

    def as_dict(self) -> dict:
        return {"m1": self.m1, "m2": self.m2, "m3": self.m3, "m4": self.m4}

    @property
    def kurtosis(self) -> float:
        return self.m4 / (self.m2 * self.m2)


@dataclass(frozen=True)
class FirstMomentParts:
    internal: float    # E[internal]
    excitation: float  # E[excitation]

    @property
    def total(self) -> float:
        return self.internal + self.excitation


@dataclass(frozen=True)
class SecondMomentParts:
    internal_sq: float    # E[internal^2]
    cross: float          # E[internal * excitation]
    excitation_sq: float  # E[excitation^2]

    @property
    def total(self) -> float:
        return self.internal_sq + 2.0 * self.cross + self.excitation_sq


def accel_mean(sm: StateMoments, d: AccelDecomposition) -> FirstMomentParts:
    """E[phidd] by linearity: E[internal] + E[excitation]."""
    eng = MomentEngine(sm)
    return FirstMomentParts(
        internal=poly_expectation(sm, d.internal, engine=eng),
        excitation=poly_expectation(sm, d.excitation, engine=eng),
    )


def accel_second_moment(sm: StateMoments, d: AccelDecomposition) -> SecondMomentParts:
    """E[phidd^2] = E[internal^2] + 2 E[internal*excitation] + E[excitation^2].

    Each term is the exact expectation of the squared/cross polynomial; all
    mixed moments route through the closure engine, with no ad-hoc
    factorization.
    """
    eng = MomentEngine(sm)
    return SecondMomentParts(
        internal_sq=poly_expectation(sm, d.internal * d.internal, engine=eng),
        cross=poly_expectation(sm, d.internal * d.excitation, engine=eng),
        excitation_sq=poly_expectation(sm, d.excitation * d.excitation, engine=eng),
    )


def accel_moment_set(sm: StateMoments, d: AccelDecomposition) -> MomentSet:
    """Four raw moments of phidd: m1, m2 analytic; m3, m4 by scalar closure."""
    m1 = accel_mean(sm, d).total
    m2 = accel_second_moment(sm, d).total
    m3, m4 = close_scalar(m1, m2)
    return MomentSet(m1, m2, m3, m4)


@dataclass(frozen=True)
class CargoMoments:
    """Moment breakdown of one cargo position's lateral acceleration.

    internal here means the gravity + lever term g*sin(phi) + l'*internal,
    excitation the lever-scaled parametric part l'*excitation.  The
    excitation moments are exact rescalings of the roll-acceleration ones:
    E = l' E[excitation], E^2 = l'^2 E[excitation^2].
    """

    cargo: str
    sine_order: int
    internal_mean: float
    excitation_mean: float
    internal_sq: float
    cross: float
    excitation_sq: float
    moments: MomentSet

    @property
    def mean(self) -> float:
        return self.internal_mean + self.excitation_mean

    @property
    def second(self) -> float:
        return self.internal_sq + 2.0 * self.cross + self.excitation_sq


def cargo_moments(sm: StateMoments, d: AccelDecomposition, cargo: CargoPosition,
                  series: SineSeries | int = DEFAULT_SINE_ORDER) -> CargoMoments:
    """Moments of cargo lateral acceleration a_C = g sin(phi) + l'*(internal+excitation).

    sin(phi) is replaced by the truncated series, so every expectation is a
    polynomial expectation under the Gaussian closure.  The excitation
    component moments are computed as exact l' / l'^2 rescalings of the
    roll-acceleration expectations (the lever is a constant).  m3, m4 come
    from the scalar closure of (m1, m2).
    """
    if isinstance(series, int):
        series = sine_series(series)
    lp = cargo.l_prime
    eng = MomentEngine(sm)
    sin_poly = series.polynomial()
    internal_c = G * sin_poly + lp * d.internal

    exc_mean = lp * poly_expectation(sm, d.excitation, engine=eng)
    exc_sq = (lp * lp) * poly_expectation(sm, d.excitation * d.excitation, engine=eng)
    int_mean = poly_expectation(sm, internal_c, engine=eng)
    int_sq = poly_expectation(sm, internal_c * internal_c, engine=eng)
    cross = lp * poly_expectation(sm, internal_c * d.excitation, engine=eng)

    m1 = int_mean + exc_mean
    m2 = int_sq + 2.0 * cross + exc_sq
    m3, m4 = close_scalar(m1, m2)
    return CargoMoments(
        cargo=cargo.name,
        sine_order=series.order,
        internal_mean=int_mean,
        excitation_mean=exc_mean,
        internal_sq=int_sq,
        cross=cross,
        excitation_sq=exc_sq,
        moments=MomentSet(m1, m2, m3, m4),
    )


def sine_truncation_sweep(sm: StateMoments, d: AccelDecomposition,
                          cargo: CargoPosition,
                          orders: tuple[int, ...] = SINE_ORDERS) -> list[CargoMoments]:
    """Cargo moments across sine truncation orders (convergence table)."""
    return [cargo_moments(sm, d, cargo, sine_series(o)) for o in orders]
