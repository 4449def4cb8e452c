"""Gaussian-closure moment engine for the (phi, phidot, a_w) state.

Under second-order cumulant-neglect closure the state is treated as
jointly Gaussian, so every mixed moment E[phi^k1 phidot^k2 a_w^k3] is a
polynomial in the mean vector and covariance.  The engine evaluates those
moments with the multivariate Gaussian recurrence

    m(k) = mu_i m(k - e_i) + sum_j cov[i, j] (k_j - delta_ij) m(k - e_i - e_j)

memoized over exponent triples; pair-partition enumeration would explode
combinatorially above total degree ~12.

Also provided: the scalar Gaussian closure extending (m1, m2) to (m3, m4),
and closed-form Gaussian sine moments used as an independent oracle for
the truncated-series path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEGREE_CAP = 40  # highest total degree the engine will evaluate

# indices of the state variables inside exponent triples
PHI, PHIDOT, WAVE = 0, 1, 2

#: canonical key order of the nine first/second raw state moments
RAW_MOMENT_KEYS = (
    "phi", "phi_sq", "phidot", "phidot_sq", "aw", "aw_sq",
    "phi_phidot", "phi_aw", "phidot_aw",
)


@dataclass(frozen=True)
class StateMoments:
    """Mean vector and covariance of (phi, phidot, a_w).

    The covariance must be symmetric and positive semi-definite (eigenvalue
    tolerance -1e-12).  Raw second moments are converted to central ones in
    :meth:`from_raw`.
    """

    mean: np.ndarray  # (3,): E[phi], E[phidot], E[a_w]
    cov: np.ndarray   # (3, 3) central second moments

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float)
        cov = np.asarray(self.cov, dtype=float)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)
        if mean.shape != (3,) or cov.shape != (3, 3):
            raise ValueError("mean must be (3,) and cov (3, 3)")
        if not (np.isfinite(mean).all() and np.isfinite(cov).all()):
            raise ValueError("state moments must be finite")
        if not np.allclose(cov, cov.T, rtol=0.0, atol=1e-12 * max(1.0, abs(cov).max())):
            raise ValueError("covariance must be symmetric")
        eigmin = float(np.linalg.eigvalsh(0.5 * (cov + cov.T)).min())
        if eigmin < -1e-12:
            raise ValueError(f"covariance not positive semi-definite (min eigenvalue {eigmin:.3e})")

    @classmethod
    def from_raw(cls, raw: dict) -> "StateMoments":
        """Build from the nine raw moments keyed by :data:`RAW_MOMENT_KEYS`."""
        missing = [k for k in RAW_MOMENT_KEYS if k not in raw]
        if missing:
            raise ValueError(f"missing state moment key(s): {', '.join(missing)}")
        unknown = [k for k in raw if k not in RAW_MOMENT_KEYS]
        if unknown:
            raise ValueError(f"unknown state moment key(s): {', '.join(unknown)}")
        vals = {k: float(raw[k]) for k in RAW_MOMENT_KEYS}
        mean = np.array([vals["phi"], vals["phidot"], vals["aw"]])
        raw2 = np.array([
            [vals["phi_sq"], vals["phi_phidot"], vals["phi_aw"]],
            [vals["phi_phidot"], vals["phidot_sq"], vals["phidot_aw"]],
            [vals["phi_aw"], vals["phidot_aw"], vals["aw_sq"]],
        ])
        return cls(mean=mean, cov=raw2 - np.outer(mean, mean))

    def to_raw(self) -> dict:
        """Back-conversion to the nine raw moments."""
        raw2 = self.cov + np.outer(self.mean, self.mean)
        return {
            "phi": float(self.mean[0]),
            "phi_sq": float(raw2[0, 0]),
            "phidot": float(self.mean[1]),
            "phidot_sq": float(raw2[1, 1]),
            "aw": float(self.mean[2]),
            "aw_sq": float(raw2[2, 2]),
            "phi_phidot": float(raw2[0, 1]),
            "phi_aw": float(raw2[0, 2]),
            "phidot_aw": float(raw2[1, 2]),
        }


class StatePolynomial:
    """Sparse polynomial in (phi, phidot, a_w): exponent triple -> coefficient.

    Terms are kept in a dict but always iterated in sorted exponent order,
    so sums of expectations do not depend on construction order.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int, int], float] | None = None):
        self.terms: dict[tuple[int, int, int], float] = {}
        if terms:
            for k, c in terms.items():
                self._add_term(k, float(c))

    def _add_term(self, k: tuple[int, int, int], coeff: float):
        if len(k) != 3 or any(e < 0 or e != int(e) for e in k):
            raise ValueError(f"invalid exponent triple {k!r}")
        if not math.isfinite(coeff):
            raise ValueError("coefficient must be finite")
        k = (int(k[0]), int(k[1]), int(k[2]))
        new = self.terms.get(k, 0.0) + coeff
        if new == 0.0 and k in self.terms:
            del self.terms[k]
        elif new != 0.0:
            self.terms[k] = new

    @classmethod
    def constant(cls, c: float) -> "StatePolynomial":
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, k: tuple[int, int, int], coeff: float = 1.0) -> "StatePolynomial":
        return cls({tuple(k): coeff})

    def degree(self) -> int:
        return max((sum(k) for k in self.terms), default=0)

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __add__(self, other: "StatePolynomial") -> "StatePolynomial":
        out = StatePolynomial(self.terms)
        for k, c in other.terms.items():
            out._add_term(k, c)
        return out

    def __mul__(self, other):
        if isinstance(other, StatePolynomial):
            out = StatePolynomial()
            for k1, c1 in self.sorted_terms():
                for k2, c2 in other.sorted_terms():
                    out._add_term((k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2]),
                                  c1 * c2)
            return out
        out = StatePolynomial()
        for k, c in self.sorted_terms():
            out._add_term(k, c * float(other))
        return out

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, StatePolynomial) and self.terms == other.terms

    def __repr__(self) -> str:
        body = " + ".join(f"{c:g}*x^{k}" for k, c in self.sorted_terms())
        return f"StatePolynomial({body or '0'})"


class MomentEngine:
    """Memoized Gaussian mixed-moment evaluator for one StateMoments.

    Instances are cheap; the memo table lives per instance, so concurrent
    callers can each hold their own engine.  Cold and warm lookups return
    bit-identical values because the recursion itself is deterministic.
    """

    def __init__(self, sm: StateMoments, degree_cap: int = DEGREE_CAP):
        self.mean = sm.mean
        self.cov = sm.cov
        self.degree_cap = degree_cap
        self._memo: dict[tuple[int, int, int], float] = {(0, 0, 0): 1.0}

    def moment(self, k: tuple[int, int, int]) -> float:
        k = (int(k[0]), int(k[1]), int(k[2]))
        if any(e < 0 for e in k):
            raise ValueError(f"exponents must be non-negative, got {k}")
        if sum(k) > self.degree_cap:
            raise ValueError(f"total degree {sum(k)} exceeds cap {self.degree_cap}")
        return self._moment(k)

    def _moment(self, k: tuple[int, int, int]) -> float:
        cached = self._memo.get(k)
        if cached is not None:
            return cached
        i = 0 if k[0] > 0 else (1 if k[1] > 0 else 2)
        km = list(k)
        km[i] -= 1
        km_t = tuple(km)
        value = self.mean[i] * self._moment(km_t)
        for j in range(3):
            if km[j] > 0:
                kmm = list(km)
                kmm[j] -= 1
                value += self.cov[i, j] * km[j] * self._moment(tuple(kmm))
        self._memo[k] = value
        return value


def mixed_moment(sm: StateMoments, k: tuple[int, int, int],
                 degree_cap: int = DEGREE_CAP) -> float:
    """E[phi^k1 phidot^k2 a_w^k3] under the Gaussian closure of ``sm``."""
    return MomentEngine(sm, degree_cap).moment(k)


def poly_expectation(sm: StateMoments, p: StatePolynomial,
                     degree_cap: int = DEGREE_CAP,
                     engine: MomentEngine | None = None) -> float:
    """Expectation of a StatePolynomial: sum of coeff * mixed moment.

    Terms are accumulated in canonical (sorted exponent) order, so the
    result is invariant under reordering of the polynomial's terms.
    """
    if p.degree() > degree_cap:
        raise ValueError(f"polynomial degree {p.degree()} exceeds cap {degree_cap}")
    eng = engine if engine is not None else MomentEngine(sm, degree_cap)
    total = 0.0
    for k, c in p.sorted_terms():
        total += c * eng.moment(k)
    return total


def close_scalar(m1: float, m2: float) -> tuple[float, float]:
    """Extend raw (m1, m2) of a scalar to (m3, m4) with Gaussian closure.

    Third and fourth cumulants are set to zero:
    m3 = m1^3 + 3 m1 s2, m4 = m1^4 + 6 m1^2 s2 + 3 s2^2 with s2 = m2 - m1^2.
    """
    s2 = m2 - m1 * m1
    if s2 < 0:
        raise ValueError(f"non-realizable moments: m2={m2!r} < m1^2={m1 * m1!r}")
    m3 = m1 ** 3 + 3.0 * m1 * s2
    m4 = m1 ** 4 + 6.0 * m1 * m1 * s2 + 3.0 * s2 * s2
    return m3, m4


def gaussian_sine_moment(mu: float, sigma: float) -> tuple[float, float]:
    """Closed-form (E[sin phi], E[sin^2 phi]) for phi ~ N(mu, sigma^2).

    E[sin phi] = exp(-sigma^2/2) sin(mu);
    E[sin^2 phi] = (1 - exp(-2 sigma^2) cos(2 mu)) / 2.
    Serves as the independent oracle for the truncated sine-series path.
    """
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    s2 = sigma * sigma
    e_sin = math.exp(-0.5 * s2) * math.sin(mu)
    e_sin2 = 0.5 * (1.0 - math.exp(-2.0 * s2) * math.cos(2.0 * mu))
    return e_sin, e_sin2
