"""Coherent states of the truncated oscillator and their Bargmann measure."""

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc, gammaln

from truncosc.algebra import Truncation, ladder_matrices, structure_function
from truncosc.errors import DomainError, PreconditionError
from truncosc.quadrature import gauss_legendre

MAX_IDENTITY_TWO_S = 40
GLAUBER_TAIL = 1e-12


@dataclass(frozen=True)
class CoherentParams:
    t: Truncation
    z: complex

    def __post_init__(self):
        z = complex(self.z)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise DomainError(f"z must be finite, got {self.z!r}")
        object.__setattr__(self, "z", z)


def _check_level(t: Truncation, n: int):
    if not 0 <= n <= t.two_s:
        raise DomainError(f"level n={n} outside [0, {t.two_s}]")


def log_coefficients(t: Truncation) -> np.ndarray:
    """log C_n for n = 0..2s, accumulated from C_{n+1}/C_n = sqrt(F(n+1))/(n+1)."""
    steps = [
        0.5 * math.log(structure_function(t, n + 1)) - math.log(n + 1)
        for n in range(t.two_s)
    ]
    return np.concatenate([[0.0], np.cumsum(steps)])


def coefficient(t: Truncation, n: int) -> float:
    _check_level(t, n)
    c = 1.0
    for k in range(n):
        c *= math.sqrt(structure_function(t, k + 1)) / (k + 1)
    return c


def log_normalization(p: CoherentParams) -> float:
    return -0.5 * p.t.two_s * math.log1p(abs(p.z) ** 2 / p.t.two_s)


def normalization(p: CoherentParams) -> float:
    """(1 + |z|^2 / 2s)^(-s)."""
    return math.exp(log_normalization(p))


def coherent_state(p: CoherentParams) -> np.ndarray:
    """Amplitudes N C_n z^n on |0>, ..., |2s>."""
    amps = np.zeros(p.t.dim, dtype=complex)
    if p.z == 0:
        amps[0] = 1.0
        return amps
    n = np.arange(p.t.dim)
    log_mag = log_normalization(p) + log_coefficients(p.t) + n * math.log(abs(p.z))
    phase = np.exp(1j * n * cmath.phase(p.z))
    return np.exp(log_mag) * phase


def displaced_vacuum(p: CoherentParams) -> np.ndarray:
    """N exp(z a+)|0>, summed term by term; the series stops at (a+)^(2s)."""
    a_plus = ladder_matrices(p.t).a_plus
    term = np.zeros(p.t.dim, dtype=complex)
    term[0] = 1.0
    total = term.copy()
    for m in range(1, p.t.dim):
        term = p.z * (a_plus @ term) / m
        total += term
    return normalization(p) * total


def log_bargmann_measure(t: Truncation, rho2):
    """log Sigma as a function of rho^2 (vectorized)."""
    prefactor = (t.two_s + 1) / (t.two_s * math.pi)
    return math.log(prefactor) - (t.two_s + 2) * np.log1p(np.asarray(rho2) / t.two_s)


def bargmann_measure(t: Truncation, rho: float) -> float:
    """Radial weight (2s+1)/(2s pi) (1 + rho^2/2s)^(-2s-2).

    The 1/(2s) in the prefactor is what makes the moments equal 1/C_n^2;
    without it every moment comes out 2s times too large.
    """
    if rho < 0:
        raise DomainError(f"rho must be non-negative, got {rho}")
    return float(np.exp(log_bargmann_measure(t, rho * rho)))


def _moment_integrand(t: Truncation, n: int):
    """2 pi Sigma(rho) rho^(2n+1) drho/du under rho^2 = 2s u / (1 - u)."""
    two_s = t.two_s

    def f(u):
        u = np.asarray(u, dtype=float)
        rho2 = two_s * u / (1.0 - u)
        # rho drho/du = s / (1 - u)^2
        log_jac = math.log(two_s / 2) - 2 * np.log1p(-u)
        return 2 * math.pi * np.exp(log_bargmann_measure(t, rho2) + n * np.log(rho2) + log_jac)

    return f


def moment_integral(t: Truncation, n: int, tol: float = 1e-10) -> float:
    _check_level(t, n)
    return gauss_legendre(_moment_integrand(t, n), 0.0, 1.0, tol=tol)


def moment_target(t: Truncation, n: int) -> float:
    """(2s)^n n! (2s-n)! / (2s)!  i.e. 1 / C_n^2."""
    _check_level(t, n)
    two_s = t.two_s
    return math.exp(n * math.log(two_s) + gammaln(n + 1) + gammaln(two_s - n + 1) - gammaln(two_s + 1))


def moment_defect(t: Truncation, n: int) -> float:
    target = moment_target(t, n)
    return abs(moment_integral(t, n) - target) / target


def resolution_of_identity_defect(t: Truncation) -> float:
    """Max deviation from 1 of the diagonal of the integrated projector.

    Uses the unnormalized kets sum_n C_n z^n |n> (the Bargmann kernel);
    the angular integral removes every off-diagonal term.
    """
    if t.two_s > MAX_IDENTITY_TWO_S:
        raise DomainError(f"two_s={t.two_s} exceeds {MAX_IDENTITY_TWO_S} for the identity check")
    c2 = np.exp(2 * log_coefficients(t))
    diag = np.array([c2[n] * moment_integral(t, n) for n in range(t.dim)])
    return float(np.max(np.abs(diag - 1.0)))


def glauber_state(z: complex, cutoff: int) -> np.ndarray:
    """Ordinary coherent state e^(-|z|^2/2) sum z^n/sqrt(n!) |n>, n <= cutoff."""
    z = complex(z)
    r = abs(z)
    # Poisson tail P(n > cutoff) with mean |z|^2
    tail = gammainc(cutoff + 1, r * r)
    if tail >= GLAUBER_TAIL:
        raise PreconditionError(f"cutoff={cutoff} leaves tail mass {tail:.2e} for |z|={r:g}")
    amps = np.zeros(cutoff + 1, dtype=complex)
    if z == 0:
        amps[0] = 1.0
        return amps
    n = np.arange(cutoff + 1)
    log_mag = -0.5 * r * r + n * math.log(r) - 0.5 * gammaln(n + 1)
    return np.exp(log_mag) * np.exp(1j * n * cmath.phase(z))


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """|<a|b>|^2, zero-padding the shorter vector."""
    d = max(len(a), len(b))
    pa = np.zeros(d, dtype=complex)
    pb = np.zeros(d, dtype=complex)
    pa[: len(a)] = a
    pb[: len(b)] = b
    return float(abs(np.vdot(pa, pb)) ** 2)
