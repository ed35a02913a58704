"""Reduced density matrices, linear entropies and the tripartite concurrence."""

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, xlogy

from truncosc.algebra import Truncation
from truncosc.coherent import CoherentParams, log_normalization
from truncosc.errors import DomainError, NumericalError, PreconditionError
from truncosc.multimode import MultimodeState

NORM_TOL = 1e-10
HERMITIAN_TOL = 1e-12
EIGEN_FLOOR = -1e-10
# round-off level of 1 - Tr rho^2; smaller values are reported as exactly 0
ENTROPY_FLOOR = 1e-14


@dataclass(frozen=True)
class EntanglementReport:
    s1: float
    s2: float
    s3: float
    total: float
    concurrence: float | None = None


def partial_trace(state: MultimodeState, keep_mode: int) -> np.ndarray:
    """rho[m, m'] = sum_e psi(m, e) conj(psi(m', e)) over the other modes e.

    The matrix is (n_max + 1)-dimensional for every mode, whatever the
    largest occupation the mode actually reaches.
    """
    if not 0 <= keep_mode < state.mode_count:
        raise DomainError(f"keep_mode={keep_mode} outside [0, {state.mode_count})")
    norm = state.norm()
    if abs(norm - 1.0) > NORM_TOL:
        raise PreconditionError(f"state is not normalized (norm={norm!r})")
    env_index: dict[tuple, int] = {}
    rows, cols, vals = [], [], []
    for occ, amp in state.amps.items():
        env = occ[:keep_mode] + occ[keep_mode + 1:]
        rows.append(occ[keep_mode])
        cols.append(env_index.setdefault(env, len(env_index)))
        vals.append(amp)
    psi = np.zeros((state.n_max + 1, max(len(env_index), 1)), dtype=complex)
    psi[rows, cols] = vals
    rho = psi @ psi.conj().T
    check_density_matrix(rho)
    return rho


def check_density_matrix(rho: np.ndarray):
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    if herm > HERMITIAN_TOL:
        raise NumericalError("reduced matrix is not Hermitian", defect=herm)
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > HERMITIAN_TOL * rho.shape[0] + NORM_TOL:
        raise NumericalError("reduced matrix does not have unit trace", trace=tr)


def density_spectrum(rho: np.ndarray) -> np.ndarray:
    """Eigenvalues with round-off negatives in [-1e-10, 0) clamped to zero."""
    w = np.linalg.eigvalsh(rho)
    if w.min() < EIGEN_FLOOR:
        raise NumericalError("density matrix has a negative eigenvalue", eigenvalue=float(w.min()))
    return np.clip(w, 0.0, None)


def linear_entropy(rho: np.ndarray) -> float:
    """1 - Tr rho^2, with Tr rho^2 taken as the squared Frobenius norm.

    Results within :data:`ENTROPY_FLOOR` of zero (either sign) are returned
    as 0.0 so that separable states give an exactly vanishing concurrence.
    """
    value = 1.0 - float(np.sum(np.abs(rho) ** 2))
    return 0.0 if value < ENTROPY_FLOOR else value


def closed_form_single_bs_entropy(p: CoherentParams, r: float) -> float:
    """Linear entropy of mode 1 after one splitter, from the b(n, n', q) quadruple sum.

    ``b(n, n', q)`` is the q-th term of rho_1[n, n']; both q and q' run up
    to min(2s - n, 2s - n').
    """
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"r must be in [0, 1], got {r}")
    two_s = p.t.two_s
    if p.z == 0:
        return 0.0
    t = math.sqrt(max(0.0, 1.0 - r * r))
    d = two_s + 1
    n = np.arange(d)[:, None, None]
    nn = np.arange(d)[None, :, None]
    q = np.arange(d)[None, None, :]
    valid = (q <= two_s - n) & (q <= two_s - nn)
    qs = np.where(valid, q, 0)
    lf = lambda k: gammaln(k + 1.0)
    abs_z = abs(p.z)
    log_b = (
        2 * log_normalization(p)
        + lf(two_s)
        + 2 * qs * math.log(abs_z) - qs * math.log(two_s) - lf(qs)
        + xlogy(n + nn, t) + xlogy(2 * qs, r)
        + (n + nn) * (math.log(abs_z) - 0.5 * math.log(two_s))
        - 0.5 * (lf(np.where(valid, two_s - n - qs, 0)) + lf(np.where(valid, two_s - nn - qs, 0)) + lf(n) + lf(nn))
    )
    phase = np.exp(1j * (n - nn) * cmath.phase(p.z))
    b = np.where(valid, np.exp(log_b) * phase, 0.0)
    row = b.sum(axis=2)  # sum over q of b(n, n', q)
    value = 1.0 - float(np.sum(row * row.T).real)
    return 0.0 if value < ENTROPY_FLOOR else value


def entropies_123(state: MultimodeState) -> EntanglementReport:
    if state.mode_count != 3:
        raise DomainError(f"need a 3-mode state, got {state.mode_count} modes")
    s = [linear_entropy(partial_trace(state, k)) for k in range(3)]
    return EntanglementReport(s[0], s[1], s[2], s[0] + s[1] + s[2])


def tripartite_concurrence(state: MultimodeState, t: Truncation) -> float:
    """sqrt((2s+1)/(12 s) * [3 - sum_i Tr rho_i^2])."""
    if state.n_max != t.two_s:
        raise DomainError(f"local dimension {state.n_max + 1} does not match 2s+1={t.dim}")
    report = entropies_123(state)
    return _concurrence_from_total(report.total, t)


def _concurrence_from_total(total: float, t: Truncation) -> float:
    value = (t.two_s + 1) / (6.0 * t.two_s) * total
    return math.sqrt(max(value, 0.0))


def entanglement_report(state: MultimodeState, t: Truncation) -> EntanglementReport:
    if state.n_max != t.two_s:
        raise DomainError(f"local dimension {state.n_max + 1} does not match 2s+1={t.dim}")
    rep = entropies_123(state)
    return EntanglementReport(rep.s1, rep.s2, rep.s3, rep.total, _concurrence_from_total(rep.total, t))
