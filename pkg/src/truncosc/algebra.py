"""Truncated Weyl-Heisenberg algebra on the (2s+1)-dimensional Fock space.

The deformation parameter ``s`` is half-integer valued, so it is carried
around as the exact integer ``two_s = 2s``.  Every ``*_defect`` function
returns the max-abs-entry norm of the difference between two matrices
that should coincide.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from truncosc.errors import DomainError

MAX_TWO_S = 4096


@dataclass(frozen=True)
class Truncation:
    """Truncation level of the oscillator, stored as ``two_s = 2s``."""

    two_s: int

    def __post_init__(self):
        if isinstance(self.two_s, bool) or not isinstance(self.two_s, (int, np.integer)):
            raise DomainError(f"two_s must be an integer, got {self.two_s!r}")
        if self.two_s < 1:
            raise DomainError(f"two_s must be >= 1, got {self.two_s}")
        object.__setattr__(self, "two_s", int(self.two_s))

    @classmethod
    def from_s(cls, s):
        """Build from ``s`` itself (1/2, 1, 3/2, ...)."""
        twice = Fraction(s) * 2
        if twice.denominator != 1:
            raise DomainError(f"2s must be a positive integer, got s={s!r}")
        return cls(int(twice))

    @property
    def s(self) -> float:
        return self.two_s / 2

    @property
    def dim(self) -> int:
        return self.two_s + 1


@dataclass(frozen=True)
class LadderMatrices:
    a_minus: np.ndarray
    a_plus: np.ndarray
    number: np.ndarray


def structure_function(t: Truncation, n: int) -> float:
    """F(n) = n (2s + 1 - n) / (2s), defined for 0 <= n <= 2s + 1."""
    if not 0 <= n <= t.two_s + 1:
        raise DomainError(f"n={n} outside [0, {t.two_s + 1}]")
    return n * (t.two_s + 1 - n) / t.two_s


def ladder_matrices(t: Truncation, max_two_s: int = MAX_TWO_S) -> LadderMatrices:
    if t.two_s > max_two_s:
        raise DomainError(f"two_s={t.two_s} exceeds the dense-matrix cap {max_two_s}")
    a_minus = np.zeros((t.dim, t.dim))
    for n in range(1, t.dim):
        a_minus[n - 1, n] = np.sqrt(structure_function(t, n))
    number = np.diag(np.arange(t.dim, dtype=float))
    return LadderMatrices(a_minus=a_minus, a_plus=a_minus.conj().T.copy(), number=number)


def boson_annihilation(dim: int) -> np.ndarray:
    """Ordinary boson lowering operator cut to ``dim`` levels."""
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1)


def _max_abs(m: np.ndarray) -> float:
    return float(np.max(np.abs(m))) if m.size else 0.0


def commutator_defect(t: Truncation) -> float:
    lad = ladder_matrices(t)
    comm = lad.a_minus @ lad.a_plus - lad.a_plus @ lad.a_minus
    expected = np.eye(t.dim) - lad.number * (2.0 / t.two_s)
    return _max_abs(comm - expected)


def number_commutator_defects(t: Truncation) -> tuple[float, float]:
    """Defects of [N, a-] = -a- and [N, a+] = +a+."""
    lad = ladder_matrices(t)
    n, am, ap = lad.number, lad.a_minus, lad.a_plus
    return _max_abs(n @ am - am @ n + am), _max_abs(n @ ap - ap @ n - ap)


def nilpotency_residue(t: Truncation) -> tuple[np.ndarray, np.ndarray]:
    """(a-)^(2s+1) and (a+)^(2s+1); both must be structurally zero."""
    lad = ladder_matrices(t)
    return (
        np.linalg.matrix_power(lad.a_minus, t.dim),
        np.linalg.matrix_power(lad.a_plus, t.dim),
    )


def holstein_primakoff_defect(t: Truncation) -> float:
    lad = ladder_matrices(t)
    n = np.arange(t.dim)
    # radicand 1 - (n-1)/(2s) >= 0 for all n <= 2s + 1
    f = np.diag(np.sqrt(1.0 - (n - 1) / t.two_s))
    return _max_abs(lad.a_minus - boson_annihilation(t.dim) @ f)


def kerr_identity_defect(t: Truncation) -> float:
    """F(N) against the Kerr Hamiltonian N - N(N-1)/(2s) written with b+ b-."""
    b = boson_annihilation(t.dim)
    bp = b.T
    kerr = bp @ b - (bp @ bp @ b @ b) / t.two_s
    f_diag = np.diag([structure_function(t, n) for n in range(t.dim)])
    return _max_abs(f_diag - kerr)


def stokes_operators(t: Truncation) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return ``(s_plus, s_minus, s_3)`` with s_pm = sqrt(s) a_pm and s_3 = (N - s)/2."""
    lad = ladder_matrices(t)
    root = np.sqrt(t.s)
    s3 = 0.5 * (lad.number - t.s * np.eye(t.dim))
    return root * lad.a_plus, root * lad.a_minus, s3


def spin_operators(t: Truncation) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spin-s generators J_pm = sqrt(2s) a_pm, J_3 = N - s.

    These close su(2) in the standard normalization, unlike the Stokes
    triple returned by :func:`stokes_operators`, whose s_3 is half as large.
    """
    lad = ladder_matrices(t)
    root = np.sqrt(t.two_s)
    return root * lad.a_plus, root * lad.a_minus, lad.number - t.s * np.eye(t.dim)


def su2_defects(plus, minus, z) -> dict[str, float]:
    """Defects of [J3, J+] = J+, [J3, J-] = -J-, [J+, J-] = 2 J3."""
    return {
        "z_plus": _max_abs(z @ plus - plus @ z - plus),
        "z_minus": _max_abs(z @ minus - minus @ z + minus),
        "plus_minus": _max_abs(plus @ minus - minus @ plus - 2 * z),
    }


def stokes_defects(t: Truncation) -> dict[str, float]:
    return su2_defects(*stokes_operators(t))
