"""Sparse multimode Fock states and lossless beam-splitter networks.

Modes are indexed from 0.  A beam splitter on modes (a, b) with angle
theta is exp[i theta/2 (b_a^+ b_b^- + b_a^- b_b^+)], so a single photon
goes |1,0> -> t|1,0> + i r|0,1> with t = cos(theta/2), r = sin(theta/2).
"""

import cmath
import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from types import MappingProxyType

import numpy as np
from scipy.special import gammaln

from truncosc.coherent import CoherentParams, coherent_state, log_coefficients, log_normalization
from truncosc.errors import DomainError

PRUNE = 1e-14
SINGULAR_T = 1e-12


class MultimodeState:
    """Immutable map from occupation tuples to complex amplitudes.

    Every stored tuple has ``mode_count`` entries summing to at most
    ``n_max``; amplitudes below :data:`PRUNE` in magnitude are dropped.
    """

    __slots__ = ("mode_count", "n_max", "_amps")

    def __init__(self, mode_count: int, n_max: int, amps=None, prune: float = PRUNE):
        if mode_count < 1:
            raise DomainError(f"mode_count must be >= 1, got {mode_count}")
        if n_max < 0:
            raise DomainError(f"n_max must be >= 0, got {n_max}")
        clean = {}
        for occ, a in (amps or {}).items():
            occ = tuple(int(k) for k in occ)
            if len(occ) != mode_count or min(occ) < 0 or sum(occ) > n_max:
                raise DomainError(f"occupation {occ} invalid for {mode_count} modes, n_max={n_max}")
            if abs(a) >= prune:
                clean[occ] = complex(a)
        self.mode_count = mode_count
        self.n_max = n_max
        self._amps = MappingProxyType(dict(sorted(clean.items())))

    @property
    def amps(self):
        return self._amps

    def __getitem__(self, occ) -> complex:
        return self._amps.get(tuple(occ), 0j)

    def __len__(self):
        return len(self._amps)

    def __repr__(self):
        return f"MultimodeState(mode_count={self.mode_count}, n_max={self.n_max}, support={len(self)})"

    def norm(self) -> float:
        return math.sqrt(sum(abs(a) ** 2 for a in self._amps.values()))

    def to_dense(self) -> np.ndarray:
        """Amplitude tensor of shape ``(n_max + 1,) * mode_count``."""
        out = np.zeros((self.n_max + 1,) * self.mode_count, dtype=complex)
        for occ, a in self._amps.items():
            out[occ] = a
        return out

    @classmethod
    def from_dense(cls, tensor: np.ndarray, n_max: int | None = None) -> "MultimodeState":
        tensor = np.asarray(tensor)
        if n_max is None:
            n_max = tensor.shape[0] - 1
        idx = np.argwhere(np.abs(tensor) >= PRUNE)
        amps = {tuple(int(k) for k in i): tensor[tuple(i)] for i in idx}
        return cls(tensor.ndim, n_max, amps)

    def max_difference(self, other: "MultimodeState") -> float:
        """Largest per-amplitude deviation; missing entries count as zero."""
        keys = set(self._amps) | set(other._amps)
        return max((abs(self[k] - other[k]) for k in keys), default=0.0)

    def dump(self) -> str:
        """One ``n1 n2 ... nk re im`` line per amplitude, sorted by tuple."""
        lines = [
            " ".join(map(str, occ)) + f" {a.real:.17g} {a.imag:.17g}"
            for occ, a in self._amps.items()
        ]
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def parse(cls, text: str, mode_count: int, n_max: int) -> "MultimodeState":
        amps = {}
        for line in text.splitlines():
            if not line.strip():
                continue
            *occ, re, im = line.split()
            amps[tuple(int(k) for k in occ)] = complex(float(re), float(im))
        return cls(mode_count, n_max, amps)


@dataclass(frozen=True)
class BeamSplitter:
    mode_a: int
    mode_b: int
    theta: float

    def __post_init__(self):
        if self.mode_a < 0 or self.mode_b < 0 or self.mode_a == self.mode_b:
            raise DomainError(f"invalid mode pair ({self.mode_a}, {self.mode_b})")

    @classmethod
    def from_reflectivity(cls, mode_a: int, mode_b: int, reflectivity: float) -> "BeamSplitter":
        """Splitter with r^2 = ``reflectivity``."""
        if not 0.0 <= reflectivity <= 1.0:
            raise DomainError(f"reflectivity must be in [0, 1], got {reflectivity}")
        return cls(mode_a, mode_b, 2.0 * math.asin(math.sqrt(reflectivity)))

    @property
    def t(self) -> float:
        return math.cos(self.theta / 2)

    @property
    def r(self) -> float:
        return math.sin(self.theta / 2)


@dataclass(frozen=True)
class NetworkSpec:
    """Splitters in application order (first element acts first)."""

    splitters: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "splitters", tuple(self.splitters))

    @classmethod
    def chain(cls, thetas) -> "NetworkSpec":
        """B_{k,k+1}(theta_k) ... B_{1,2}(theta_1) on modes 0..k."""
        return cls(tuple(BeamSplitter(l, l + 1, th) for l, th in enumerate(thetas)))


def embed_single_mode(amps: np.ndarray, total_modes: int) -> MultimodeState:
    """Put a single-mode state in mode 0 with the other modes in vacuum."""
    if total_modes < 2:
        raise DomainError(f"total_modes must be >= 2, got {total_modes}")
    rest = (0,) * (total_modes - 1)
    return MultimodeState(
        total_modes, len(amps) - 1, {(n,) + rest: a for n, a in enumerate(amps)}
    )


@lru_cache(maxsize=4096)
def _block_unitary(n: int, theta: float) -> np.ndarray:
    """exp(i theta/2 K_n) on the basis |m, n-m>, m = 0..n photons in mode a."""
    m = np.arange(n)
    k = np.zeros((n + 1, n + 1))
    off = np.sqrt((m + 1) * (n - m))
    k[m + 1, m] = off
    k[m, m + 1] = off
    w, v = np.linalg.eigh(k)
    u = (v * np.exp(0.5j * theta * w)) @ v.T
    u.flags.writeable = False
    return u


def apply_beamsplitter(state: MultimodeState, bs: BeamSplitter) -> MultimodeState:
    a, b = bs.mode_a, bs.mode_b
    if max(a, b) >= state.mode_count:
        raise DomainError(f"splitter on modes ({a}, {b}) but state has {state.mode_count} modes")
    # group by (spectator occupations, photons in the pair)
    blocks: dict[tuple, np.ndarray] = {}
    for occ, amp in state.amps.items():
        n = occ[a] + occ[b]
        spect = tuple(o if i not in (a, b) else -1 for i, o in enumerate(occ))
        key = (spect, n)
        vec = blocks.get(key)
        if vec is None:
            vec = blocks[key] = np.zeros(n + 1, dtype=complex)
        vec[occ[a]] = amp
    out = {}
    for (spect, n), vec in blocks.items():
        new = _block_unitary(n, float(bs.theta)) @ vec
        base = list(spect)
        for m, amp in enumerate(new):
            base[a], base[b] = m, n - m
            out[tuple(base)] = amp
    return MultimodeState(state.mode_count, state.n_max, out)


def apply_network(state: MultimodeState, net: NetworkSpec) -> MultimodeState:
    for bs in net.splitters:
        state = apply_beamsplitter(state, bs)
    return state


def xi_from_angles(angles) -> list[complex]:
    """Complex labels xi_l = i t_{l+1} r_l / t_l (l < k) and xi_k = i r_k / t_k."""
    t = [math.cos(th / 2) for th in angles]
    r = [math.sin(th / 2) for th in angles]
    for l, tl in enumerate(t):
        if abs(tl) < SINGULAR_T:
            raise DomainError(f"splitter {l} is fully reflective (t=0); closed form undefined")
    k = len(angles)
    return [
        1j * (t[l + 1] if l + 1 < k else 1.0) * r[l] / t[l]
        for l in range(k)
    ]


def _descending_chains(n1: int, k: int):
    """All (n_2, ..., n_{k+1}) with n1 >= n_2 >= ... >= n_{k+1} >= 0."""
    if k == 0:
        yield ()
        return
    for n2 in range(n1 + 1):
        for rest in _descending_chains(n2, k - 1):
            yield (n2,) + rest


def su_k1_closed_form(n1: int, xi) -> MultimodeState:
    """Output of a k-splitter chain on |n1, 0, ..., 0> written through the xi labels."""
    if n1 < 0:
        raise DomainError(f"n1 must be >= 0, got {n1}")
    xi = [complex(x) for x in xi]
    k = len(xi)
    partial = 1.0
    weight = 1.0
    for x in xi:
        partial *= abs(x) ** 2
        weight += partial
    norm = weight ** (-n1 / 2)
    amps = {}
    for chain in _descending_chains(n1, k):
        ns = (n1,) + chain
        coeff = complex(norm)
        for x, power in zip(xi, chain):
            coeff *= x ** power
        gaps = [ns[i] - ns[i + 1] for i in range(k)] + [ns[k]]
        coeff *= math.exp(0.5 * (gammaln(n1 + 1) - sum(gammaln(g + 1) for g in gaps)))
        amps[tuple(gaps)] = coeff
    return MultimodeState(k + 1, n1, amps)


def _power_table(x: complex, top: int) -> np.ndarray:
    """x**0 .. x**top with 0**0 = 1."""
    return np.array([x ** j for j in range(top + 1)], dtype=complex)


def single_bs_coherent_output(p: CoherentParams, theta: float) -> MultimodeState:
    """Closed-form image of |z, 0> under one splitter, amplitudes on |n, q>."""
    two_s = p.t.two_s
    if p.z == 0:
        return MultimodeState(2, two_s, {(0, 0): 1.0})
    t, r = math.cos(theta / 2), math.sin(theta / 2)
    tp = _power_table(t, two_s)
    rp = _power_table(1j * r, two_s)
    zp = np.exp(1j * np.arange(two_s + 1) * cmath.phase(p.z))
    log_n = log_normalization(p)
    log_ratio = math.log(abs(p.z)) - 0.5 * math.log(two_s)
    lg = gammaln(np.arange(two_s + 1) + 1.0)  # lg[k] = log k!
    amps = {}
    for n in range(two_s + 1):
        for q in range(two_s - n + 1):
            log_mag = (
                log_n
                + 0.5 * (lg[two_s] - lg[two_s - n - q] - lg[n] - lg[q])
                + (n + q) * log_ratio
            )
            amps[(n, q)] = math.exp(log_mag) * tp[n] * rp[q] * zp[n + q]
    return MultimodeState(2, two_s, amps)


def two_bs_coherent_output(p: CoherentParams, theta1: float, theta2: float) -> MultimodeState:
    """Closed-form image of |z, 0, 0> under B_23(theta2) B_12(theta1), on |p, p', n-p-p'>."""
    two_s = p.t.two_s
    if p.z == 0:
        return MultimodeState(3, two_s, {(0, 0, 0): 1.0})
    t1, r1 = math.cos(theta1 / 2), math.sin(theta1 / 2)
    t2, r2 = math.cos(theta2 / 2), math.sin(theta2 / 2)
    t1p, r1p = _power_table(t1, two_s), _power_table(1j * r1, two_s)
    t2p, r2p = _power_table(t2, two_s), _power_table(1j * r2, two_s)
    n_idx = np.arange(two_s + 1)
    lead = np.exp(log_normalization(p) + log_coefficients(p.t) + n_idx * math.log(abs(p.z)))
    lead = lead * np.exp(1j * n_idx * cmath.phase(p.z))
    lg = gammaln(np.arange(two_s + 1) + 1.0)  # lg[k] = log k!
    amps = {}
    for n in range(two_s + 1):
        for q in range(n + 1):
            first = math.exp(0.5 * (lg[n] - lg[q] - lg[n - q])) * t1p[q] * r1p[n - q]
            for qq in range(n - q + 1):
                second = math.exp(0.5 * (lg[n - q] - lg[qq] - lg[n - q - qq])) * t2p[qq] * r2p[n - q - qq]
                amps[(q, qq, n - q - qq)] = lead[n] * first * second
    return MultimodeState(3, two_s, amps)


def coherent_input(p: CoherentParams, total_modes: int) -> MultimodeState:
    return embed_single_mode(coherent_state(p), total_modes)


def enumerate_occupations(mode_count: int, n_max: int):
    """Every occupation tuple with total photon number <= n_max."""
    for occ in itertools.product(range(n_max + 1), repeat=mode_count):
        if sum(occ) <= n_max:
            yield occ
