"""Checkerboard dynamics of a two-component amplitude on the 1+1 lattice.

The spinor ``(phi_P, phi_Q)`` at site ``x`` holds the amplitude for being at
``x`` having just made a P-move (``phi_P``) or a Q-move (``phi_Q``).  One
time step applies

    phi_P(x, t+1) = cx * phi_P(x-1, t) + cy * phi_Q(x-1, t)
    phi_Q(x, t+1) = cy * phi_P(x+1, t) + cx * phi_Q(x+1, t)

where ``cx`` multiplies a continuation and ``cy`` a reversal.  As 2x2
matrices this is ``P = [[cx, cy], [0, 0]]`` and ``Q = [[0, 0], [cy, cx]]``;
probability is conserved exactly when ``Q^H Q + P^H P = I``, i.e.
``|cx|^2 + |cy|^2 = 1`` with ``cx`` and ``cy`` a quarter turn apart.
"""

from __future__ import annotations

import math
import os
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import CapExceeded, DomainError, InsufficientHistory
from .proc_calc import ONE, Amplitude, amp_add, amp_mul, born
from .sequences import count_corners, iter_sequences

DEFAULT_B = 1 / math.sqrt(2)
DEFAULT_THETA = math.pi / 2
DEFAULT_BRUTE_CAP = 20
STATES = ("P", "Q")

# offsets a single DP transition can move an amplitude by
STENCIL = {"P": +1, "Q": -1}


def brute_force_cap() -> int:
    """Largest step count the brute-force path sums accept.

    Overridable through the ``ZITTERLAB_MAX_STEPS`` environment variable.
    """
    raw = os.environ.get("ZITTERLAB_MAX_STEPS")
    if raw is None:
        return DEFAULT_BRUTE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise DomainError(f"ZITTERLAB_MAX_STEPS must be an integer, got {raw!r}") from None
    if cap < 0:
        raise DomainError("ZITTERLAB_MAX_STEPS must be non-negative")
    return cap


def _check_state(state: str) -> str:
    if state not in STATES:
        raise DomainError(f"move state must be 'P' or 'Q', got {state!r}")
    return state


def _reversal_phase(theta: float) -> complex:
    """``e^{i theta}`` for the two admissible branches, returned exactly."""
    t = math.remainder(theta, 2 * math.pi)
    if abs(t - math.pi / 2) <= 1e-9:
        return 1j
    if abs(t + math.pi / 2) <= 1e-9:
        return -1j
    raise DomainError(f"theta must be pi/2 or 3pi/2 (mod 2pi), got {theta!r}")


@dataclass(frozen=True)
class StepMatrices:
    """Continuation amplitude ``cx`` and reversal amplitude ``cy``.

    ``a = |cx|``, ``b = |cy|`` and ``theta`` is the phase of ``cy`` relative to
    ``cx``.  ``phase`` records any global rotation applied on top.
    """

    cx: complex
    cy: complex
    a: float
    b: float
    theta: float
    phase: float = 0.0

    @property
    def P(self) -> np.ndarray:
        return np.array([[self.cx, self.cy], [0, 0]], dtype=complex)

    @property
    def Q(self) -> np.ndarray:
        return np.array([[0, 0], [self.cy, self.cx]], dtype=complex)

    def unitarity_error(self) -> float:
        """Max-abs entry of ``Q^H Q + P^H P - I``."""
        P, Q = self.P, self.Q
        gram = Q.conj().T @ Q + P.conj().T @ P
        return float(np.max(np.abs(gram - np.eye(2))))

    def rotated(self, gamma: float) -> StepMatrices:
        """Multiply both amplitudes by ``e^{i gamma}``; probabilities are unchanged."""
        r = complex(math.cos(gamma), math.sin(gamma))
        return StepMatrices(self.cx * r, self.cy * r, self.a, self.b, self.theta, self.phase + gamma)

    def amplitude(self, previous: str, move: str) -> complex:
        return self.cx if previous == move else self.cy


def make_step_matrices(b: float = DEFAULT_B, theta: float = DEFAULT_THETA) -> StepMatrices:
    """Transition matrices with reversal weight ``b`` and relative phase ``theta``.

    ``cx = sqrt(1 - b^2)`` is real and positive; ``cy = b e^{i theta}`` with
    ``theta`` restricted to pi/2 or 3pi/2.  The defaults give
    ``P = [[1, i], [0, 0]] / sqrt(2)`` and ``Q = [[0, 0], [i, 1]] / sqrt(2)``.
    """
    if not (0.0 < b < 1.0):
        raise DomainError(f"b must lie strictly between 0 and 1, got {b!r}")
    phase = _reversal_phase(theta)
    a = math.sqrt(1.0 - b * b)
    return StepMatrices(complex(a, 0.0), phase * b, a, b, theta)


def dirac_matrices(mass: float, eps: float, theta: float = DEFAULT_THETA) -> StepMatrices:
    """Matrices for lattice spacing ``eps`` with ``b = mass * eps``.

    Unlike :func:`make_step_matrices` this admits ``mass = 0`` (free transport).
    """
    b = mass * eps
    if not (0.0 <= b < 1.0):
        raise DomainError(f"mass * eps must lie in [0, 1), got {b!r}")
    a = math.sqrt(1.0 - b * b)
    return StepMatrices(complex(a, 0.0), _reversal_phase(theta) * b, a, b, theta)


# -- spinors and fields -----------------------------------------------------------


@dataclass(frozen=True)
class Spinor:
    phi_P: Amplitude
    phi_Q: Amplitude

    @property
    def norm(self) -> float:
        return born(self.phi_P) + born(self.phi_Q)

    def is_normalized(self, tol: float = 1e-12) -> bool:
        return abs(self.norm - 1.0) <= tol


@dataclass
class Field:
    """Spinor field on a contiguous run of sites starting at ``offset``."""

    offset: int
    phi_p: np.ndarray
    phi_q: np.ndarray
    t: int = 0

    def __post_init__(self):
        self.phi_p = np.asarray(self.phi_p, dtype=complex)
        self.phi_q = np.asarray(self.phi_q, dtype=complex)
        if self.phi_p.shape != self.phi_q.shape or self.phi_p.ndim != 1:
            raise ValueError("phi_p and phi_q must be 1-d arrays of equal length")

    @classmethod
    def point_source(cls, state: str = "P", site: int = 0, amplitude: complex = 1.0) -> Field:
        _check_state(state)
        p = np.array([amplitude if state == "P" else 0.0], dtype=complex)
        q = np.array([amplitude if state == "Q" else 0.0], dtype=complex)
        return cls(site, p, q)

    @classmethod
    def from_spinors(cls, spinors: Mapping[int, Spinor], t: int = 0) -> Field:
        if not spinors:
            return cls(0, np.zeros(0, complex), np.zeros(0, complex), t)
        lo, hi = min(spinors), max(spinors)
        p = np.zeros(hi - lo + 1, complex)
        q = np.zeros(hi - lo + 1, complex)
        for site, s in spinors.items():
            p[site - lo] = complex(s.phi_P)
            q[site - lo] = complex(s.phi_Q)
        return cls(lo, p, q, t)

    def __len__(self):
        return len(self.phi_p)

    @property
    def sites(self) -> np.ndarray:
        return np.arange(self.offset, self.offset + len(self.phi_p))

    @property
    def bounds(self) -> tuple[int, int]:
        """First and last site of the stored window."""
        return self.offset, self.offset + len(self.phi_p) - 1

    def spinor_at(self, site: int) -> Spinor:
        i = site - self.offset
        if 0 <= i < len(self.phi_p):
            return Spinor(Amplitude.from_complex(self.phi_p[i]), Amplitude.from_complex(self.phi_q[i]))
        return Spinor(Amplitude(0.0), Amplitude(0.0))

    def probabilities(self) -> np.ndarray:
        return _probabilities(self.phi_p, self.phi_q)

    def total_probability(self) -> float:
        return float(np.vdot(self.phi_p, self.phi_p).real + np.vdot(self.phi_q, self.phi_q).real)

    def support(self) -> tuple[int, int] | None:
        nz = np.flatnonzero((self.phi_p != 0) | (self.phi_q != 0))
        if nz.size == 0:
            return None
        return self.offset + int(nz[0]), self.offset + int(nz[-1])

    def window(self, lo: int, hi: int) -> tuple[np.ndarray, np.ndarray]:
        """Components on sites ``lo..hi`` inclusive, zero outside the stored run."""
        n = hi - lo + 1
        p = np.zeros(n, complex)
        q = np.zeros(n, complex)
        a, b = max(lo, self.offset), min(hi, self.offset + len(self.phi_p) - 1)
        if a <= b:
            p[a - lo:b - lo + 1] = self.phi_p[a - self.offset:b - self.offset + 1]
            q[a - lo:b - lo + 1] = self.phi_q[a - self.offset:b - self.offset + 1]
        return p, q


def _probabilities(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    # grouped per component so that swapping p and q gives bitwise-equal sums
    return (p.real**2 + p.imag**2) + (q.real**2 + q.imag**2)


def step(field: Field, m: StepMatrices) -> Field:
    """Advance one time slice; the stored window grows by one site on each side."""
    n = len(field.phi_p)
    p = np.zeros(n + 2, complex)
    q = np.zeros(n + 2, complex)
    # new index j is site offset-1+j; P arrivals come from j-2, Q arrivals from j
    p[2:] = m.cx * field.phi_p + m.cy * field.phi_q
    q[:n] = m.cy * field.phi_p + m.cx * field.phi_q
    return Field(field.offset - 1, p, q, field.t + 1)


def evolve(field: Field, m: StepMatrices, n_steps: int, history: bool = False):
    """Apply ``step`` ``n_steps`` times; with ``history`` return every slice."""
    slices = [field]
    for _ in range(n_steps):
        field = step(field, m)
        if history:
            slices.append(field)
    return slices if history else field


# -- path sums ----------------------------------------------------------------------


def path_amplitude(seq: str, initial_state: str, m: StepMatrices) -> Amplitude:
    """Product of per-move amplitudes, comparing each move with the one before.

    The first move is compared with ``initial_state``.  For the default
    matrices this is ``(1/sqrt 2)^N * i^R`` with ``R`` the number of corners
    of ``initial_state + seq``.
    """
    if not seq:
        raise ValueError("path_amplitude needs at least one move")
    prev = _check_state(initial_state)
    cont = Amplitude.from_complex(m.cx)
    rev = Amplitude.from_complex(m.cy)
    amp = ONE
    for move in seq:
        amp = amp_mul(amp, cont if move == prev else rev)
        prev = move
    return amp


@dataclass(frozen=True)
class KernelQuery:
    n_steps: int
    initial_state: str
    x: int

    def __post_init__(self):
        if self.n_steps < 0:
            raise DomainError("n_steps must be non-negative")
        _check_state(self.initial_state)

    @property
    def reachable(self) -> bool:
        return abs(self.x) <= self.n_steps and (self.x - self.n_steps) % 2 == 0


def _zero_kernel() -> dict[str, Amplitude]:
    return {"P": Amplitude(0.0), "Q": Amplitude(0.0)}


def kernel_bruteforce(query: KernelQuery, m: StepMatrices, cap: int | None = None) -> dict[str, Amplitude]:
    """Sum ``path_amplitude`` over every move string landing at ``query.x``.

    Returns the summed amplitude per final move state.  Strings are generated
    by the combinatorial enumerator, independently of the lattice recursion.
    """
    cap = brute_force_cap() if cap is None else cap
    n = query.n_steps
    if n > cap:
        raise CapExceeded(f"brute-force kernel limited to {cap} steps, asked for {n}")
    out = _zero_kernel()
    if not query.reachable:
        return out
    if n == 0:
        out[query.initial_state] = ONE
        return out
    n_p = (n + query.x) // 2
    for seq in iter_sequences(n_p, n - n_p, cap=n):
        out[seq[-1]] = amp_add(out[seq[-1]], path_amplitude(seq, query.initial_state, m))
    return out


@dataclass
class KernelTable:
    """Amplitudes after ``n`` steps from a source at site 0, on reachable sites only.

    Entry ``k`` belongs to site ``-n + 2k``.
    """

    n: int
    phi_p: np.ndarray
    phi_q: np.ndarray
    max_norm_error: float = 0.0

    @property
    def sites(self) -> np.ndarray:
        return np.arange(-self.n, self.n + 1, 2)

    def at(self, x: int) -> dict[str, Amplitude]:
        if abs(x) > self.n or (x - self.n) % 2:
            return _zero_kernel()
        k = (x + self.n) // 2
        return {"P": Amplitude.from_complex(self.phi_p[k]), "Q": Amplitude.from_complex(self.phi_q[k])}

    def probabilities(self) -> np.ndarray:
        return _probabilities(self.phi_p, self.phi_q)

    def total_probability(self) -> float:
        return float(np.vdot(self.phi_p, self.phi_p).real + np.vdot(self.phi_q, self.phi_q).real)

    def to_field(self) -> Field:
        p = np.zeros(2 * self.n + 1, complex)
        q = np.zeros(2 * self.n + 1, complex)
        p[::2] = self.phi_p
        q[::2] = self.phi_q
        return Field(-self.n, p, q, self.n)


# amplitudes below this are dropped; left alone they decay into subnormal
# floats and slow every later slice by orders of magnitude
UNDERFLOW = 1e-200
_TRIM_EVERY = 64


def iter_point_source(n_steps: int, m: StepMatrices, phi_p0: complex = 1.0, phi_q0: complex = 0.0):
    """Yield a ``KernelTable`` per slice ``t = 0..n_steps`` for a source at site 0.

    Only sites of the right parity are stored, so slice ``t`` holds ``t + 1``
    entries.  Buffers are reused between slices: copy what you keep.
    Amplitudes smaller than ``UNDERFLOW`` at the edges of the distribution
    are periodically set to exactly zero and no longer updated.
    """
    size = n_steps + 2
    p, q, p_next, q_next = (np.zeros(size, complex) for _ in range(4))
    tmp = np.empty(size, complex)
    p[0], q[0] = phi_p0, phi_q0
    cx, cy = m.cx, m.cy
    lo, hi = 0, 1  # compact indices [lo, hi) that may be nonzero
    yield KernelTable(0, p[:1], q[:1])
    for t in range(n_steps):
        cur_p, cur_q = p[lo:hi], q[lo:hi]
        w = tmp[: hi - lo]
        # P arrivals shift up by one compact index, Q arrivals stay put
        np.multiply(cur_p, cx, out=p_next[lo + 1 : hi + 1])
        np.multiply(cur_q, cy, out=w)
        p_next[lo + 1 : hi + 1] += w
        p_next[lo] = 0.0
        np.multiply(cur_p, cy, out=q_next[lo:hi])
        np.multiply(cur_q, cx, out=w)
        q_next[lo:hi] += w
        q_next[hi] = 0.0
        p, p_next = p_next, p
        q, q_next = q_next, q
        hi += 1
        if (t + 1) % _TRIM_EVERY == 0:
            lo, hi = _trim(p, q, lo, hi)
        yield KernelTable(t + 1, p[: t + 2], q[: t + 2])


def _trim(p: np.ndarray, q: np.ndarray, lo: int, hi: int) -> tuple[int, int]:
    big = np.flatnonzero(np.maximum(np.abs(p[lo:hi]), np.abs(q[lo:hi])) >= UNDERFLOW)
    if big.size == 0:
        p[lo:hi] = 0.0
        q[lo:hi] = 0.0
        return lo, lo
    new_lo, new_hi = lo + int(big[0]), lo + int(big[-1]) + 1
    for arr in (p, q):
        arr[lo:new_lo] = 0.0
        arr[new_hi:hi] = 0.0
    return new_lo, new_hi


def kernel_dp_table(n_steps: int, initial_state: str, m: StepMatrices, track_norm: bool = False) -> KernelTable:
    """Kernel from ``initial_state`` at site 0 to every site after ``n_steps``.

    With ``track_norm`` the largest deviation of the total probability from
    its initial value over all slices is stored in ``max_norm_error``.
    """
    _check_state(initial_state)
    if n_steps < 0:
        raise DomainError("n_steps must be non-negative")
    src = (1.0, 0.0) if initial_state == "P" else (0.0, 1.0)
    worst = 0.0
    table = None
    for table in iter_point_source(n_steps, m, *src):
        if track_norm:
            worst = max(worst, abs(table.total_probability() - 1.0))
    return KernelTable(table.n, table.phi_p.copy(), table.phi_q.copy(), worst)


def kernel_dp(query: KernelQuery, m: StepMatrices) -> dict[str, Amplitude]:
    """Same values as :func:`kernel_bruteforce`, by iterating the one-step relation."""
    if not query.reachable:
        return _zero_kernel()
    return kernel_dp_table(query.n_steps, query.initial_state, m).at(query.x)


def kernel_bruteforce_table(n_steps: int, initial_state: str, m: StepMatrices,
                            cap: int | None = None) -> dict[tuple[int, str], Amplitude]:
    """Brute-force kernel for every reachable ``(x, final_state)``."""
    out = {}
    for x in range(-n_steps, n_steps + 1, 2):
        for comp, amp in kernel_bruteforce(KernelQuery(n_steps, initial_state, x), m, cap).items():
            out[(x, comp)] = amp
    return out


def reachable_entries(n_steps: int, initial_state: str) -> list[tuple[int, str]]:
    """``(x, comp)`` pairs reached by at least one path, in output order."""
    if n_steps == 0:
        return [(0, initial_state)]
    out = []
    for x in range(-n_steps, n_steps + 1, 2):
        if x > -n_steps:
            out.append((x, "P"))
        if x < n_steps:
            out.append((x, "Q"))
    return out


# -- corner decomposition -------------------------------------------------------------


def corner_counts(n_steps: int, x: int, initial_state: str = "P", final_state: str | None = None,
                  cap: int | None = None) -> Counter:
    """Histogram of reversal counts over paths with displacement ``x``.

    Reversals include one between ``initial_state`` and the first move.
    """
    cap = brute_force_cap() if cap is None else cap
    if n_steps > cap:
        raise CapExceeded(f"corner enumeration limited to {cap} steps, asked for {n_steps}")
    _check_state(initial_state)
    hist = Counter()
    if abs(x) > n_steps or (x - n_steps) % 2:
        return hist
    if n_steps == 0:
        if final_state in (None, initial_state):
            hist[0] = 1
        return hist
    n_p = (n_steps + x) // 2
    for seq in iter_sequences(n_p, n_steps - n_p, cap=n_steps):
        if final_state is None or seq[-1] == final_state:
            hist[count_corners(initial_state + seq)] += 1
    return hist


def corner_weighted_sum(n_steps: int, x: int, R_max: int | None = None, b: float = DEFAULT_B, *,
                        initial_state: str = "P", theta: float = DEFAULT_THETA,
                        final_state: str | None = None, cap: int | None = None) -> Amplitude:
    """``sum_R N(R) a^(n-R) (b e^{i theta})^R`` over reversal counts ``R <= R_max``.

    ``N(R)`` counts paths to ``x`` with ``R`` reversals.  Summed over final
    states (the default) this equals the brute-force kernel summed over both
    components.  ``b = 0`` is accepted and keeps only the straight path.
    """
    if not (0.0 <= b < 1.0):
        raise DomainError(f"b must lie in [0, 1), got {b!r}")
    a = math.sqrt(1.0 - b * b)
    rev = _reversal_phase(theta) * b
    hist = corner_counts(n_steps, x, initial_state, final_state, cap)
    total = 0j
    for r in sorted(hist):
        if R_max is not None and r > R_max:
            continue
        total += hist[r] * a ** (n_steps - r) * rev**r
    return Amplitude.from_complex(total)


# -- Zitterbewegung ------------------------------------------------------------------


def symmetric_distribution(n_steps: int, m: StepMatrices, mode: str = "mixture"):
    """Yield ``(t, sites, probabilities)`` for a particle at rest on average.

    ``mixture`` averages the P-source and Q-source runs with weight 1/2 each;
    ``coherent`` starts from the single spinor ``(1, 1)/sqrt 2``.
    """
    if mode == "mixture":
        runs = zip(iter_point_source(n_steps, m, 1.0, 0.0), iter_point_source(n_steps, m, 0.0, 1.0))
        for from_p, from_q in runs:
            yield from_p.n, from_p.sites, 0.5 * (from_p.probabilities() + from_q.probabilities())
    elif mode == "coherent":
        s = 1 / math.sqrt(2)
        for table in iter_point_source(n_steps, m, s, s):
            yield table.n, table.sites, table.probabilities()
    else:
        raise DomainError(f"mode must be 'mixture' or 'coherent', got {mode!r}")


def mirror_error(probs: np.ndarray) -> float:
    """Largest ``|p(x) - p(-x)|`` for probabilities on sites symmetric about 0."""
    return float(np.max(np.abs(probs - probs[::-1]))) if len(probs) else 0.0


def mean_displacement(sites: np.ndarray, probs: np.ndarray) -> float:
    """``sum x p(x)``, pairing each site with its mirror image.

    Sites must be symmetric about 0, so an exactly mirror-symmetric
    distribution gives exactly 0.
    """
    half = len(sites) // 2
    upper = slice(len(sites) - half, None)
    return float(np.sum(sites[upper] * (probs[upper] - probs[:half][::-1])))


# -- the Dirac limit -------------------------------------------------------------------


def dirac_residual(field_history: Sequence[Field], b: float, eps: float, theta: float = DEFAULT_THETA,
                   sites: tuple[int, int] | None = None) -> float:
    """Max-norm residual of the light-cone Dirac system on an evolved field.

    For consecutive slices and ``mass = b / eps``, with ``psi+ = phi_P`` and
    ``psi- = phi_Q`` this evaluates

        (psi+(x+1, t+1) - psi+(x, t)) / eps - (cy / eps) psi-(x, t)
        (psi-(x-1, t+1) - psi-(x, t)) / eps - (cy / eps) psi+(x, t)

    (``cy / eps = i * mass`` on the default branch) and returns the largest
    modulus.  ``sites`` restricts ``x`` to an inclusive window.  The lattice
    update makes both lines equal ``(a - 1)/eps`` times the field, so the
    residual vanishes at first order in ``eps``.
    """
    if len(field_history) < 2:
        raise InsufficientHistory("need at least two consecutive slices")
    coupling = _reversal_phase(theta) * b / eps
    worst = 0.0
    for now, nxt in zip(field_history, field_history[1:]):
        if nxt.t != now.t + 1:
            raise InsufficientHistory(f"slices t={now.t} and t={nxt.t} are not consecutive")
        lo, hi = now.bounds if sites is None else sites
        p0, q0 = now.window(lo, hi)
        p1, _ = nxt.window(lo + 1, hi + 1)
        _, q1 = nxt.window(lo - 1, hi - 1)
        r_plus = (p1 - p0) / eps - coupling * q0
        r_minus = (q1 - q0) / eps - coupling * p0
        worst = max(worst, float(np.max(np.abs(r_plus), initial=0.0)), float(np.max(np.abs(r_minus), initial=0.0)))
    return worst


def gaussian_field(eps: float, sigma: float = 1.0, center: float = 0.0, cutoff: float = 8.0) -> Field:
    """Spinor with both components ``g(x) = (pi sigma^2)^(-1/4) exp(-x^2 / 2 sigma^2) / sqrt 2``.

    Sampled at ``x = site * eps`` out to ``cutoff * sigma``; the amplitudes are
    the continuum values, so ``sum |phi|^2 * eps`` is close to 1 for every ``eps``.
    """
    half = int(math.ceil(cutoff * sigma / eps))
    sites = np.arange(-half, half + 1)
    xs = sites * eps - center
    g = (math.pi * sigma * sigma) ** -0.25 * np.exp(-xs * xs / (2 * sigma * sigma)) / math.sqrt(2)
    return Field(-half, g.astype(complex), g.astype(complex))


@dataclass
class ConvergenceReport:
    eps: list
    residuals: list
    orders: list = field(default_factory=list)


def dirac_convergence(mass: float = 1.0, eps_values: Iterable[float] = (1 / 32, 1 / 64, 1 / 128),
                      duration: float = 1.0, sigma: float = 1.0) -> ConvergenceReport:
    """Residuals of a Gaussian spinor evolved to ``duration`` at each spacing.

    ``orders[i]`` is ``log2`` of the residual ratio between ``eps[i]`` and
    ``eps[i+1]`` divided by ``log2`` of the spacing ratio.
    """
    eps_values = list(eps_values)
    residuals = []
    for eps in eps_values:
        m = dirac_matrices(mass, eps)
        n = int(round(duration / eps))
        history = evolve(gaussian_field(eps, sigma), m, n, history=True)
        residuals.append(dirac_residual(history, m.b, eps, m.theta))
    orders = []
    for (e0, r0), (e1, r1) in zip(zip(eps_values, residuals), zip(eps_values[1:], residuals[1:])):
        orders.append(math.log(r0 / r1) / math.log(e0 / e1) if r0 > 0 and r1 > 0 else float("nan"))
    return ConvergenceReport(eps_values, residuals, orders)
