"""Interaction sequences of a free particle between two observer chains.

A move sequence is a string over ``{P, Q}``: the k-th letter says which
observer the particle influenced at its k-th interaction.  Observers only
see how many detections they made, so every ordering of the letters is an
equally good explanation of the data.  On the space-time lattice a P-move is
the step ``(+1, +1)`` in ``(x, t)`` and a Q-move is ``(-1, +1)``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import CapExceeded
from .poset import Chain, IntervalPair, Poset, causal_poset, fixture_dict, quantify_interval

DEFAULT_CAP = 24
MOVES = "PQ"
STEP = {"P": 1, "Q": -1}


def _check_moves(seq: str) -> str:
    bad = set(seq) - set(MOVES)
    if bad:
        raise ValueError(f"move sequences use only 'P' and 'Q', got {sorted(bad)}")
    return seq


def iter_sequences(n_p: int, n_q: int, cap: int = DEFAULT_CAP) -> Iterator[str]:
    """Stream every string with ``n_p`` P's and ``n_q`` Q's in lexicographic order."""
    if n_p < 0 or n_q < 0:
        raise ValueError("move counts must be non-negative")
    n = n_p + n_q
    if n > cap:
        raise CapExceeded(f"{n} moves exceeds the enumeration cap of {cap}")
    # P < Q, so ascending P-position tuples give ascending strings
    for p_positions in itertools.combinations(range(n), n_p):
        chars = ["Q"] * n
        for i in p_positions:
            chars[i] = "P"
        yield "".join(chars)


def enumerate_sequences(n_p: int, n_q: int, cap: int = DEFAULT_CAP) -> list[str]:
    return list(iter_sequences(n_p, n_q, cap))


def sequences_consistent_with(detections_p: Sequence, detections_q: Sequence, cap: int = DEFAULT_CAP) -> list[str]:
    """All move sequences that explain the given detections.

    Only the number of detections on each chain matters: the chains record
    their own order but nothing relates one chain's detections to the other's.
    """
    return enumerate_sequences(len(detections_p), len(detections_q), cap)


def count_corners(seq: str) -> int:
    """Number of reversals (adjacent unequal letters)."""
    return sum(a != b for a, b in zip(seq, seq[1:]))


def corner_histogram(n_p: int, n_q: int, cap: int = DEFAULT_CAP) -> Counter:
    return Counter(count_corners(s) for s in iter_sequences(n_p, n_q, cap))


@dataclass(frozen=True)
class LatticePath:
    points: tuple

    @property
    def start(self):
        return self.points[0]

    @property
    def end(self):
        return self.points[-1]

    def steps(self) -> list[tuple[int, int]]:
        return [(b[0] - a[0], b[1] - a[1]) for a, b in zip(self.points, self.points[1:])]

    def __len__(self):
        return len(self.points)


def seq_to_path(seq: str, origin: tuple[int, int] = (0, 0)) -> LatticePath:
    x, t = origin
    points = [(x, t)]
    for move in _check_moves(seq):
        x += STEP[move]
        t += 1
        points.append((x, t))
    return LatticePath(tuple(points))


def endpoint(seq: str) -> tuple[int, int]:
    n_p = seq.count("P")
    n_q = len(seq) - n_p
    return n_p - n_q, n_p + n_q


@dataclass
class FreeParticleFixture:
    """Poset of a free particle between two coordinated observer chains.

    ``particle_events[k]`` is the particle's k-th interaction; it influences
    the detection ``detections[k]`` on the chain named by ``seq[k]``.
    """

    seq: str
    poset: Poset
    chain_p: Chain
    chain_q: Chain
    particle: Chain
    particle_events: tuple
    detections: tuple

    @property
    def chains(self) -> tuple[Chain, Chain, Chain]:
        return self.chain_p, self.chain_q, self.particle

    def step_intervals(self) -> list[IntervalPair]:
        ev = self.particle_events
        return [quantify_interval(self.chain_p, self.chain_q, a, b) for a, b in zip(ev, ev[1:])]

    def to_dict(self) -> dict:
        return fixture_dict(self.poset, self.chains)


def build_free_particle_poset(seq: str) -> FreeParticleFixture:
    """Build the causal poset of a particle that zig-zags according to ``seq``.

    Everything is placed on the light-cone lattice ``u = t + x``, ``w = t - x``
    and ordered causally.  The particle's k-th interaction sits at the k-th
    point of ``seq_to_path(seq)``.  Chain ``P`` is the worldline at ``x = -n``
    and ``Q`` the one at ``x = +n`` (``n = len(seq)``), each with an event on
    every integer tick needed for the particle's forward and backward
    projections; valuations are consecutive integers from 0.  A P-move thus
    carries the interval pair ``(2, 0)`` and a Q-move ``(0, 2)``.
    """
    _check_moves(seq)
    n = len(seq)
    if n == 0:
        raise ValueError("the free-particle poset needs at least one move")
    half = n
    path = seq_to_path(seq).points[:n]
    top = 2 * (n - 1)

    coords, labels = {}, {}
    chain_p_ids, chain_q_ids = [], []
    for j in range(-2 * half, top + 1):
        pid = f"P{j + 2 * half}"
        qid = f"Q{j + 2 * half}"
        coords[pid] = (j, j + 2 * half)  # P tracks u
        coords[qid] = (j + 2 * half, j)  # Q tracks w
        chain_p_ids.append(pid)
        chain_q_ids.append(qid)
    particle_ids = []
    for k, (x, t) in enumerate(path, start=1):
        eid = f"pi{k}"
        coords[eid] = (t + x, t - x)
        labels[eid] = f"pi{k}"
        particle_ids.append(eid)

    # detections are the forward projections of each interaction onto its chain
    detections = []
    for k, (move, eid) in enumerate(zip(seq, particle_ids), start=1):
        u, w = coords[eid]
        det = f"P{u + 2 * half}" if move == "P" else f"Q{w + 2 * half}"
        labels[det] = f"{move.lower()}{k}"
        detections.append(det)

    poset = causal_poset(coords, labels)
    chain_p = Chain(poset, tuple(chain_p_ids), name="P")
    chain_q = Chain(poset, tuple(chain_q_ids), name="Q")
    particle = Chain(poset, tuple(particle_ids), name="Pi")
    return FreeParticleFixture(seq, poset, chain_p, chain_q, particle, tuple(particle_ids), tuple(detections))
