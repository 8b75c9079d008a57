"""Finite posets of events, observer chains and chain-projection quantification.

An observer is a chain of events carrying a monotone valuation.  Any event
of the poset can be projected onto a chain (forward: least chain element
above it, backward: greatest chain element below it).  With two coordinated
chains ``P`` and ``Q`` an interval ``[x, y]`` gets the pair
``(dp, dq)`` whose product classifies it as chain-like, antichain-like or
projection-like, and whose half-sum/half-difference are ``dt`` and ``dx``.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import numbers
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import (
    CycleError,
    FixtureError,
    InvalidChain,
    NotBetween,
    ProjectionUndefined,
    UnknownEvent,
    ZeroDuration,
)

EventId = Hashable

# ProjectionLike tolerance for non-integer valuations, relative to max(1, dp^2, dq^2).
PROJECTION_RTOL = 1e-12


@dataclass(frozen=True)
class Event:
    id: EventId
    label: str | None = None


class Poset:
    """A finite partial order, stored as its full transitive closure.

    Every event keeps the set of events above and below it (itself included),
    so comparability is a set lookup.  Meant for desk-scale fixtures of up to
    about a thousand events.
    """

    def __init__(self):
        self._events: dict[EventId, Event] = {}
        self._up: dict[EventId, set] = {}
        self._down: dict[EventId, set] = {}

    def __len__(self):
        return len(self._events)

    def __contains__(self, x):
        return x in self._events

    def __iter__(self):
        return iter(self._events)

    @property
    def events(self) -> list[Event]:
        return list(self._events.values())

    def event(self, x) -> Event:
        self._check(x)
        return self._events[x]

    def _check(self, *ids):
        for x in ids:
            if x not in self._events:
                raise UnknownEvent(x)

    def add_event(self, label: str | None = None, id: EventId | None = None) -> EventId:
        """Insert a new event, incomparable to every existing one.

        The id defaults to ``label`` when that is free, otherwise to ``e<n>``.
        """
        if id is None:
            if label is not None and label not in self._events:
                id = label
            else:
                n = len(self._events)
                while f"e{n}" in self._events:
                    n += 1
                id = f"e{n}"
        elif id in self._events:
            raise FixtureError(f"duplicate event id {id!r}")
        self._events[id] = Event(id, label)
        self._up[id] = {id}
        self._down[id] = {id}
        return id

    def add_relation(self, a, b) -> Poset:
        """Declare ``a <= b`` and re-close the order transitively."""
        self._check(a, b)
        if b in self._up[a]:
            return self
        if a in self._up[b]:
            raise CycleError(f"{b!r} <= {a!r} already holds; adding {a!r} <= {b!r} would create a cycle")
        above = self._up[b]
        below = self._down[a]
        for u in below:
            self._up[u] |= above
        for w in above:
            self._down[w] |= below
        return self

    def le(self, a, b) -> bool:
        return b in self._up[a]

    def lt(self, a, b) -> bool:
        return a != b and b in self._up[a]

    def comparable(self, a, b) -> bool:
        return b in self._up[a] or a in self._up[b]

    def up(self, x) -> frozenset:
        return frozenset(self._up[x])

    def down(self, x) -> frozenset:
        return frozenset(self._down[x])

    def relation(self) -> set[tuple]:
        """All pairs ``(a, b)`` with ``a <= b``, reflexive pairs included."""
        return {(a, b) for a, ups in self._up.items() for b in ups}

    def covers(self) -> list[tuple]:
        """The Hasse diagram: pairs ``a < b`` with nothing strictly between."""
        out = []
        for a in self._events:
            strict = self._up[a] - {a}
            for b in strict:
                if not any(b in self._up[c] for c in strict if c != b):
                    out.append((a, b))
        return out


def add_event(poset: Poset, label: str | None = None) -> EventId:
    return poset.add_event(label)


def add_relation(poset: Poset, a, b) -> Poset:
    return poset.add_relation(a, b)


@dataclass(frozen=True, eq=False)
class Chain:
    """A totally ordered run of events with a monotone real valuation.

    ``valuation`` defaults to consecutive integers starting at 0.  ``segment``
    optionally names the first and last element of the calibrated stretch of
    the chain; projections that land outside it are rejected when intervals
    are quantified.
    """

    poset: Poset
    elements: tuple
    valuation: Mapping = None
    name: str = ""
    segment: tuple | None = None
    _index: dict = field(init=False, repr=False)

    def __post_init__(self):
        elements = tuple(self.elements)
        object.__setattr__(self, "elements", elements)
        if not elements:
            raise InvalidChain("a chain needs at least one element")
        self.poset._check(*elements)
        if len(set(elements)) != len(elements):
            raise InvalidChain(f"chain {self.name!r} repeats an element")
        for a, b in zip(elements, elements[1:]):
            if not self.poset.lt(a, b):
                raise InvalidChain(f"chain {self.name!r}: {a!r} < {b!r} does not hold")

        if self.valuation is None:
            valuation = {e: i for i, e in enumerate(elements)}
        elif isinstance(self.valuation, Mapping):
            valuation = dict(self.valuation)
        else:
            values = list(self.valuation)
            if len(values) != len(elements):
                raise InvalidChain(f"chain {self.name!r}: {len(values)} values for {len(elements)} elements")
            valuation = dict(zip(elements, values))
        missing = [e for e in elements if e not in valuation]
        if missing:
            raise InvalidChain(f"chain {self.name!r}: no value for {missing}")
        for a, b in zip(elements, elements[1:]):
            if valuation[a] > valuation[b]:
                raise InvalidChain(f"chain {self.name!r}: valuation decreases from {a!r} to {b!r}")
        object.__setattr__(self, "valuation", valuation)
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(elements)})

        if self.segment is not None:
            lo, hi = self.segment
            if lo not in self._index or hi not in self._index or self._index[lo] > self._index[hi]:
                raise InvalidChain(f"chain {self.name!r}: bad segment {self.segment!r}")
            object.__setattr__(self, "segment", (lo, hi))

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self._index

    def value(self, e) -> float:
        return self.valuation[e]

    def position(self, e) -> int:
        return self._index[e]

    def in_segment(self, e) -> bool:
        if self.segment is None:
            return e in self._index
        lo, hi = self.segment
        return self._index[lo] <= self._index.get(e, -1) <= self._index[hi]


def forward_project(chain: Chain, x):
    """Least chain element ``e`` with ``x <= e``, or ``None``."""
    le = chain.poset.le
    els = chain.elements
    # x <= e is up-closed along the chain, so bisect for the first hit
    lo, hi = 0, len(els)
    while lo < hi:
        mid = (lo + hi) // 2
        if le(x, els[mid]):
            hi = mid
        else:
            lo = mid + 1
    return els[lo] if lo < len(els) else None


def backward_project(chain: Chain, x):
    """Greatest chain element ``e`` with ``e <= x``, or ``None``."""
    le = chain.poset.le
    els = chain.elements
    lo, hi = 0, len(els)
    while lo < hi:
        mid = (lo + hi) // 2
        if le(els[mid], x):
            lo = mid + 1
        else:
            hi = mid
    return els[lo - 1] if lo > 0 else None


def quantify_element(chain: Chain, x):
    """The pair ``(v(Px), v(P̄x))``.

    A side whose projection does not exist is ``None`` (the dot of the usual
    notation); when neither exists the result itself is ``None``.
    """
    fwd = forward_project(chain, x)
    bwd = backward_project(chain, x)
    if fwd is None and bwd is None:
        return None
    return (
        chain.value(fwd) if fwd is not None else None,
        chain.value(bwd) if bwd is not None else None,
    )


def _require(proj, what):
    if proj is None:
        raise ProjectionUndefined(what)
    return proj


def check_betweenness(chain_p: Chain, chain_q: Chain, x) -> bool:
    """True iff ``Qx = Q(P̄x)`` and ``Px = P(Q̄x)``."""
    qx = _require(forward_project(chain_q, x), f"{x!r} has no forward projection onto {chain_q.name or 'Q'}")
    px = _require(forward_project(chain_p, x), f"{x!r} has no forward projection onto {chain_p.name or 'P'}")
    pbx = _require(backward_project(chain_p, x), f"{x!r} has no backward projection onto {chain_p.name or 'P'}")
    qbx = _require(backward_project(chain_q, x), f"{x!r} has no backward projection onto {chain_q.name or 'Q'}")
    q_pbx = _require(forward_project(chain_q, pbx), f"{pbx!r} has no forward projection onto {chain_q.name or 'Q'}")
    p_qbx = _require(forward_project(chain_p, qbx), f"{qbx!r} has no forward projection onto {chain_p.name or 'P'}")
    return qx == q_pbx and px == p_qbx


class IntervalClass(enum.Enum):
    CHAIN_LIKE = "chain-like"
    ANTICHAIN_LIKE = "antichain-like"
    PROJECTION_LIKE = "projection-like"

    @property
    def spacetime_name(self) -> str:
        return {
            IntervalClass.CHAIN_LIKE: "time-like",
            IntervalClass.ANTICHAIN_LIKE: "space-like",
            IntervalClass.PROJECTION_LIKE: "light-like",
        }[self]


@dataclass(frozen=True)
class IntervalPair:
    dp: float
    dq: float

    @property
    def scalar(self):
        return interval_scalar(self)

    def classify(self) -> IntervalClass:
        return classify_interval(self)

    def to_spacetime(self) -> SpacetimeInterval:
        return to_spacetime(self)

    @property
    def beta(self) -> float:
        return beta(self)


@dataclass(frozen=True)
class SpacetimeInterval:
    dt: float
    dx: float

    @property
    def metric(self):
        return self.dt * self.dt - self.dx * self.dx


def quantify_interval(chain_p: Chain, chain_q: Chain, x, y) -> IntervalPair:
    """Interval pair ``(v_P(Py) - v_P(Px), v_Q(Qy) - v_Q(Qx))``.

    Both events must lie between the chains and all four forward projections
    must land inside the chains' calibrated segments.
    """
    for e in (x, y):
        if not check_betweenness(chain_p, chain_q, e):
            raise NotBetween(f"{e!r} is not between {chain_p.name or 'P'} and {chain_q.name or 'Q'}")
    px, py = forward_project(chain_p, x), forward_project(chain_p, y)
    qx, qy = forward_project(chain_q, x), forward_project(chain_q, y)
    for chain, proj in ((chain_p, px), (chain_p, py), (chain_q, qx), (chain_q, qy)):
        if not chain.in_segment(proj):
            raise NotBetween(f"projection {proj!r} lies outside the calibrated segment of {chain.name or 'chain'}")
    return IntervalPair(chain_p.value(py) - chain_p.value(px), chain_q.value(qy) - chain_q.value(qx))


def interval_scalar(pair: IntervalPair):
    return pair.dp * pair.dq


def _exact(v) -> bool:
    return isinstance(v, numbers.Rational)


def classify_interval(pair: IntervalPair) -> IntervalClass:
    s = interval_scalar(pair)
    if _exact(pair.dp) and _exact(pair.dq):
        zero = s == 0
    else:
        zero = abs(s) <= PROJECTION_RTOL * max(1.0, pair.dp * pair.dp, pair.dq * pair.dq)
    if zero:
        return IntervalClass.PROJECTION_LIKE
    return IntervalClass.CHAIN_LIKE if s > 0 else IntervalClass.ANTICHAIN_LIKE


def to_spacetime(pair: IntervalPair) -> SpacetimeInterval:
    return SpacetimeInterval((pair.dp + pair.dq) / 2, (pair.dp - pair.dq) / 2)


def from_spacetime(interval: SpacetimeInterval) -> IntervalPair:
    return IntervalPair(interval.dt + interval.dx, interval.dt - interval.dx)


def beta(pair: IntervalPair) -> float:
    """Poset analogue of speed, ``(dp - dq) / (dp + dq) = dx / dt``."""
    total = pair.dp + pair.dq
    if total == 0:
        raise ZeroDuration(f"dp + dq = 0 for {pair}")
    return (pair.dp - pair.dq) / total


# -- building posets from light-cone coordinates -----------------------------


def causal_poset(coords: Mapping, labels: Mapping | None = None) -> Poset:
    """Poset of events at light-cone coordinates ``(u, w)`` under the causal order.

    ``a <= b`` iff ``u_a <= u_b`` and ``w_a <= w_b``; with ``t = (u + w)/2`` and
    ``x = (u - w)/2`` this is the causal order of 1+1 Minkowski space.
    Events are inserted in the iteration order of ``coords``.
    """
    labels = labels or {}
    poset = Poset()
    for e in coords:
        poset.add_event(labels.get(e), id=e)
    # inserting in (u + w) order lets every relation after the first few be implied
    order = sorted(coords, key=lambda e: (coords[e][0] + coords[e][1], coords[e]))
    for i, a in enumerate(order):
        ua, wa = coords[a]
        for b in order[i + 1:]:
            ub, wb = coords[b]
            if ua <= ub and wa <= wb and not poset.le(a, b):
                poset.add_relation(a, b)
    return poset


# -- fixture I/O --------------------------------------------------------------


def load_fixture(source) -> tuple[Poset, dict[str, Chain]]:
    """Load a poset fixture from a path, a file object, a JSON string or a dict.

    Schema: ``{"events": [{"id", "label"}], "covers": [[a, b]],
    "chains": [{"name", "elements", "valuation", "segment"?}]}``.
    """
    if isinstance(source, Mapping):
        doc = source
    elif hasattr(source, "read"):
        doc = json.load(source)
    else:
        text = str(source)
        if text.lstrip().startswith("{"):
            doc = json.loads(text)
        else:
            with open(text, encoding="utf-8") as fh:
                doc = json.load(fh)

    if not isinstance(doc, Mapping) or "events" not in doc:
        raise FixtureError("fixture must be an object with an 'events' list")
    poset = Poset()
    for item in doc["events"]:
        if isinstance(item, Mapping):
            if "id" not in item:
                raise FixtureError(f"event without id: {item!r}")
            eid, label = item["id"], item.get("label")
        else:
            eid, label = item, None
        poset.add_event(label, id=eid)
    for pair in doc.get("covers", []):
        if len(pair) != 2:
            raise FixtureError(f"cover must be a pair, got {pair!r}")
        a, b = pair
        if a not in poset or b not in poset:
            raise FixtureError(f"cover {pair!r} names an unknown event")
        if a == b:
            continue
        poset.add_relation(a, b)

    chains = {}
    for entry in doc.get("chains", []):
        name = entry.get("name")
        if not name or name in chains:
            raise FixtureError(f"chains need unique names, got {name!r}")
        segment = entry.get("segment")
        try:
            chains[name] = Chain(
                poset,
                tuple(entry["elements"]),
                entry.get("valuation"),
                name=name,
                segment=tuple(segment) if segment is not None else None,
            )
        except (UnknownEvent, InvalidChain) as exc:
            raise FixtureError(f"chain {name!r}: {exc}") from exc
    return poset, chains


def fixture_dict(poset: Poset, chains: Iterable[Chain]) -> dict:
    events = [{"id": e.id, "label": e.label} for e in poset.events]
    chain_docs = []
    for ch in chains:
        doc = {"name": ch.name, "elements": list(ch.elements), "valuation": [ch.value(e) for e in ch.elements]}
        if ch.segment is not None:
            doc["segment"] = list(ch.segment)
        chain_docs.append(doc)
    return {"events": events, "covers": [list(c) for c in sorted(poset.covers(), key=str)], "chains": chain_docs}


# -- tables ---------------------------------------------------------------------

INTERVAL_COLUMNS = ("x", "y", "dp", "dq", "dt", "dx", "scalar", "class", "beta")


def fmt_number(v) -> str:
    if v is None:
        return ""
    if isinstance(v, numbers.Integral):
        return str(int(v))
    return format(float(v), ".17g")


def interval_row(chain_p: Chain, chain_q: Chain, x, y) -> dict:
    pair = quantify_interval(chain_p, chain_q, x, y)
    st = to_spacetime(pair)
    try:
        b = beta(pair)
    except ZeroDuration:
        b = None
    return {
        "x": x, "y": y, "dp": pair.dp, "dq": pair.dq, "dt": st.dt, "dx": st.dx,
        "scalar": interval_scalar(pair), "class": classify_interval(pair).value, "beta": b,
    }


def interval_table(chain_p: Chain, chain_q: Chain, pairs: Iterable[Sequence]) -> list[dict]:
    return [interval_row(chain_p, chain_q, x, y) for x, y in pairs]


def write_interval_csv(rows: Iterable[Mapping], fh=None) -> str:
    """Write interval rows as CSV; returns the text when ``fh`` is None."""
    buf = fh if fh is not None else io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(INTERVAL_COLUMNS)
    for row in rows:
        writer.writerow([
            row[c] if c in ("x", "y", "class") else fmt_number(row[c]) for c in INTERVAL_COLUMNS
        ])
    return buf.getvalue() if fh is None else ""


ELEMENT_COLUMNS = ("event", "chain", "forward", "backward", "v_forward", "v_backward")


def element_rows(chains: Iterable[Chain], events: Iterable) -> list[dict]:
    rows = []
    for x in events:
        for ch in chains:
            fwd, bwd = forward_project(ch, x), backward_project(ch, x)
            rows.append({
                "event": x, "chain": ch.name,
                "forward": "" if fwd is None else fwd,
                "backward": "" if bwd is None else bwd,
                "v_forward": None if fwd is None else ch.value(fwd),
                "v_backward": None if bwd is None else ch.value(bwd),
            })
    return rows


def write_element_csv(rows: Iterable[Mapping], fh=None) -> str:
    buf = fh if fh is not None else io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(ELEMENT_COLUMNS)
    for row in rows:
        writer.writerow([
            fmt_number(row[c]) if c.startswith("v_") else row[c] for c in ELEMENT_COLUMNS
        ])
    return buf.getvalue() if fh is None else ""
