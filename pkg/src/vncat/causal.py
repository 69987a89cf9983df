"""Nets of generator sets over double cones in a 1+1 integer lattice.

Events are integer (t, x) points ordered by the light cone: p precedes q
when the time gap dominates the spatial gap.  A double cone is the set of
events between two comparable endpoints.  A net assigns arrows to cones;
isotony asks nested cones to have nested spans, and the causality check
asks every pair of arrows in spacelike-separated cones to interchange.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .category import Arrow, Context, interchange_residuals
from .commutant import HomSubspace, subspace_contains

__all__ = [
    "Event",
    "causal_leq",
    "DoubleCone",
    "LatticeBounds",
    "cone_events",
    "spacelike",
    "CausalNet",
    "IsotonyReport",
    "CausalityReport",
    "check_isotony",
    "check_causality",
]


class Event(NamedTuple):
    t: int
    x: int


def causal_leq(p: Event, q: Event) -> bool:
    """p can influence q: the time difference covers the spatial distance."""
    return q[0] - p[0] >= abs(q[1] - p[1])


@dataclass(frozen=True)
class DoubleCone:
    """All events between two causally comparable endpoints."""

    lo: Event
    hi: Event

    def __post_init__(self):
        lo = Event(int(self.lo[0]), int(self.lo[1]))
        hi = Event(int(self.hi[0]), int(self.hi[1]))
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if not causal_leq(lo, hi):
            raise ValueError(f"cone endpoints are not causally ordered: {lo} -> {hi}")


@dataclass(frozen=True)
class LatticeBounds:
    tmin: int
    tmax: int
    xmin: int
    xmax: int

    def __post_init__(self):
        if self.tmin > self.tmax or self.xmin > self.xmax:
            raise ValueError("empty lattice bounds")

    def contains(self, e: Event) -> bool:
        return self.tmin <= e[0] <= self.tmax and self.xmin <= e[1] <= self.xmax


def cone_events(cone: DoubleCone) -> list[Event]:
    """Integer events e with lo <= e <= hi in the causal order."""
    out = []
    for t in range(cone.lo[0], cone.hi[0] + 1):
        reach = t - cone.lo[0]
        back = cone.hi[0] - t
        xlo = max(cone.lo[1] - reach, cone.hi[1] - back)
        xhi = min(cone.lo[1] + reach, cone.hi[1] + back)
        for x in range(xlo, xhi + 1):
            out.append(Event(t, x))
    return out


def spacelike(c1: DoubleCone, c2: DoubleCone) -> bool:
    """No event of one cone can influence an event of the other."""
    e1 = cone_events(c1)
    e2 = cone_events(c2)
    for p in e1:
        for q in e2:
            if causal_leq(p, q) or causal_leq(q, p):
                return False
    return True


@dataclass(frozen=True)
class CausalNet:
    """Assignment of generator arrows to double cones inside fixed bounds."""

    bounds: LatticeBounds
    ctx: Context
    assignments: dict

    def __post_init__(self):
        norm = {}
        for cone, arrows in self.assignments.items():
            if not isinstance(cone, DoubleCone):
                cone = DoubleCone(Event(*cone[0]), Event(*cone[1]))
            if not (self.bounds.contains(cone.lo) and self.bounds.contains(cone.hi)):
                raise ValueError(f"cone {cone.lo} -> {cone.hi} leaves the lattice bounds")
            arrows = tuple(arrows)
            for a in arrows:
                if a.ctx != self.ctx:
                    raise ValueError("net arrows must share the net context")
            norm[cone] = arrows
        object.__setattr__(self, "assignments", norm)

    def cones(self) -> list[DoubleCone]:
        return list(self.assignments.keys())


@dataclass(frozen=True)
class IsotonyReport:
    passed: bool
    # (inner cone, outer cone, offending dom name, cod name)
    violations: tuple = ()


@dataclass(frozen=True)
class CausalityReport:
    passed: bool
    worst: tuple | None = None  # (cone a, cone b, residual)
    violations: tuple = ()  # (cone a, cone b, residual) above tolerance


def _spans_by_hom(arrows):
    table = {}
    for a in arrows:
        table.setdefault((a.dom, a.cod), []).append(a)
    return table


def check_isotony(net: CausalNet, tol: float = 1e-9) -> IsotonyReport:
    """Nested cones must carry nested generator spans, hom pair by hom pair."""
    cones = net.cones()
    events = {c: set(cone_events(c)) for c in cones}
    violations = []
    for inner in cones:
        for outer in cones:
            if inner is outer or not events[inner] <= events[outer]:
                continue
            inner_spans = _spans_by_hom(net.assignments[inner])
            outer_spans = _spans_by_hom(net.assignments[outer])
            for key, arrows in inner_spans.items():
                dom, cod = key
                small = HomSubspace(dom, cod, tuple(arrows))
                big = HomSubspace(dom, cod, tuple(outer_spans.get(key, ())))
                if not subspace_contains(big, small, tol):
                    violations.append((inner, outer, dom.name, cod.name))
    return IsotonyReport(not violations, tuple(violations))


def check_causality(net: CausalNet, tol: float = 1e-9) -> CausalityReport:
    """Every arrow pair across spacelike-separated cones must interchange."""
    cones = net.cones()
    worst = None
    violations = []
    for i, ca in enumerate(cones):
        for cb in cones[i + 1 :]:
            if not spacelike(ca, cb):
                continue
            top = 0.0
            for f in net.assignments[ca]:
                for g in net.assignments[cb]:
                    za, zb = interchange_residuals(f, g)
                    scale = max(1.0, f.norm() * g.norm())
                    top = max(top, za / scale, zb / scale)
            if worst is None or top > worst[2]:
                worst = (ca, cb, top)
            if top > tol:
                violations.append((ca, cb, top))
    return CausalityReport(not violations, worst, tuple(violations))
