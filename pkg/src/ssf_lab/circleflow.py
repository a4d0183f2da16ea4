"""Integer step functions on the punctured circle and spectral flow.

The circle is parametrised by theta in (0, 2*pi); the point 1 (theta = 0)
is excluded and acts as the essential point.  Step functions are
left-continuous: the value at a jump phase still includes the jump, which
encodes the half-open arc convention [theta_1, theta_2) used by the
counting functions.

Spectral flow of a sampled path of unitary matrices is computed by the
piecewise gap formula: on each parameter subinterval a circle point is
certified to stay clear of all checked spectra, and the flow increment is
a difference of counting functions anchored at that point.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import EndpointDivergence, RefinementLimitExceeded
from .linalg import eigenphases

TWO_PI = 2 * np.pi


class CircleStepFunction:
    """Left-continuous integer step function on the punctured circle.

    ``value(theta) = tail + sum of heights m_j over jumps with theta_j >= theta``.
    Jumps are stored ascending with non-zero integer heights; ``tail`` is the
    value on the last subinterval before 2*pi.
    """

    __slots__ = ("jumps", "tail")

    def __init__(self, jumps: Sequence[tuple] = (), tail: int = 0):
        cleaned = []
        last = 0.0
        for theta, m in jumps:
            theta = float(theta)
            m = int(m)
            if not 0.0 < theta < TWO_PI:
                raise ValueError(f"jump phase {theta} outside (0, 2*pi)")
            if theta <= last and cleaned:
                raise ValueError("jump phases must be strictly ascending")
            if m == 0:
                raise ValueError("jump heights must be non-zero")
            cleaned.append((theta, m))
            last = theta
        self.jumps = tuple(cleaned)
        self.tail = int(tail)

    # -- evaluation ---------------------------------------------------

    def value_at(self, theta: float) -> int:
        if not 0.0 < theta < TWO_PI:
            raise ValueError(f"theta {theta} outside (0, 2*pi)")
        total = self.tail
        for tj, m in self.jumps:
            if tj >= theta:
                total += m
        return total

    def intervals(self):
        """Constancy intervals as (lo, hi, value) covering (0, 2*pi)."""
        out = []
        hi_values = []
        running = self.tail
        for tj, m in reversed(self.jumps):
            hi_values.append(running)
            running += m
        hi_values.reverse()
        lo = 0.0
        for (tj, m), after in zip(self.jumps, hi_values):
            out.append((lo, tj, after + m))
            lo = tj
        out.append((lo, TWO_PI, self.tail))
        return out

    def integral(self) -> float:
        """Exact integral over (0, 2*pi); no quadrature is involved."""
        return float(sum(v * (hi - lo) for lo, hi, v in self.intervals()))

    # -- algebra ------------------------------------------------------

    def add_constant(self, n: int) -> "CircleStepFunction":
        return CircleStepFunction(self.jumps, self.tail + int(n))

    def __add__(self, other: "CircleStepFunction") -> "CircleStepFunction":
        heights: dict = {}
        for tj, m in self.jumps:
            heights[tj] = heights.get(tj, 0) + m
        for tj, m in other.jumps:
            heights[tj] = heights.get(tj, 0) + m
        jumps = sorted((t, m) for t, m in heights.items() if m != 0)
        return CircleStepFunction(jumps, self.tail + other.tail)

    def __neg__(self) -> "CircleStepFunction":
        return CircleStepFunction([(t, -m) for t, m in self.jumps], -self.tail)

    def __sub__(self, other: "CircleStepFunction") -> "CircleStepFunction":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CircleStepFunction):
            return NotImplemented
        return self.tail == other.tail and self.jumps == other.jumps

    def __hash__(self):
        return hash((self.jumps, self.tail))

    def is_nonincreasing(self) -> bool:
        return all(m > 0 for _, m in self.jumps)

    def __repr__(self):
        return f"CircleStepFunction(jumps={list(self.jumps)}, tail={self.tail})"

    # -- serialization ------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "tail": self.tail,
            "jumps": [{"theta": t, "m": m} for t, m in self.jumps],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "CircleStepFunction":
        jumps = [(j["theta"], j["m"]) for j in obj["jumps"]]
        return cls(jumps, obj["tail"])


def zero_step() -> CircleStepFunction:
    return CircleStepFunction((), 0)


def cluster_jumps(f: CircleStepFunction, tol: float) -> CircleStepFunction:
    """Merge jumps closer than ``tol`` (heights add, phase = first of cluster)."""
    merged = []
    for theta, m in f.jumps:
        if merged and theta - merged[-1][0] <= tol:
            merged[-1][1] += m
        else:
            merged.append([theta, m])
    return CircleStepFunction([(t, m) for t, m in merged if m != 0], f.tail)


def steps_match(f: CircleStepFunction, g: CircleStepFunction, phase_tol: float = 1e-8) -> bool:
    """Step-function equality up to jump phases within ``phase_tol``."""
    fc = cluster_jumps(f, phase_tol)
    gc = cluster_jumps(g, phase_tol)
    if fc.tail != gc.tail or len(fc.jumps) != len(gc.jumps):
        return False
    return all(
        abs(tf - tg) <= phase_tol and mf == mg
        for (tf, mf), (tg, mg) in zip(fc.jumps, gc.jumps)
    )


# -- level sequences (generalised inverses of step functions) ----------


class LevelSequence:
    """The map n -> sup({0} u {theta : f > n}), non-increasing on the integers.

    Values are 2*pi for all small n and 0 for all large n; only a finite
    window is stored.  A non-increasing step function is recovered exactly
    from its level sequence.
    """

    __slots__ = ("n_lo", "values")

    def __init__(self, n_lo: int, values: Sequence[float]):
        self.n_lo = int(n_lo)
        vals = [float(v) for v in values]
        # trim trailing zeros / leading 2*pi outside the informative window
        while vals and vals[0] >= TWO_PI:
            vals.pop(0)
            self.n_lo += 1
        while vals and vals[-1] <= 0.0:
            vals.pop()
        self.values = tuple(vals)

    def level(self, n: int) -> float:
        if n < self.n_lo:
            return TWO_PI
        if n >= self.n_lo + len(self.values):
            return 0.0
        return self.values[n - self.n_lo]

    def window(self):
        return self.n_lo, self.n_lo + len(self.values)

    def __eq__(self, other):
        if not isinstance(other, LevelSequence):
            return NotImplemented
        return self.n_lo == other.n_lo and self.values == other.values

    def __repr__(self):
        return f"LevelSequence(n_lo={self.n_lo}, values={list(self.values)})"


def level_sequence(f: CircleStepFunction) -> LevelSequence:
    """Level boundaries of a step function: n -> sup({0} u {theta : f > n})."""
    ivs = f.intervals()
    vals = [v for _, _, v in ivs]
    n_min, n_max = min(vals), max(vals)
    out = []
    for n in range(n_min - 1, n_max + 1):
        sup = 0.0
        for lo, hi, v in reversed(ivs):
            if v > n:
                sup = hi
                break
        out.append(sup)
    return LevelSequence(n_min - 1, out)


def step_from_levels(seq: LevelSequence) -> CircleStepFunction:
    """Reconstruct the non-increasing step function f(theta) = inf{n : level(n) < theta}.

    f equals n exactly on the arc (level(n), level(n-1)], so the tail is the
    smallest n whose level boundary lies below 2*pi and every interior level
    value carries a unit jump (coalescing equal boundaries).
    """
    n_lo, n_hi = seq.window()
    # after trimming, level(n_lo) < 2*pi and level(n) = 0 for n >= n_hi
    jumps: dict = {}
    for n in range(n_lo, n_hi):
        v = seq.level(n)
        if 0.0 < v < TWO_PI:
            jumps[v] = jumps.get(v, 0) + 1
    return CircleStepFunction(sorted(jumps.items()), n_lo)


def step_distance(f: CircleStepFunction, g: CircleStepFunction, p) -> float:
    """l_p distance of the level sequences; for p = 1 this equals the
    integral of |f - g| over the circle."""
    sf = level_sequence(f)
    sg = level_sequence(g)
    lo = min(sf.window()[0], sg.window()[0])
    hi = max(sf.window()[1], sg.window()[1])
    diffs = np.array([sf.level(n) - sg.level(n) for n in range(lo, hi)])
    if p == np.inf or p == "inf":
        return float(np.max(np.abs(diffs))) if diffs.size else 0.0
    return float(np.sum(np.abs(diffs) ** p) ** (1.0 / p))


# -- spectrum classes and counting functions ---------------------------


class SpectrumClass:
    """Finite multiset of eigenphases in (0, 2*pi) of a unitary matrix."""

    __slots__ = ("phases",)

    def __init__(self, phases: Sequence[float] = ()):
        ph = sorted(float(t) for t in phases)
        for t in ph:
            if not 0.0 < t < TWO_PI:
                raise ValueError(f"phase {t} outside (0, 2*pi)")
        self.phases = tuple(ph)

    def __len__(self):
        return len(self.phases)

    def __eq__(self, other):
        if not isinstance(other, SpectrumClass):
            return NotImplemented
        return self.phases == other.phases

    def __repr__(self):
        return f"SpectrumClass({list(self.phases)})"


def spectrum_class(w, id_tol: float = 1e-8) -> SpectrumClass:
    """Spectrum class of a unitary matrix: its eigenphases away from 1."""
    return SpectrumClass(eigenphases(w, id_tol=id_tol))


def signed_phase_count(theta1: float, theta2: float, spec: SpectrumClass) -> int:
    """Signed number of eigenphases on the half-open arc between the angles.

    Counts phases in [theta1, theta2) when theta1 < theta2, is zero on the
    diagonal and antisymmetric under swapping the angles.
    """
    if not (0.0 < theta1 < TWO_PI and 0.0 < theta2 < TWO_PI):
        raise ValueError("angles must lie in (0, 2*pi)")
    if theta1 == theta2:
        return 0
    lo, hi = (theta1, theta2) if theta1 < theta2 else (theta2, theta1)
    count = bisect.bisect_left(spec.phases, hi) - bisect.bisect_left(spec.phases, lo)
    return count if theta1 < theta2 else -count


def counting_step(anchor: float, spec: SpectrumClass) -> CircleStepFunction:
    """The function theta -> signed_phase_count(theta, anchor, spec).

    This is the canonical non-increasing lift attached to a spectrum class:
    a jump of height = multiplicity sits at every phase of the class and the
    value vanishes at the anchor.
    """
    jumps: dict = {}
    for t in spec.phases:
        jumps[t] = jumps.get(t, 0) + 1
    tail = -sum(1 for t in spec.phases if t >= anchor)
    return CircleStepFunction(sorted(jumps.items()), tail)


def circle_distance(a: float, b: float) -> float:
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


def class_distance(a: SpectrumClass, b: SpectrumClass) -> float:
    """Greedy nearest-phase circular matching distance; inf on size mismatch.

    Diagnostic only: flow values never depend on a pairing, only on
    counting functions.
    """
    if len(a) != len(b):
        return np.inf
    rest_a = list(a.phases)
    rest_b = list(b.phases)
    worst = 0.0
    while rest_a:
        best = None
        for i, x in enumerate(rest_a):
            for j, y in enumerate(rest_b):
                d = circle_distance(x, y)
                if best is None or d < best[0]:
                    best = (d, i, j)
        worst = max(worst, best[0])
        rest_a.pop(best[1])
        rest_b.pop(best[2])
    return worst


# -- paths of unitaries and their spectral flow ------------------------


@dataclass
class UnitaryPathSampler:
    """Deterministic sampler of a path of unitary matrices on open (0, 1).

    ``endpoint_limits`` may supply the spectrum classes at t -> 0+ and
    t -> 1-; when absent they are extrapolated by repeated sampling.
    """

    eval: Callable[[float], object]
    endpoint_limits: Optional[tuple] = None


@dataclass
class FlowConfig:
    """Knobs for flow computation and determinant tracking."""

    eps_gap: float = 1e-3
    max_depth: int = 40
    initial_segments: int = 8
    id_tol: float = 1e-8
    endpoint_tol: float = 1e-6
    y_max: float = 1e3
    grid_ratio: float = 0.8

    def __post_init__(self):
        if self.eps_gap <= 0:
            raise ValueError("eps_gap must be positive")
        if not 0 < self.grid_ratio < 1:
            raise ValueError("grid_ratio must lie in (0, 1)")


def _gap_candidates(phases: Sequence[float]):
    """Arc midpoints between consecutive phases, widest arc first.

    The essential point (theta = 0 and 2*pi) is always treated as a
    divider, so candidates never sit next to 1.
    """
    dividers = [0.0] + sorted(set(phases)) + [TWO_PI]
    arcs = []
    for lo, hi in zip(dividers[:-1], dividers[1:]):
        if hi - lo > 0:
            arcs.append((hi - lo, (lo + hi) / 2))
    arcs.sort(reverse=True)
    return [mid for _, mid in arcs]


def _certified(z: float, classes, eps_gap: float) -> bool:
    if min(z, TWO_PI - z) < eps_gap:
        return False
    for cls in classes:
        for t in cls.phases:
            if circle_distance(z, t) < eps_gap:
                return False
    return True


def _tube_excess(sampled: SpectrumClass, limit: SpectrumClass) -> float:
    """How far the sampled class strays from the limit class.

    Eigenphases may converge either to a limit phase or into the essential
    point 1 (where they leave the class); conversely every limit phase must
    be approximated.  Returns the worst unmatched circular distance.
    """
    worst = 0.0
    for p in sampled.phases:
        d = min(p, TWO_PI - p)
        for l in limit.phases:
            d = min(d, circle_distance(p, l))
        worst = max(worst, d)
    for l in limit.phases:
        d = min((circle_distance(l, p) for p in sampled.phases), default=np.inf)
        worst = max(worst, d)
    return worst


def _extrapolate_endpoint(sample, side: str, cfg: FlowConfig) -> SpectrumClass:
    """Limit class at t -> 0+ or t -> 1- by successive halving."""
    prev = None
    for k in range(3, 52):
        t = 2.0 ** (-k)
        if side == "upper":
            t = 1.0 - t
            if t >= 1.0:  # float saturation, no honest sample left
                break
        cur = sample(t)
        if prev is not None and class_distance(prev, cur) < cfg.endpoint_tol:
            return cur
        prev = cur
    raise EndpointDivergence(f"no settled spectrum class at the {side} endpoint")


def spectral_flow(path: UnitaryPathSampler, cfg: FlowConfig = FlowConfig(),
                  trace: Optional[list] = None) -> CircleStepFunction:
    """Spectral flow of the path through every circle point.

    Implements the piecewise gap formula: the parameter interval is split
    until, on each piece, some circle point keeps distance >= cfg.eps_gap
    from the spectra of both endpoint samples and one midpoint sample; the
    flow is then the sum of counting-function differences anchored at those
    certified points.  The result does not depend on admissible grid
    choices (lift uniqueness), which the tests exercise by doubling grids.
    """
    cache: dict = {}

    def sample(t: float) -> SpectrumClass:
        if t not in cache:
            cls = spectrum_class(path.eval(t), id_tol=cfg.id_tol)
            cache[t] = cls
            if trace is not None:
                trace.append((t, cls.phases))
        return cache[t]

    if path.endpoint_limits is not None:
        lower, upper = path.endpoint_limits
        cache[0.0] = lower
        cache[1.0] = upper
    else:
        cache[0.0] = _extrapolate_endpoint(sample, "lower", cfg)
        cache[1.0] = _extrapolate_endpoint(sample, "upper", cfg)

    n = max(1, int(cfg.initial_segments))
    knots = [i / n for i in range(n + 1)]
    stack = [(knots[i], knots[i + 1], 0) for i in range(n)]
    stack.reverse()
    total = zero_step()
    tube = cfg.eps_gap / 2
    while stack:
        a, b, depth = stack.pop()
        cls_a = sample(a)
        cls_b = sample(b)
        mid = (a + b) / 2
        cls_mid = sample(mid)

        def bisect_or_fail():
            if depth >= cfg.max_depth:
                raise RefinementLimitExceeded(
                    f"no certified gap on [{a}, {b}] at depth {depth}"
                )
            stack.append((mid, b, depth + 1))
            stack.append((a, mid, depth + 1))

        # Segments touching an endpoint hide arbitrarily fast eigenphase
        # motion out of the essential point: refine until the interior
        # samples sit in narrow tubes around the limit class before
        # trusting any gap.
        if a == 0.0 and max(_tube_excess(cls_b, cls_a),
                            _tube_excess(cls_mid, cls_a)) > tube:
            bisect_or_fail()
            continue
        if b == 1.0 and max(_tube_excess(cls_a, cls_b),
                            _tube_excess(cls_mid, cls_b)) > tube:
            bisect_or_fail()
            continue

        certified = [
            z for z in _gap_candidates(cls_a.phases + cls_b.phases)
            if _certified(z, (cls_a, cls_b, cls_mid), cfg.eps_gap)
        ]
        if not certified:
            bisect_or_fail()
            continue
        increment = counting_step(certified[0], cls_b) - counting_step(certified[0], cls_a)
        if len(certified) >= 2:
            # an anchor crossed between samples shifts the increment by a
            # constant; two independent anchors agree only on true gaps
            second = (counting_step(certified[1], cls_b)
                      - counting_step(certified[1], cls_a))
            if increment != second:
                bisect_or_fail()
                continue
        total = total + increment
    return total


def concatenate_paths(first: UnitaryPathSampler, second: UnitaryPathSampler) -> UnitaryPathSampler:
    """Run ``first`` on t in (0, 1/2] and ``second`` on (1/2, 1)."""

    def ev(t: float):
        if t <= 0.5:
            return first.eval(min(2 * t, 1 - 1e-12))
        return second.eval(max(2 * t - 1, 1e-12))

    limits = None
    if first.endpoint_limits is not None and second.endpoint_limits is not None:
        limits = (first.endpoint_limits[0], second.endpoint_limits[1])
    return UnitaryPathSampler(eval=ev, endpoint_limits=limits)
