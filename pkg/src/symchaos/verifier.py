"""Desk-scale evidence for the chaos predicates of the induced systems.

Density and transitivity are checked at a finite dyadic resolution p and
the reports state p, so no claim beyond that resolution is implied.  Every
check is exact rational arithmetic with deterministic enumeration order;
elapsed_ms is the only nondeterministic report field.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple, Union

from .decomposition import InducedSystem, semiconjugacy_check
from .graphs import GraphSystem, GraphPoint, Interior, graph_map, graph_metric
from .interval import baker, baker_system, tent, tent_system
from .streams import StreamWord, dense_word, stream_c_step, stream_shift
from .words import Word, max_bits_bound, periodic_words, word_value

__all__ = [
    "ChaosReport",
    "IntervalTarget",
    "GraphTarget",
    "tent_target",
    "baker_target",
    "graph_target",
    "identity_target",
    "constant_target",
    "rotation_target",
    "periodic_density",
    "dense_orbit_coverage",
    "transitivity_witness",
    "sensitivity_probe",
    "lemma6_commute_check",
]

HALF = Fraction(1, 2)

Branch = Tuple[Fraction, Fraction, Fraction, Fraction]  # lo, hi, slope, intercept


@dataclass
class ChaosReport:
    """Outcome of one property check; passes iff the witness list is empty
    of counterexamples (a failing report always carries at least one)."""

    system: str
    property: str
    params: dict
    verdict: str
    witnesses: list
    elapsed_ms: int = 0

    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self) -> dict:
        return {
            "system": self.system,
            "property": self.property,
            "params": self.params,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "elapsed_ms": self.elapsed_ms,
        }

    @classmethod
    def from_json(cls, data: dict) -> "ChaosReport":
        return cls(data["system"], data["property"], data["params"],
                   data["verdict"], data["witnesses"], data["elapsed_ms"])


def _finish(system: str, prop: str, params: dict, witnesses: list,
            started: float) -> ChaosReport:
    verdict = "pass" if not witnesses else "fail"
    elapsed = int((time.monotonic() - started) * 1000)
    return ChaosReport(system, prop, params, verdict, witnesses, elapsed)


@dataclass(frozen=True, eq=False)
class IntervalTarget:
    """An exact self-map of [0, 1] under test, with its branch structure."""

    name: str
    fmap: Callable[[Fraction], Fraction]
    branches: Tuple[Branch, ...]
    induced: Optional[InducedSystem] = None
    stream_step: Optional[Callable[[StreamWord], StreamWord]] = None


class GraphTarget:
    """A graph system under test."""

    def __init__(self, system: GraphSystem, name: str = "graph"):
        self.name = name
        self.system = system
        self.induced = system.induced
        self.stream_step = stream_shift

    def fmap(self, point: GraphPoint) -> GraphPoint:
        return graph_map(self.system, point)


Target = Union[IntervalTarget, GraphTarget]


def _fr(a: int, b: int = 1) -> Fraction:
    return Fraction(a, b)


def tent_target() -> IntervalTarget:
    branches = ((_fr(0), HALF, _fr(2), _fr(0)), (HALF, _fr(1), _fr(-2), _fr(2)))
    return IntervalTarget("tent", tent, branches, tent_system(), stream_c_step)


def baker_target() -> IntervalTarget:
    branches = ((_fr(0), HALF, _fr(2), _fr(0)), (HALF, _fr(1), _fr(2), _fr(-1)))
    return IntervalTarget("baker", baker, branches, baker_system(), stream_shift)


def graph_target(system: GraphSystem, name: str = "graph") -> GraphTarget:
    return GraphTarget(system, name)


def identity_target() -> IntervalTarget:
    return IntervalTarget("identity", lambda y: y,
                          ((_fr(0), _fr(1), _fr(1), _fr(0)),))


def constant_target(value: Fraction = HALF) -> IntervalTarget:
    return IntervalTarget("constant", lambda y: value,
                          ((_fr(0), _fr(1), _fr(0), value),))


def rotation_target(step: Fraction = Fraction(1, 3)) -> IntervalTarget:
    def rot(y: Fraction) -> Fraction:
        y = y + step
        return y - 1 if y >= 1 else y

    return IntervalTarget("rotation", rot,
                          ((_fr(0), 1 - step, _fr(1), step),
                           (1 - step, _fr(1), _fr(1), step - 1)))


# -- cells ----------------------------------------------------------------


def _all_cells(target: Target, p: int) -> List:
    if isinstance(target, GraphTarget):
        r = target.system.spec.r
        return [(i, j) for i in range(1, r + 1) for j in range(1 << p)]
    return list(range(1 << p))


def _value_cells(y: Fraction, p: int) -> List[int]:
    scaled = y * (1 << p)
    j = int(scaled)
    if j == (1 << p):
        return [j - 1]
    cells = [j]
    if scaled == j and j > 0:
        cells.append(j - 1)
    return cells


def _point_cells(target: Target, point, p: int) -> List:
    if isinstance(target, GraphTarget):
        spec = target.system.spec
        if isinstance(point, Interior):
            return [(point.arc, j) for j in _value_cells(point.t, p)]
        cells = []
        for i, arc in enumerate(spec.arcs, start=1):
            if arc.tail == point.id:
                cells.append((i, 0))
            if arc.head == point.id:
                cells.append((i, (1 << p) - 1))
        return cells
    return _value_cells(point, p)


def _cell_json(target: Target, cell) -> dict:
    if isinstance(target, GraphTarget):
        i, j = cell
        return {"arc": target.system.spec.arc(i).id, "cell": j}
    return {"cell": cell}


def _decode(target: Target, word: Word):
    if isinstance(target, GraphTarget):
        return target.system.decode(word)
    return word_value(word)


def _collect_periodic(max_period: int) -> List[Word]:
    seen = set()
    words = []
    for k in range(1, max_period + 1):
        for w in periodic_words(k):
            if w not in seen:
                seen.add(w)
                words.append(w)
    return words


# -- dense periodic points -------------------------------------------------


def periodic_density(target: Target, max_period: int, resolution: int) -> ChaosReport:
    """Are the verified periodic points (projected from symbolically periodic
    words, kept only when exact iteration confirms periodicity) dense at
    resolution 2^-resolution?"""
    started = time.monotonic()
    if max_period > min(24, max_bits_bound()):
        raise ValueError(f"max_period {max_period} exceeds bound")
    if resolution > 16:
        raise ValueError(f"resolution {resolution} exceeds bound 16")
    pinned = frozenset(target.induced.pinned_points) if target.induced else frozenset()
    covered = set()
    points_kept = 0
    for w in _collect_periodic(max_period):
        pt = _decode(target, w)
        if _is_f_periodic(target, w, pt, max_period, pinned):
            points_kept += 1
            covered.update(_point_cells(target, pt, resolution))
    missing = [c for c in _all_cells(target, resolution) if c not in covered]
    params = {"max_period": max_period, "resolution": resolution,
              "periodic_points": points_kept,
              "covered": len(_all_cells(target, resolution)) - len(missing),
              "cells": len(_all_cells(target, resolution))}
    witnesses = [_cell_json(target, c) for c in missing]
    return _finish(target.name, "periodic-density", params, witnesses, started)


def _is_f_periodic(target: Target, w: Word, pt, horizon: int, pinned) -> bool:
    if target.induced is not None:
        # Exceptional fibers are held fixed; elsewhere the induced map
        # follows the symbolic orbit, so iterate the word.
        if pt in pinned:
            return True
        cur = w
        for _ in range(horizon):
            cur = target.induced.symbolic_map(cur)
            cpt = _decode(target, cur)
            if cpt == pt:
                return True
            if cpt in pinned:
                return False
        return False
    cur = pt
    for _ in range(horizon):
        cur = target.fmap(cur)
        if cur == pt:
            return True
    return False


# -- dense orbit ------------------------------------------------------------


def dense_orbit_coverage(target: Target, steps: int, resolution: int) -> ChaosReport:
    """Does the projected generator orbit visit every resolution cell within
    the step budget?  Cells are marked only when the whole value enclosure
    (resolution+2 bits) sits inside them."""
    started = time.monotonic()
    if steps > 10 ** 6:
        raise ValueError(f"steps {steps} exceeds bound 10^6")
    if target.stream_step is None:
        raise ValueError(f"system {target.name!r} has no symbolic generator orbit")
    prec = resolution + 2
    total = _all_cells(target, resolution)
    covered = set()
    sw = dense_word()
    full_at = None
    if isinstance(target, GraphTarget):
        r = target.system.spec.r
        for n in range(steps):
            bits = sw.prefix(r - 1 + prec)
            ones = 0
            while ones < r - 1 and bits[ones] == 1:
                ones += 1
            arc = ones + 1 if ones < r - 1 else r
            skip = ones + 1 if ones < r - 1 else r - 1
            v = 0
            for b in bits[skip:skip + prec]:
                v = (v << 1) | b
            covered.add((arc, v >> (prec - resolution)))
            if full_at is None and len(covered) == len(total):
                full_at = n
                break
            sw = target.stream_step(sw)
    else:
        for n in range(steps):
            v = sw.window_int(prec)
            covered.add(v >> (prec - resolution))
            if full_at is None and len(covered) == len(total):
                full_at = n
                break
            sw = target.stream_step(sw)
    missing = [c for c in total if c not in covered]
    params = {"steps": steps, "resolution": resolution,
              "covered": len(total) - len(missing), "cells": len(total),
              "full_coverage_step": full_at}
    witnesses = [_cell_json(target, c) for c in missing]
    return _finish(target.name, "dense-orbit", params, witnesses, started)


# -- transitivity ------------------------------------------------------------


def transitivity_witness(target: Target, resolution: int, horizon: int) -> ChaosReport:
    """For every ordered cell pair (U, V), an exact point of U and a step
    count carrying it into V.

    Interval targets propagate the monotone-affine laps of the iterated map
    and pull an exact witness back through the covering lap; every witness
    is re-verified by direct iteration before it counts.  Graph targets use
    the dense-orbit route (a dense orbit on these spaces gives transitivity),
    and the report records that route.
    """
    started = time.monotonic()
    if resolution > 8:
        raise ValueError(f"resolution {resolution} exceeds bound 8")
    if isinstance(target, GraphTarget):
        report = dense_orbit_coverage(target, horizon, resolution)
        params = dict(report.params)
        params["route"] = "dense-orbit"
        return ChaosReport(target.name, "transitivity", params, report.verdict,
                           report.witnesses,
                           int((time.monotonic() - started) * 1000))
    size = 1 << resolution
    cells = [(Fraction(j, size), Fraction(j + 1, size)) for j in range(size)]
    unwitnessed = []
    found: Dict[Tuple[int, int], Tuple[Fraction, int]] = {}
    for uj, (ulo, uhi) in enumerate(cells):
        remaining = set(range(size))
        pieces = [(ulo, uhi, ulo, uhi)]
        for n in range(1, horizon + 1):
            pieces = _advance_pieces(target.branches, pieces)
            if not pieces:
                break
            for vj in sorted(remaining):
                vlo, vhi = cells[vj]
                hit = _find_witness(target, pieces, n, vlo, vhi, ulo, uhi)
                if hit is not None:
                    found[(uj, vj)] = hit
                    remaining.discard(vj)
            if not remaining:
                break
        unwitnessed.extend((uj, vj) for vj in sorted(remaining))
    params = {"resolution": resolution, "horizon": horizon,
              "pairs": size * size, "witnessed": size * size - len(unwitnessed)}
    witnesses = [{"from": uj, "to": vj} for uj, vj in unwitnessed]
    return _finish(target.name, "transitivity", params, witnesses, started)


_MAX_PIECES = 4096


def _advance_pieces(branches, pieces):
    # dropping surplus pieces only loses witnesses, never fabricates one
    out = []
    for d0, d1, i0, i1 in pieces[:_MAX_PIECES]:
        img_lo, img_hi = (i0, i1) if i0 <= i1 else (i1, i0)
        if img_lo == img_hi:
            continue
        for blo, bhi, s, c in branches:
            seg_lo = max(img_lo, blo)
            seg_hi = min(img_hi, bhi)
            if seg_lo >= seg_hi:
                continue
            a, b = (seg_lo, seg_hi) if i0 <= i1 else (seg_hi, seg_lo)
            slope = (d1 - d0) / (i1 - i0)
            nd0 = d0 + (a - i0) * slope
            nd1 = d0 + (b - i0) * slope
            out.append((nd0, nd1, s * a + c, s * b + c))
    return out


def _find_witness(target, pieces, n, vlo, vhi, ulo, uhi):
    for d0, d1, i0, i1 in pieces:
        img_lo, img_hi = (i0, i1) if i0 <= i1 else (i1, i0)
        lo = max(img_lo, vlo)
        hi = min(img_hi, vhi)
        if lo >= hi:
            continue
        v = (lo + hi) / 2
        x = d0 + (v - i0) * (d1 - d0) / (i1 - i0)
        if not ulo <= x <= uhi:
            continue
        y = x
        for _ in range(n):
            y = target.fmap(y)
        if vlo <= y <= vhi:
            return (x, n)
    return None


# -- sensitivity -------------------------------------------------------------


def sensitivity_probe(target: Target, eta: Fraction, delta: Fraction,
                      grid: int, horizon: int) -> ChaosReport:
    """From each grid point, does some delta-close neighbour separate beyond
    eta within the horizon?  Distances are exact (interval metric, or the
    fiber Hausdorff metric on graphs)."""
    started = time.monotonic()
    if grid > 1 << 12:
        raise ValueError(f"grid {grid} exceeds bound 2^12")
    failures = []
    tested = 0
    if isinstance(target, GraphTarget):
        r = target.system.spec.r
        for i in range(1, r + 1):
            for j in range(grid):
                x = Interior(i, Fraction(2 * j + 1, 2 * grid))
                tested += 1
                if not _separates_graph(target, x, eta, delta, horizon):
                    failures.append(target.system.point_json(x))
    else:
        for j in range(grid):
            x = Fraction(2 * j + 1, 2 * grid)
            tested += 1
            if not _separates_interval(target, x, eta, delta, horizon):
                failures.append(str(x))
    params = {"eta": str(eta), "delta": str(delta), "grid": grid,
              "horizon": horizon, "points": tested}
    return _finish(target.name, "sensitivity", params, failures, started)


def _separates_interval(target, x, eta, delta, horizon) -> bool:
    for y in (x - delta, x + delta):
        if not 0 <= y <= 1 or y == x:
            continue
        fx, fy = x, y
        for _ in range(horizon + 1):
            if abs(fx - fy) > eta:
                return True
            fx, fy = target.fmap(fx), target.fmap(fy)
    return False


def _separates_graph(target, x: Interior, eta, delta, horizon) -> bool:
    for t in (x.t - delta, x.t + delta):
        if not 0 < t < 1 or t == x.t:
            continue
        fx: GraphPoint = x
        fy: GraphPoint = Interior(x.arc, t)
        for _ in range(horizon + 1):
            if graph_metric(target.system, fx, fy) > eta:
                return True
            fx, fy = target.fmap(fx), target.fmap(fy)
    return False


# -- commuting on periodic points and the generator orbit --------------------


def lemma6_commute_check(target: Target, max_period: int, orbit_steps: int) -> ChaosReport:
    """Does projection commute with the patched induced map on all short
    periodic words and along the generator orbit?

    For systems with a designated-redirect override this also confirms the
    redirected fiber is disjoint from the periodic words (its members are
    all eventually constant, never purely periodic) and, through the
    enclosure checks, from the sampled generator orbit.
    """
    started = time.monotonic()
    if max_period > 16:
        raise ValueError(f"max_period {max_period} exceeds bound 16")
    if target.induced is None or target.stream_step is None:
        raise ValueError(f"system {target.name!r} has no induced symbolic system")
    sys = target.induced
    witnesses = []
    words = _collect_periodic(max_period)
    redirected_hits = 0
    if sys.designated is not None:
        # a periodic word inside a redirected fiber would break the commute
        pinned_words = {w for fib in sys.pinned_fibers for w in fib}
        for w in words:
            if w in pinned_words:
                redirected_hits += 1
                witnesses.append({"periodic_in_redirected_fiber": str(w)})
    for w in words:
        if not semiconjugacy_check(sys, w):
            witnesses.append({"word": str(w)})
    sw = dense_word()
    for n in range(orbit_steps):
        if not semiconjugacy_check(sys, sw):
            witnesses.append({"orbit_step": n})
        sw = target.stream_step(sw)
    params = {"max_period": max_period, "orbit_steps": orbit_steps,
              "periodic_words": len(words),
              "periodic_in_redirected_fibers": redirected_hits}
    return _finish(target.name, "lemma6", params, witnesses, started)
