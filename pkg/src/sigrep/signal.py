"""Segments of integer-grid signals and the structure arrows between them.

A segment is a half-open integer interval [start, end) together with one
exact sample per grid position.  An arrow from segment f to segment g says
"g is (approximately) an amplitude-scaled resampling of f" and carries:

* the lookup map ``sigma(j) = S*j + T`` giving, for each target position j,
  the source position whose sample is read (S is a nonzero integer stride,
  so prediction is total and integer-exact at every target position; the
  forward resampling map is the rational inverse i -> (i - T)/S on the used
  source subgrid);
* an amplitude factor c (a nonzero rational); and
* the residual ``delta`` = observed target minus prediction, one exact value
  per target position.

With |S| = 1 the arrow is a plain (possibly reversed) translation; |S| >= 2
reads every |S|-th source sample, so the target is shorter than the source
("integer-stride subsample").  The interval's length measure is carried with
the factor 1/|S|.

Detectors search for arrows with small residual.  They label their output as
an observed isomorphism between the given segments: a statement about these
samples, never about how the signal was generated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import (BadBreakpoints, EmptySignal, IntervalMismatch,
                     SpaceMismatch)

Number = Union[int, Fraction]


def _check_number(v) -> Number:
    if isinstance(v, bool) or not isinstance(v, (int, Fraction)):
        raise TypeError("samples must be ints or Fractions")
    return v


class Segment:
    """Samples over a half-open integer interval [start, end)."""

    __slots__ = ("start", "end", "samples")

    def __init__(self, start: int, end: int, samples: Sequence[Number]):
        if not isinstance(start, int) or not isinstance(end, int):
            raise TypeError("interval endpoints must be ints")
        samples = tuple(_check_number(v) for v in samples)
        if not samples:
            raise EmptySignal("a segment needs at least one sample")
        if end - start != len(samples):
            raise ValueError("interval length must equal the sample count")
        self.start = start
        self.end = end
        self.samples = samples

    @property
    def length(self) -> int:
        return self.end - self.start

    @property
    def interval(self) -> Tuple[int, int]:
        return (self.start, self.end)

    def sample_at(self, position: int) -> Number:
        if not self.start <= position < self.end:
            raise IndexError(f"position {position} outside [{self.start}, {self.end})")
        return self.samples[position - self.start]

    def __eq__(self, other):
        return (isinstance(other, Segment)
                and self.interval == other.interval
                and len(self.samples) == len(other.samples)
                and all(a == b for a, b in zip(self.samples, other.samples)))

    def __hash__(self):
        return hash((self.start, self.end,
                     tuple(Fraction(v) for v in self.samples)))

    def __repr__(self):
        return f"Segment([{self.start},{self.end}), {list(self.samples)})"


def segment_signal(samples: Sequence[Number], origin: int,
                   breakpoints: Sequence[int]) -> List[Segment]:
    """Cut a signal starting at ``origin`` into consecutive segments.

    ``breakpoints`` are absolute cut positions, each strictly inside the
    signal's interval, strictly increasing.  Anything else raises
    BadBreakpoints; an empty signal raises EmptySignal.
    """
    samples = tuple(samples)
    if not samples:
        raise EmptySignal("cannot segment an empty signal")
    end = origin + len(samples)
    bps = list(breakpoints)
    for b in bps:
        if not isinstance(b, int):
            raise BadBreakpoints(f"breakpoint {b!r} is not an int")
        if not origin < b < end:
            raise BadBreakpoints(f"breakpoint {b} outside ({origin}, {end})")
    if any(y <= x for x, y in zip(bps, bps[1:])):
        raise BadBreakpoints("breakpoints must be strictly increasing")
    cuts = [origin] + bps + [end]
    return [Segment(a, b, samples[a - origin:b - origin])
            for a, b in zip(cuts, cuts[1:])]


class SegmentArrow:
    """A structure arrow between two segments; see the module docstring.

    The residual convention: ``target.samples[j] == c * source(S*j+T) +
    delta[j]`` at every absolute target position j (delta indexed from
    target.start).
    """

    __slots__ = ("source", "target", "stride", "shift", "amp", "delta")

    def __init__(self, source: Segment, target: Segment, stride: int,
                 shift: int, amp, delta: Sequence[Number]):
        if not isinstance(stride, int) or stride == 0:
            raise ValueError("stride must be a nonzero int")
        if not isinstance(shift, int):
            raise ValueError("shift must be an int")
        amp = Fraction(amp)
        if amp == 0:
            raise ValueError("amplitude factor must be nonzero")
        delta = tuple(_check_number(v) for v in delta)
        if len(delta) != target.length:
            raise ValueError("need one residual value per target position")
        for j in range(target.start, target.end):
            pos = stride * j + shift
            if not source.start <= pos < source.end:
                raise IntervalMismatch(
                    f"lookup position {pos} for target {j} falls outside "
                    f"the source interval [{source.start}, {source.end})")
        self.source = source
        self.target = target
        self.stride = stride
        self.shift = shift
        self.amp = amp
        self.delta = delta

    # -- derived views -------------------------------------------------------

    def lookup(self, j: int) -> int:
        """Source position read for target position ``j``."""
        return self.stride * j + self.shift

    @property
    def kind(self) -> str:
        if self.stride == 1 and self.amp == 1:
            return "translation"
        if self.amp == 1:
            return "affine"
        return "amp_affine"

    @property
    def is_identity(self) -> bool:
        return (self.stride == 1 and self.shift == 0 and self.amp == 1
                and self.source.interval == self.target.interval
                and all(d == 0 for d in self.delta))

    @property
    def is_exact(self) -> bool:
        return all(d == 0 for d in self.delta)

    def forward_coeffs(self) -> Tuple[Fraction, Fraction]:
        """(slope, intercept) of the forward resampling map
        i -> (i - T)/S on the used source positions."""
        return (Fraction(1, self.stride), Fraction(-self.shift, self.stride))

    def forward(self, i: int) -> Fraction:
        a, b = self.forward_coeffs()
        return a * i + b

    @property
    def measure_factor(self) -> Fraction:
        """Length-measure ratio carried by the resampling: 1/|S|."""
        return Fraction(1, abs(self.stride))

    def used_source_positions(self) -> List[int]:
        return [self.lookup(j) for j in range(self.target.start, self.target.end)]

    # -- action on segments ---------------------------------------------------

    def predict(self, f: Segment) -> Segment:
        """The transferred segment c * f(sigma(.)) over the target interval."""
        if f.interval != self.source.interval:
            raise IntervalMismatch("segment does not match the arrow's source interval")
        c = self.amp
        rng = range(self.target.start, self.target.end)
        if c == 1:
            vals = [f.sample_at(self.lookup(j)) for j in rng]
        else:
            vals = [c * f.sample_at(self.lookup(j)) for j in rng]
        return Segment(self.target.start, self.target.end, vals)

    def apply(self, f: Segment) -> Segment:
        """Prediction plus residual: reconstructs the observed target."""
        pred = self.predict(f)
        return Segment(pred.start, pred.end,
                       [v + d for v, d in zip(pred.samples, self.delta)])

    def __eq__(self, other):
        return (isinstance(other, SegmentArrow)
                and self.source == other.source
                and self.target == other.target
                and self.stride == other.stride
                and self.shift == other.shift
                and self.amp == other.amp
                and all(a == b for a, b in zip(self.delta, other.delta)))

    def __hash__(self):
        return hash((self.source, self.target, self.stride, self.shift,
                     self.amp, tuple(Fraction(d) for d in self.delta)))

    def __repr__(self):
        return (f"SegmentArrow({self.kind}, lookup j->{self.stride}*j"
                f"{self.shift:+d}, amp={self.amp}, "
                f"|delta|^2={sum(d * d for d in self.delta)})")


def transfer(arrow: SegmentArrow, f: Segment) -> Segment:
    """Push a source segment through an arrow (prediction only)."""
    return arrow.predict(f)


def delta(observed: Segment, predicted: Segment) -> Tuple[Number, ...]:
    """Residual vector observed - predicted (intervals must agree)."""
    if observed.interval != predicted.interval:
        raise IntervalMismatch("residual needs segments on the same interval")
    return tuple(a - b for a, b in zip(observed.samples, predicted.samples))


def identity_arrow(seg: Segment) -> SegmentArrow:
    return SegmentArrow(seg, seg, 1, 0, 1, (0,) * seg.length)


def compose_arrows(b: SegmentArrow, a: SegmentArrow) -> SegmentArrow:
    """The composite ``b after a``.

    Lookups compose contravariantly (the composite reads source positions
    through both strides), amplitudes multiply, and the composite residual is
    exact: delta(k) = c_b * delta_a(sigma_b(k)) + delta_b(k).
    """
    if a.target != b.source:
        raise IntervalMismatch("arrows are not composable: target/source differ")
    stride = a.stride * b.stride
    shift = a.stride * b.shift + a.shift
    amp = a.amp * b.amp
    out = []
    for k in range(b.target.start, b.target.end):
        j = b.lookup(k)
        da = a.delta[j - a.target.start]
        db = b.delta[k - b.target.start]
        out.append(b.amp * da + db)
    return SegmentArrow(a.source, b.target, stride, shift, amp, out)


def _residual_sq(vals) -> Fraction:
    total = Fraction(0)
    for v in vals:
        total += Fraction(v) * v
    return total


def _tol_sq(tol) -> Optional[Fraction]:
    """None means 'infinite tolerance'."""
    if tol == float("inf"):
        return None
    tol = Fraction(tol)
    if tol < 0:
        raise ValueError("tolerance must be >= 0")
    return tol * tol


def detect_translation(f: Segment, g: Segment, tol=0) -> Optional[SegmentArrow]:
    """Look for g == f shifted (amplitude 1, stride 1), residual within tol.

    Equal lengths force the shift, so the only candidate is checked; returns
    the arrow (with its residual recorded) or None.  The result describes an
    observed isomorphism of these two segments only.
    """
    if f.length != g.length:
        return None
    shift = f.start - g.start
    dvals = [gv - fv for gv, fv in zip(g.samples, f.samples)]
    limit = _tol_sq(tol)
    if limit is not None and _residual_sq(dvals) > limit:
        return None
    return SegmentArrow(f, g, 1, shift, 1, dvals)


def _stride_candidates(f: Segment, g: Segment, strides) -> List[Tuple[int, int]]:
    """All (S, T) lookup maps sending g's interval into f's interval."""
    out = []
    m = g.length
    seen = set()
    for s in strides:
        if not isinstance(s, int) or s == 0:
            raise ValueError("strides must be nonzero ints")
        if s in seen:
            continue
        seen.add(s)
        if abs(s) * (m - 1) + 1 > f.length:
            continue
        if s > 0:
            lo = f.start - s * g.start
            hi = (f.end - 1) - s * (g.end - 1)
        else:
            lo = f.start - s * (g.end - 1)
            hi = (f.end - 1) - s * g.start
        for t in range(lo, hi + 1):
            out.append((s, t))
    return out


def _pick_best(candidates):
    """candidates: list of (res_sq, abs_s, abs_t, t, index, arrow_args).
    The tie-break is lexicographic on exactly that tuple prefix."""
    best = None
    for cand in candidates:
        if best is None or cand[:5] < best[:5]:
            best = cand
    return best


def detect_affine(f: Segment, g: Segment, strides=(-2, -1, 1, 2),
                  tol=0) -> Optional[SegmentArrow]:
    """Search integer-stride resamplings of f matching g with amplitude 1.

    Every lookup map sigma(j) = S*j + T with S in ``strides`` that keeps all
    target positions inside f is scored by exact squared residual norm.  Ties
    break toward smaller |S|, then smaller |T|, then smaller T.  With stride
    1 and equal lengths this reduces to detect_translation.
    """
    limit = _tol_sq(tol)
    scored = []
    for idx, (s, t) in enumerate(_stride_candidates(f, g, strides)):
        dvals = [gv - f.sample_at(s * j + t)
                 for j, gv in zip(range(g.start, g.end), g.samples)]
        rsq = _residual_sq(dvals)
        scored.append((rsq, abs(s), abs(t), t, idx, (s, t, 1, dvals)))
    best = _pick_best(scored)
    if best is None:
        return None
    rsq = best[0]
    if limit is not None and rsq > limit:
        return None
    s, t, amp, dvals = best[5]
    return SegmentArrow(f, g, s, t, amp, dvals)


def detect_amp_affine(f: Segment, g: Segment, strides=(-2, -1, 1, 2),
                      tol=0) -> Optional[SegmentArrow]:
    """Like detect_affine but also fits a nonzero rational amplitude.

    For each candidate lookup the amplitude is the exact least-squares ratio
    <u, g>/<u, u> where u is the looked-up source vector; candidates with
    u identically zero, or a zero fitted amplitude, are discarded (an
    amplitude map must be invertible).  When g is an exact multiple of a
    resampling of f the fitted ratio is that exact multiple.  Tie-break as
    in detect_affine.
    """
    limit = _tol_sq(tol)
    scored = []
    for idx, (s, t) in enumerate(_stride_candidates(f, g, strides)):
        u = [f.sample_at(s * j + t) for j in range(g.start, g.end)]
        uu = sum(Fraction(x) * x for x in u)
        if uu == 0:
            continue
        ug = sum(Fraction(x) * y for x, y in zip(u, g.samples))
        c = ug / uu
        if c == 0:
            continue
        dvals = [gv - c * x for gv, x in zip(g.samples, u)]
        rsq = _residual_sq(dvals)
        scored.append((rsq, abs(s), abs(t), t, idx, (s, t, c, dvals)))
    best = _pick_best(scored)
    if best is None:
        return None
    if limit is not None and best[0] > limit:
        return None
    s, t, c, dvals = best[5]
    return SegmentArrow(f, g, s, t, c, dvals)


# ---------------------------------------------------------------- graphs

class FunctorGraph:
    """Named segments plus named arrows between them."""

    def __init__(self):
        self.objects: Dict[str, Segment] = {}
        self.arrows: Dict[str, Tuple[str, str, SegmentArrow]] = {}

    def add_object(self, name: str, seg: Segment):
        if name in self.objects:
            raise ValueError(f"duplicate object name {name!r}")
        self.objects[name] = seg

    def add_arrow(self, name: str, source_name: str, target_name: str,
                  arrow: SegmentArrow):
        if name in self.arrows:
            raise ValueError(f"duplicate arrow name {name!r}")
        src = self.objects[source_name]
        tgt = self.objects[target_name]
        if arrow.source != src or arrow.target != tgt:
            raise IntervalMismatch("arrow endpoints do not match the named objects")
        self.arrows[name] = (source_name, target_name, arrow)


@dataclass(frozen=True)
class FunctorLawReport:
    identities_ok: bool
    associativity_ok: bool
    groupoid_ok: bool
    composable_pairs: int
    checked_triples: int
    warnings: Tuple[str, ...]

    @property
    def category_ok(self) -> bool:
        return self.identities_ok and self.associativity_ok


def verify_functor_laws(graph: FunctorGraph) -> FunctorLawReport:
    """Check category laws on a graph of segments and arrows.

    * identities: every object carries an identity self-arrow, and composing
      any arrow with the endpoint identities returns the arrow;
    * associativity: all composable triples associate;
    * groupoid: every arrow has a two-sided inverse present in the graph;
    * warnings: duplicate parallel arrows (same endpoints, same data) under
      different names.
    """
    idents: Dict[str, SegmentArrow] = {}
    for name, seg in graph.objects.items():
        idents[name] = identity_arrow(seg)
    identities_ok = True
    for name, seg in graph.objects.items():
        if not any(sn == tn == name and arr.is_identity
                   for sn, tn, arr in graph.arrows.values()):
            identities_ok = False
    arrows = list(graph.arrows.items())
    for _, (sn, tn, arr) in arrows:
        if (compose_arrows(arr, idents[sn]) != arr
                or compose_arrows(idents[tn], arr) != arr):
            identities_ok = False

    pairs = 0
    triples = 0
    associativity_ok = True
    for _, (sa, ta, a) in arrows:
        for _, (sb, tb, b) in arrows:
            if ta != sb:
                continue
            pairs += 1
            ba = compose_arrows(b, a)
            for _, (sc, tc, c) in arrows:
                if tb != sc:
                    continue
                triples += 1
                if compose_arrows(c, ba) != compose_arrows(compose_arrows(c, b), a):
                    associativity_ok = False

    groupoid_ok = True
    for _, (sa, ta, a) in arrows:
        if a.is_identity:
            continue
        found = False
        for _, (sb, tb, b) in arrows:
            if sb != ta or tb != sa:
                continue
            if (compose_arrows(b, a) == idents[sa]
                    and compose_arrows(a, b) == idents[ta]):
                found = True
                break
        if not found:
            groupoid_ok = False

    warnings = []
    seen: Dict[Tuple[str, str], List[Tuple[str, SegmentArrow]]] = {}
    for name, (sn, tn, arr) in arrows:
        for other_name, other in seen.get((sn, tn), []):
            if other == arr:
                warnings.append(
                    f"arrows {other_name!r} and {name!r} duplicate the same "
                    f"data between {sn!r} and {tn!r}")
        seen.setdefault((sn, tn), []).append((name, arr))

    return FunctorLawReport(identities_ok, associativity_ok, groupoid_ok,
                            pairs, triples, tuple(warnings))


# ---------------------------------------------------------------- reports

@dataclass(frozen=True)
class RedundancyEntry:
    target_index: int
    source_index: Optional[int]
    detector: Optional[str]
    residual_sq: Optional[Fraction]
    arrow: Optional[SegmentArrow]

    @property
    def redundant(self) -> bool:
        return self.arrow is not None


@dataclass(frozen=True)
class RedundancyReport:
    entries: Tuple[RedundancyEntry, ...]
    tol: object
    redundant_count: int

    @property
    def segment_count(self) -> int:
        return len(self.entries) + 1


_DETECTOR_ORDER = ("translation", "affine", "amp_affine")


def redundancy_report(segments: Sequence[Segment], tol=0,
                      strides=(-2, -1, 1, 2),
                      detectors=_DETECTOR_ORDER) -> RedundancyReport:
    """For each segment after the first, the best observed isomorphism from
    any earlier segment, if one lands within tolerance.

    Candidates are ranked by exact squared residual, then detector priority
    (translation, affine, amplitude-affine), then the detector's own
    tie-break.  Entries with no in-tolerance candidate are reported as not
    redundant.
    """
    for d in detectors:
        if d not in _DETECTOR_ORDER:
            raise ValueError(f"unknown detector {d!r}")
    entries = []
    for tgt_i in range(1, len(segments)):
        g = segments[tgt_i]
        best = None  # (res_sq, det_rank, src_index, arrow)
        for src_i in range(tgt_i):
            f = segments[src_i]
            for rank, det in enumerate(_DETECTOR_ORDER):
                if det not in detectors:
                    continue
                if det == "translation":
                    arr = detect_translation(f, g, tol)
                elif det == "affine":
                    arr = detect_affine(f, g, strides, tol)
                else:
                    arr = detect_amp_affine(f, g, strides, tol)
                if arr is None:
                    continue
                key = (_residual_sq(arr.delta), rank, src_i)
                if best is None or key < best[:3]:
                    best = key + (arr,)
        if best is None:
            entries.append(RedundancyEntry(tgt_i, None, None, None, None))
        else:
            rsq, rank, src_i, arr = best
            entries.append(RedundancyEntry(tgt_i, src_i,
                                           _DETECTOR_ORDER[rank], rsq, arr))
    count = sum(1 for e in entries if e.redundant)
    return RedundancyReport(tuple(entries), tol, count)


# ---------------------------------------------------------------- prototype

def prototype_decomposition(samples: Sequence[Number], origin: int = 1):
    """Decompose a signal over unit segments by consecutive translations.

    Each position becomes a one-point segment; consecutive segments are
    related by the forced unit translation, the first-level residuals form
    delta segments, and consecutive delta segments are related the same way,
    giving second-level residuals.  Returns a dict with the seed sample, the
    arrows, both residual levels, and the reconstruction.
    """
    samples = tuple(_check_number(v) for v in samples)
    if not samples:
        raise EmptySignal("nothing to decompose")
    segs = [Segment(origin + k, origin + k + 1, (v,))
            for k, v in enumerate(samples)]
    arrows = []
    first_deltas = []
    for k in range(1, len(segs)):
        arr = detect_translation(segs[k - 1], segs[k], tol=float("inf"))
        arrows.append(arr)
        first_deltas.append(arr.delta[0])

    delta_segs = [Segment(origin + k + 1, origin + k + 2, (d,))
                  for k, d in enumerate(first_deltas)]
    second_deltas = []
    for k in range(1, len(delta_segs)):
        arr = detect_translation(delta_segs[k - 1], delta_segs[k],
                                 tol=float("inf"))
        second_deltas.append(arr.delta[0])

    rebuilt = [samples[0]]
    for arr in arrows:
        prev = Segment(arr.source.start, arr.source.end, (rebuilt[-1],))
        rebuilt.append(arr.apply(prev).samples[0])

    return {
        "origin": origin,
        "seed": samples[0],
        "arrows": arrows,
        "first_deltas": tuple(first_deltas),
        "second_deltas": tuple(second_deltas),
        "reconstruction": tuple(rebuilt),
        "exact": tuple(rebuilt) == samples,
    }
