"""Lossless differential encoding of 1-D signals and 2-D images.

Every sample after the seed is predicted from an already-decoded sample
through a stored arrow record (lookup position S*j + T, amplitude c) and the
exact residual delta is kept, so decoding reproduces the input bit for bit.

Policies:

* ``predecessor`` (default): the arrow is fixed by position -- each sample
  reads its immediate predecessor (images read the left neighbour, first
  column reads the pixel above, the corner pixel is the seed).  This is the
  classic DPCM/PNG-style filter; only integer work is done.
* ``detected`` (1-D only): each unit segment gets the best arrow found by
  the translation / affine / amplitude detectors over all earlier segments,
  restricted to integer residuals so the container stays 64-bit.  The
  predecessor arrow is always among the candidates, so the chosen residual
  norm never exceeds the predecessor policy's, segment by segment.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import log2
from typing import List, Sequence, Tuple, Union

from .container import (KIND_AFFINE, KIND_AMP_AFFINE, KIND_TRANSLATION,
                        ArrowRecord, EncodedSignal, write_container)
from .errors import CorruptContainer, EmptySignal, PolicyMismatch
from .signal import Segment, detect_affine, detect_amp_affine, detect_translation

POLICIES = ("predecessor", "detected")

Number = Union[int, Fraction]

_INF = float("inf")
_KIND_OF = {"translation": KIND_TRANSLATION, "affine": KIND_AFFINE,
            "amp_affine": KIND_AMP_AFFINE}


def _check_sample(v) -> Number:
    if isinstance(v, bool) or not isinstance(v, (int, Fraction)):
        raise TypeError(f"samples must be ints or Fractions, got {v!r}")
    return v


def _is_image(signal) -> bool:
    try:
        first = signal[0]
    except (TypeError, KeyError, IndexError):
        return False
    return isinstance(first, (list, tuple))


def encode(signal, policy: str = "predecessor", origin: int = 0) -> EncodedSignal:
    """Encode a 1-D sequence or a 2-D row list; see the module docstring."""
    if policy not in POLICIES:
        raise ValueError(f"policy must be one of {POLICIES}")
    if _is_image(signal):
        return _encode_image(signal, policy)
    samples = [_check_sample(v) for v in signal]
    if not samples:
        raise EmptySignal("cannot encode an empty signal")
    if policy == "predecessor":
        records = []
        prev = samples[0]
        append = records.append
        for v in samples[1:]:
            append(ArrowRecord(KIND_TRANSLATION, -1, 1, 1, 1, (v - prev,)))
            prev = v
        return EncodedSignal(1, (len(samples),), origin, "predecessor",
                             (samples[0],), tuple(records))
    return _encode_detected(samples, origin)


def _encode_image(rows, policy: str) -> EncodedSignal:
    if policy == "detected":
        raise PolicyMismatch("the detected policy applies to 1-D signals only; "
                             "images use per-axis predecessor arrows")
    grid = [list(r) for r in rows]
    if not grid or not grid[0]:
        raise EmptySignal("cannot encode an empty image")
    width = len(grid[0])
    if any(len(r) != width for r in grid):
        raise ValueError("ragged image rows")
    for r in grid:
        for v in r:
            _check_sample(v)
    records: List[ArrowRecord] = []
    append = records.append
    up_shift = -width
    for r, row in enumerate(grid):
        if r == 0:
            prev = row[0]
            for v in row[1:]:
                append(ArrowRecord(KIND_TRANSLATION, -1, 1, 1, 1, (v - prev,)))
                prev = v
        else:
            above = grid[r - 1][0]
            append(ArrowRecord(KIND_TRANSLATION, up_shift, 1, 1, 1,
                               (row[0] - above,)))
            prev = row[0]
            for v in row[1:]:
                append(ArrowRecord(KIND_TRANSLATION, -1, 1, 1, 1, (v - prev,)))
                prev = v
    return EncodedSignal(2, (len(grid), width), 0, "predecessor",
                         (grid[0][0],), tuple(records))


def _fits_i64(v: int) -> bool:
    return -(1 << 63) <= v < 1 << 63


def _integral(v) -> bool:
    if isinstance(v, int):
        return True
    return isinstance(v, Fraction) and v.denominator == 1


def _encode_detected(samples: List[Number], origin: int) -> EncodedSignal:
    """Best-arrow search over all earlier unit segments.

    Unit targets make every stride equivalent to stride 1 (the lookup hits a
    single source position either way), so only stride 1 is searched; the
    detectors' own tie-break would discard larger strides anyway.
    """
    n = len(samples)
    segs = [Segment(origin + k, origin + k + 1, (samples[k],))
            for k in range(n)]
    records: List[ArrowRecord] = []
    for k in range(1, n):
        g = segs[k]
        best = None  # (residual_sq, detector_rank, source_index, arrow)
        for i in range(k):
            f = segs[i]
            for rank, det in enumerate(("translation", "affine", "amp_affine")):
                if det == "translation":
                    arr = detect_translation(f, g, _INF)
                elif det == "affine":
                    arr = detect_affine(f, g, (1,), _INF)
                else:
                    arr = detect_amp_affine(f, g, (1,), _INF)
                if arr is None:
                    continue
                if not all(_integral(d) for d in arr.delta):
                    continue
                if not (_fits_i64(arr.amp.numerator)
                        and _fits_i64(arr.amp.denominator)
                        and _fits_i64(arr.shift)):
                    continue
                rsq = sum(Fraction(d) * d for d in arr.delta)
                key = (rsq, rank, i)
                if best is None or key < best[:3]:
                    best = key + (arr,)
        arr = best[3]  # the predecessor translation always qualifies
        records.append(ArrowRecord(_KIND_OF[arr.kind], arr.shift, arr.stride,
                                   arr.amp.numerator, arr.amp.denominator,
                                   tuple(int(d) for d in arr.delta)))
    return EncodedSignal(1, (n,), origin, "detected",
                         (samples[0],), tuple(records))


def _check_predecessor_record(rec: ArrowRecord, flat: int, width: int) -> bool:
    if (rec.kind != KIND_TRANSLATION or rec.stride != 1
            or rec.amp_num != rec.amp_den or len(rec.delta) != 1):
        return False
    if width == 0:  # 1-D
        return rec.shift == -1
    return rec.shift == (-1 if flat % width else -width)


def decode(enc: EncodedSignal):
    """Exact inverse of encode: a list (1-D) or list of rows (2-D).

    Raises CorruptContainer for structurally impossible records (count
    mismatch, reference to a not-yet-decoded position) and PolicyMismatch
    when a predecessor-policy container holds anything but the fixed
    predecessor arrows.
    """
    if enc.dimension == 1:
        (n,) = enc.shape
        width = 0
    else:
        rows, cols = enc.shape
        n = rows * cols
        width = cols
    total_decl = len(enc.seed) + sum(len(r.delta) for r in enc.records)
    if total_decl != n:
        raise CorruptContainer(f"container declares {n} samples but "
                               f"records cover {total_decl}")
    check_pred = enc.policy == "predecessor"
    origin = enc.origin
    vals: List[Number] = list(enc.seed)
    fill = len(vals)
    for rec in enc.records:
        if check_pred and not _check_predecessor_record(rec, fill, width):
            raise PolicyMismatch("predecessor-policy container holds a "
                                 "non-predecessor record")
        num, den = rec.amp_num, rec.amp_den
        if num == den:
            s, t = rec.stride, rec.shift
            if s == 1 and t == -1:
                for d in rec.delta:  # hot path: plain DPCM
                    vals.append(vals[fill - 1] + d)
                    fill += 1
                continue
            for d in rec.delta:
                src = s * (origin + fill) + t - origin
                if not 0 <= src < fill:
                    raise CorruptContainer(
                        f"record references undecoded position {src + origin}")
                vals.append(vals[src] + d)
                fill += 1
        else:
            c = Fraction(num, den)
            s, t = rec.stride, rec.shift
            for d in rec.delta:
                src = s * (origin + fill) + t - origin
                if not 0 <= src < fill:
                    raise CorruptContainer(
                        f"record references undecoded position {src + origin}")
                v = c * vals[src] + d
                if v.denominator == 1:
                    v = int(v)
                vals.append(v)
                fill += 1
    if enc.dimension == 1:
        return vals
    return [vals[r * width:(r + 1) * width] for r in range(enc.shape[0])]


@dataclass(frozen=True)
class Metrics:
    """Sparsity/entropy summary of an encoding relative to its raw input."""
    nonzero_delta_fraction: Fraction
    raw_entropy: float     # zeroth-order, bits per sample
    delta_entropy: float   # zeroth-order, bits per delta
    encoded_size: int      # container bytes


def zeroth_order_entropy(stream) -> float:
    """Histogram entropy in bits per symbol; 0.0 for an empty stream."""
    counts = Counter(stream)
    n = sum(counts.values())
    if n == 0:
        return 0.0
    total = 0.0
    for c in counts.values():
        p = c / n
        total -= p * log2(p)
    return total


def _flatten(raw) -> List[Number]:
    if _is_image(raw):
        return [v for row in raw for v in row]
    return list(raw)


def metrics(raw, enc: EncodedSignal) -> Metrics:
    """Compare the raw sample stream with the encoded delta stream."""
    flat = _flatten(raw)
    if len(flat) != enc.total_samples:
        raise ValueError("raw input and encoding disagree on sample count")
    deltas = [d for rec in enc.records for d in rec.delta]
    nz = sum(1 for d in deltas if d != 0)
    frac = Fraction(nz, len(deltas)) if deltas else Fraction(0)
    return Metrics(frac,
                   zeroth_order_entropy(flat),
                   zeroth_order_entropy(deltas),
                   len(write_container(enc)))
