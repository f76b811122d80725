"""Finite measure spaces over explicit point carriers.

Sets are extensional: a subset of the carrier is an int bitmask in which bit
``i`` stands for ``carrier.points[i]``.  A sigma-algebra is a finite family of
such masks closed under complement and pairwise union; with everything finite
the countable closure conditions collapse to these.

Weights are nonnegative rationals (:class:`fractions.Fraction`), with
``float("inf")`` as the one admitted infinite value.  The measure of a set is
the exact sum of the weights of its points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Mapping, Sequence, Tuple, Union

from .errors import MapNotTotal, NotADirectSum, SpaceMismatch

INFINITY = float("inf")

Weight = Union[Fraction, float]  # Fraction, or INFINITY

#: Largest carrier for which the extensional (bitmask-family) representation
#: is allowed.  Beyond this, power sets and closure loops stop being sane.
MAX_CARRIER = 16


def _as_weight(value) -> Weight:
    if isinstance(value, bool):
        raise TypeError("weights must be rational numbers, not bool")
    if isinstance(value, float):
        if value == INFINITY:
            return INFINITY
        raise TypeError(
            "finite float weights are not accepted; pass Fraction or int "
            "(only float('inf') is allowed as a float)"
        )
    w = Fraction(value)
    if w < 0:
        raise ValueError("weights must be nonnegative")
    return w


class FiniteCarrier:
    """An ordered finite set of integer point labels.

    Labels must be strictly increasing; bit ``i`` of any subset mask refers
    to ``points[i]``.
    """

    __slots__ = ("points", "_index")

    def __init__(self, points: Iterable[int]):
        pts = tuple(points)
        if any(not isinstance(p, int) or isinstance(p, bool) for p in pts):
            raise TypeError("carrier points must be ints")
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise ValueError("carrier points must be strictly increasing")
        if len(pts) > MAX_CARRIER:
            raise ValueError(
                f"carrier too large for the extensional representation "
                f"({len(pts)} > {MAX_CARRIER} points)"
            )
        self.points = pts
        self._index = {p: i for i, p in enumerate(pts)}

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.points)) - 1

    def index(self, label: int) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"label {label!r} is not a carrier point") from None

    def mask_of(self, labels: Iterable[int]) -> int:
        """Bitmask of a collection of point labels."""
        m = 0
        for p in labels:
            m |= 1 << self.index(p)
        return m

    def labels_of(self, mask: int) -> Tuple[int, ...]:
        """Point labels selected by ``mask``, in increasing order."""
        if mask < 0 or mask > self.full_mask:
            raise ValueError("mask out of range for this carrier")
        return tuple(p for i, p in enumerate(self.points) if mask >> i & 1)

    def __eq__(self, other):
        return isinstance(other, FiniteCarrier) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return f"FiniteCarrier({list(self.points)})"


class SigmaAlgebra:
    """A family of subset masks containing 0 and the full mask, closed under
    complement and pairwise union (hence intersection and difference)."""

    __slots__ = ("carrier", "members")

    def __init__(self, carrier: FiniteCarrier, members: Iterable[int],
                 validate: bool = True):
        self.carrier = carrier
        self.members: FrozenSet[int] = frozenset(members)
        full = carrier.full_mask
        if any(m < 0 or m > full for m in self.members):
            raise ValueError("member mask out of carrier range")
        if 0 not in self.members or full not in self.members:
            raise ValueError("a sigma-algebra must contain the empty set and the carrier")
        if validate and len(self.members) <= 1024:
            for a in self.members:
                if (full & ~a) not in self.members:
                    raise ValueError("family not closed under complement")
                for b in self.members:
                    if (a | b) not in self.members:
                        raise ValueError("family not closed under union")

    def is_member(self, mask: int) -> bool:
        return mask in self.members

    def __contains__(self, mask: int) -> bool:
        return mask in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        return (isinstance(other, SigmaAlgebra)
                and self.carrier == other.carrier
                and self.members == other.members)

    def __hash__(self):
        return hash((self.carrier, self.members))

    def __repr__(self):
        return f"SigmaAlgebra(|X|={self.carrier.size}, members={len(self.members)})"


def generate_sigma_algebra(carrier: FiniteCarrier,
                           generators: Iterable[Iterable[int]]) -> SigmaAlgebra:
    """Smallest sigma-algebra on ``carrier`` containing every generator.

    Generators are given as iterables of point labels.  The closure is the
    fixed point of adding complements and pairwise unions, seeded with the
    empty set and the full carrier.
    """
    full = carrier.full_mask
    fam = {0, full}
    for g in generators:
        fam.add(carrier.mask_of(g))
    while True:
        fresh = set(fam)
        for a in fam:
            fresh.add(full & ~a)
        for a in fam:
            for b in fam:
                fresh.add(a | b)
        if fresh == fam:
            return SigmaAlgebra(carrier, fam, validate=False)
        fam = fresh


def power_set_algebra(carrier: FiniteCarrier) -> SigmaAlgebra:
    """The discrete sigma-algebra: every subset of the carrier."""
    return SigmaAlgebra(carrier, range(carrier.full_mask + 1), validate=False)


class FiniteMeasureSpace:
    """A carrier + sigma-algebra + pointwise weight function.

    ``weights`` maps each carrier label to a nonnegative Fraction or
    ``INFINITY``; the measure of a member mask is the sum of the weights of
    its points.  The space is point-supported by construction.
    """

    __slots__ = ("sigma", "weights", "summands", "_null_mask")

    def __init__(self, sigma: SigmaAlgebra,
                 weights: Union[Mapping[int, object], Sequence[object]],
                 summands: Union[Tuple, None] = None):
        self.sigma = sigma
        pts = sigma.carrier.points
        if isinstance(weights, Mapping):
            missing = [p for p in pts if p not in weights]
            if missing:
                raise ValueError(f"missing weights for points {missing}")
            if len(weights) != len(pts):
                extra = [k for k in weights if k not in sigma.carrier._index]
                raise ValueError(f"weights given for non-points {extra}")
            wtuple = tuple(_as_weight(weights[p]) for p in pts)
        else:
            wseq = list(weights)
            if len(wseq) != len(pts):
                raise ValueError("weight sequence length must equal carrier size")
            wtuple = tuple(_as_weight(w) for w in wseq)
        self.weights = wtuple
        #: provenance for split_direct_sum: tuple of (component_space, offset)
        self.summands = summands
        self._null_mask = None

    @property
    def carrier(self) -> FiniteCarrier:
        return self.sigma.carrier

    def weight(self, label: int) -> Weight:
        return self.weights[self.carrier.index(label)]

    def measure(self, mask: int) -> Weight:
        """Measure of a member mask (exact; INFINITY if an infinite-weight
        point is selected)."""
        if mask not in self.sigma:
            raise ValueError("measure is defined on sigma-algebra members only")
        return self._mass(mask)

    def _mass(self, mask: int) -> Weight:
        total = Fraction(0)
        w = self.weights
        i = 0
        while mask:
            if mask & 1:
                wi = w[i]
                if wi is INFINITY or wi == INFINITY:
                    return INFINITY
                total += wi
            mask >>= 1
            i += 1
        return total

    @property
    def total_mass(self) -> Weight:
        return self._mass(self.carrier.full_mask)

    @property
    def null_mask(self) -> int:
        """Union of all measurable null sets (the largest one).

        Point-supported measures make this concrete: a measurable set is null
        exactly when all its points carry weight zero, so the union of all
        measurable null sets is itself measurable and null.
        """
        if self._null_mask is None:
            m = 0
            for member in self.sigma.members:
                if self._mass(member) == 0:
                    m |= member
            assert m in self.sigma and self._mass(m) == 0
            self._null_mask = m
        return self._null_mask

    def is_null(self, mask: int) -> bool:
        """True when ``mask`` (any subset, measurable or not) belongs to the
        null ideal, i.e. is contained in some measurable null set."""
        return mask & ~self.null_mask == 0

    def null_ideal(self) -> FrozenSet[int]:
        """All subsets of the carrier contained in a measurable null set."""
        nm = self.null_mask
        bits = [1 << i for i in range(self.carrier.size) if nm >> i & 1]
        out = set()
        for combo in range(1 << len(bits)):
            m = 0
            for j, b in enumerate(bits):
                if combo >> j & 1:
                    m |= b
            out.add(m)
        return frozenset(out)

    def __eq__(self, other):
        return (isinstance(other, FiniteMeasureSpace)
                and self.sigma == other.sigma
                and self.weights == other.weights)

    def __hash__(self):
        return hash((self.sigma, self.weights))

    def __repr__(self):
        return (f"FiniteMeasureSpace(points={list(self.carrier.points)}, "
                f"|sigma|={len(self.sigma)}, weights={list(self.weights)})")


def counting_space(labels: Iterable[int]) -> FiniteMeasureSpace:
    """Discrete space with unit weight at every point."""
    carrier = FiniteCarrier(labels)
    return FiniteMeasureSpace(power_set_algebra(carrier),
                              [Fraction(1)] * carrier.size)


def null_ideal(space: FiniteMeasureSpace) -> FrozenSet[int]:
    """All subsets contained in a measurable null set of ``space``."""
    return space.null_ideal()


@dataclass(frozen=True)
class MapFlags:
    is_measurable: bool
    is_nonsingular: bool
    is_imp: bool


class MeasurableMap:
    """A total point map between finite measure spaces.

    ``mapping`` sends every source label to a target label.  The three flags
    are decided by exhaustive preimage checks over the target sigma-algebra:

    * measurable      -- every preimage is source-measurable;
    * nonsingular     -- measurable, and preimages of null sets are null;
    * imp             -- measurable, and preimages carry identical measure
                         (inverse-measure-preserving).

    ``imp`` implies ``nonsingular`` implies ``measurable``.
    """

    __slots__ = ("source", "target", "mapping", "_flags")

    def __init__(self, source: FiniteMeasureSpace, target: FiniteMeasureSpace,
                 mapping: Mapping[int, int]):
        self.source = source
        self.target = target
        missing = [p for p in source.carrier.points if p not in mapping]
        if missing:
            raise MapNotTotal(f"no image for source points {missing}")
        for p in source.carrier.points:
            target.carrier.index(mapping[p])  # raises KeyError on bad image
        self.mapping = {p: mapping[p] for p in source.carrier.points}
        self._flags = None

    def __call__(self, label: int) -> int:
        return self.mapping[label]

    def preimage_mask(self, target_mask: int) -> int:
        tgt = self.target.carrier
        m = 0
        for i, p in enumerate(self.source.carrier.points):
            if target_mask >> tgt.index(self.mapping[p]) & 1:
                m |= 1 << i
        return m

    def image_mask(self) -> int:
        tgt = self.target.carrier
        m = 0
        for p in self.source.carrier.points:
            m |= 1 << tgt.index(self.mapping[p])
        return m

    @property
    def flags(self) -> MapFlags:
        if self._flags is None:
            self._flags = self._classify()
        return self._flags

    def _classify(self) -> MapFlags:
        src, tgt = self.source, self.target
        measurable = True
        nonsingular = True
        imp = True
        for f_mask in tgt.sigma.members:
            pre = self.preimage_mask(f_mask)
            if pre not in src.sigma:
                return MapFlags(False, False, False)
            nu = tgt._mass(f_mask)
            mu = src._mass(pre)
            if nu == 0 and mu != 0:
                nonsingular = False
            if mu != nu:
                imp = False
        return MapFlags(measurable, nonsingular, imp and nonsingular)

    @property
    def is_measurable(self) -> bool:
        return self.flags.is_measurable

    @property
    def is_nonsingular(self) -> bool:
        return self.flags.is_nonsingular

    @property
    def is_imp(self) -> bool:
        return self.flags.is_imp

    def __eq__(self, other):
        return (isinstance(other, MeasurableMap)
                and self.source == other.source
                and self.target == other.target
                and self.mapping == other.mapping)

    def __hash__(self):
        return hash((self.source, self.target, tuple(sorted(self.mapping.items()))))

    def __repr__(self):
        return f"MeasurableMap({self.mapping})"


def classify_map(phi: MeasurableMap) -> MapFlags:
    """Recompute the measurable / nonsingular / imp flags of ``phi``."""
    return phi._classify()


def identity_map(space: FiniteMeasureSpace) -> MeasurableMap:
    return MeasurableMap(space, space, {p: p for p in space.carrier.points})


def compose_maps(psi: MeasurableMap, phi: MeasurableMap) -> MeasurableMap:
    """The composite ``psi after phi`` (apply ``phi`` first)."""
    if phi.target != psi.source:
        raise SpaceMismatch("inner map's target must equal outer map's source")
    return MeasurableMap(phi.source, psi.target,
                         {p: psi.mapping[phi.mapping[p]] for p in phi.source.carrier.points})


def atoms(space: FiniteMeasureSpace) -> List[int]:
    """Canonical atom representatives: the smallest measurable member of each
    atom class, ordered by mask value.

    An atom is a positive-measure measurable set all of whose measurable
    subsets are either null or almost all of it.  Distinct measurable sets can
    satisfy that predicate while differing only by a null set; one
    representative per class is returned (smallest by point count, then by
    mask).  For a counting measure this is exactly the singletons.
    """
    nm = space.null_mask
    reduced_classes: Dict[int, List[int]] = {}
    for member in space.sigma.members:
        reduced_classes.setdefault(member & ~nm, []).append(member)
    minimal = []
    nonzero = [r for r in reduced_classes if r != 0]
    for r in nonzero:
        if not any(s != r and s & r == s for s in nonzero):
            minimal.append(r)
    reps = [min(reduced_classes[r], key=lambda m: (bin(m).count("1"), m))
            for r in minimal]
    return sorted(reps)


def direct_sum(spaces: Sequence[FiniteMeasureSpace]
               ) -> Tuple[FiniteMeasureSpace, List[MeasurableMap]]:
    """Disjoint union of finitely many spaces, relabelled ``0..N-1``.

    Component ``i`` occupies the consecutive label block starting at the sum
    of the earlier components' sizes.  A set is measurable exactly when every
    component slice is; the measure is the sum of the component measures.
    Returns the sum space together with the injection of each component.
    """
    if not spaces:
        raise ValueError("direct_sum needs at least one space")
    sizes = [sp.carrier.size for sp in spaces]
    total = sum(sizes)
    if total > MAX_CARRIER:
        raise ValueError("direct sum carrier too large")
    offsets = []
    off = 0
    for n in sizes:
        offsets.append(off)
        off += n
    carrier = FiniteCarrier(range(total))

    member_count = 1
    for sp in spaces:
        member_count *= len(sp.sigma)
    if member_count > 1 << MAX_CARRIER:
        raise ValueError("direct sum sigma-algebra too large")

    members = []
    for combo in product(*[sorted(sp.sigma.members) for sp in spaces]):
        m = 0
        for part, shift in zip(combo, offsets):
            m |= part << shift
        members.append(m)
    sigma = SigmaAlgebra(carrier, members, validate=False)

    weights: List[Weight] = []
    for sp in spaces:
        weights.extend(sp.weights)

    summands = tuple((sp, off) for sp, off in zip(spaces, offsets))
    sum_space = FiniteMeasureSpace(sigma, weights, summands=summands)

    injections = []
    for sp, off in summands:
        mapping = {p: off + i for i, p in enumerate(sp.carrier.points)}
        injections.append(MeasurableMap(sp, sum_space, mapping))
    return sum_space, injections


def summand_slices(space: FiniteMeasureSpace) -> Tuple[Tuple[FiniteMeasureSpace, int], ...]:
    """The (component, offset) provenance of a direct-sum space."""
    if space.summands is None:
        raise NotADirectSum("space was not built by direct_sum")
    return space.summands
