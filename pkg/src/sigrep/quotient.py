"""Measure algebras: measurable sets modulo null sets.

For a point-supported finite space the largest measurable null set ``M`` is
the union of all of them, and two measurable sets are identified exactly when
they agree outside ``M``.  Each equivalence class is therefore named by its
*reduced mask* ``E & ~M``.  The reduced masks form a finite Boolean algebra;
its atoms are the minimal nonzero reduced masks, and every class is the union
of the atoms below it.  Elements are represented as atom bitmasks (bit ``j``
= atom ``j``), which makes symmetric difference, meet and order single int
operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, List, Sequence, Tuple

from .errors import DegenerateMeasure, NotHom, NotNonsingular, SpaceMismatch
from .measure import INFINITY, FiniteMeasureSpace, MeasurableMap, Weight


class BooleanAlgebra:
    """The finite Boolean algebra with ``atom_count`` atoms.

    Elements are ints in ``range(1 << atom_count)`` read as atom bitmasks.
    """

    __slots__ = ("atom_count",)

    def __init__(self, atom_count: int):
        if atom_count < 0:
            raise ValueError("atom_count must be >= 0")
        self.atom_count = atom_count

    @property
    def zero(self) -> int:
        return 0

    @property
    def unit(self) -> int:
        return (1 << self.atom_count) - 1

    @property
    def elements(self) -> range:
        return range(1 << self.atom_count)

    @property
    def atom_elements(self) -> List[int]:
        return [1 << j for j in range(self.atom_count)]

    def sym_diff(self, a: int, b: int) -> int:
        return a ^ b

    def meet(self, a: int, b: int) -> int:
        return a & b

    def join(self, a: int, b: int) -> int:
        return a | b

    def complement(self, a: int) -> int:
        return self.unit & ~a

    def leq(self, a: int, b: int) -> bool:
        return a & b == a

    def sup(self, elems) -> int:
        out = 0
        for e in elems:
            out |= e
        return out

    def inf(self, elems) -> int:
        out = self.unit
        for e in elems:
            out &= e
        return out

    def __eq__(self, other):
        return isinstance(other, BooleanAlgebra) and self.atom_count == other.atom_count

    def __hash__(self):
        return hash(("BooleanAlgebra", self.atom_count))

    def __repr__(self):
        return f"BooleanAlgebra(atoms={self.atom_count})"


class MeasureAlgebra:
    """Quotient of a space's sigma-algebra by its null ideal, with the
    induced measure.

    Do not construct directly; use :func:`quotient_measure_algebra`.
    """

    __slots__ = ("space", "algebra", "atom_point_masks",
                 "_elem_of_reduced", "_member_rep", "_class_members", "_mu")

    def __init__(self, space: FiniteMeasureSpace):
        if space.total_mass == 0:
            raise DegenerateMeasure("total measure is zero; the quotient would collapse")
        self.space = space
        null = space.null_mask

        classes: Dict[int, List[int]] = {}
        for member in space.sigma.members:
            classes.setdefault(member & ~null, []).append(member)

        reduced = [r for r in classes if r != 0]
        atom_masks = [r for r in reduced
                      if not any(s != r and s & r == s for s in reduced)]
        atom_masks.sort()
        self.atom_point_masks: Tuple[int, ...] = tuple(atom_masks)
        k = len(atom_masks)
        self.algebra = BooleanAlgebra(k)
        if len(classes) != 1 << k:
            raise AssertionError("quotient classes do not form a full Boolean algebra")

        elem_of_reduced: Dict[int, int] = {}
        for r in classes:
            e = 0
            for j, a in enumerate(atom_masks):
                if a & r == a:
                    e |= 1 << j
            union = 0
            for j in range(k):
                if e >> j & 1:
                    union |= atom_masks[j]
            if union != r:
                raise AssertionError("reduced class is not a union of atoms")
            elem_of_reduced[r] = e
        self._elem_of_reduced = elem_of_reduced

        rep: Dict[int, int] = {}
        mem: Dict[int, FrozenSet[int]] = {}
        for r, members in classes.items():
            e = elem_of_reduced[r]
            rep[e] = min(members, key=lambda m: (bin(m).count("1"), m))
            mem[e] = frozenset(members)
        self._member_rep = rep
        self._class_members = mem

        mu: Dict[int, Weight] = {}
        for e in self.algebra.elements:
            pts = 0
            for j in range(k):
                if e >> j & 1:
                    pts |= atom_masks[j]
            mu[e] = space._mass(pts)
        self._mu = mu
        for a in self.algebra.atom_elements:
            if mu[a] == 0:
                raise AssertionError("an atom of the measure algebra has measure zero")

    def project(self, member_mask: int) -> int:
        """The class of a measurable set."""
        if member_mask not in self.space.sigma:
            raise ValueError("project is defined on sigma-algebra members only")
        return self._elem_of_reduced[member_mask & ~self.space.null_mask]

    def mu_bar(self, element: int) -> Weight:
        """Measure of a class (well-defined: members differ by null sets)."""
        return self._mu[element]

    @property
    def finite_part(self) -> FrozenSet[int]:
        """Elements of finite measure."""
        return frozenset(e for e in self.algebra.elements
                         if self._mu[e] != INFINITY)

    def member_rep(self, element: int) -> int:
        """A concrete sigma-algebra member in the class ``element``
        (smallest by point count, then by mask)."""
        return self._member_rep[element]

    def class_members(self, element: int) -> FrozenSet[int]:
        """Every sigma-algebra member belonging to the class."""
        return self._class_members[element]

    def atom_mass(self, j: int) -> Weight:
        return self._mu[1 << j]

    def __eq__(self, other):
        return (isinstance(other, MeasureAlgebra)
                and self.space == other.space
                and self.atom_point_masks == other.atom_point_masks)

    def __hash__(self):
        return hash((self.space, self.atom_point_masks))

    def __repr__(self):
        return f"MeasureAlgebra(atoms={self.algebra.atom_count})"


def quotient_measure_algebra(space: FiniteMeasureSpace
                             ) -> Tuple[MeasureAlgebra, Callable[[int], int]]:
    """Build the measure algebra of ``space`` and the projection sending each
    measurable set to its class.

    Raises DegenerateMeasure when the space has total measure zero.
    """
    malg = MeasureAlgebra(space)
    return malg, malg.project


class BooleanHom:
    """A map between measure algebras, with its law flags.

    ``mapping`` is a sequence indexed by source elements.  Flags:

    * ``is_hom``   -- preserves symmetric difference, meet and the unit
      (hence complement, join and zero);
    * ``is_soc``   -- preserves suprema of monotone chains; over finite
      algebras this is equivalent to preserving pairwise joins, which is
      what gets checked;
    * ``is_measure_preserving`` -- target measure of the image equals source
      measure, for every element.
    """

    __slots__ = ("source", "target", "mapping", "_flags")

    def __init__(self, source: MeasureAlgebra, target: MeasureAlgebra,
                 mapping: Sequence[int]):
        if len(mapping) != 1 << source.algebra.atom_count:
            raise ValueError("mapping must cover every source element")
        unit_t = target.algebra.unit
        if any(m < 0 or m > unit_t for m in mapping):
            raise ValueError("mapping image out of target range")
        self.source = source
        self.target = target
        self.mapping = tuple(mapping)
        self._flags = None

    def __call__(self, element: int) -> int:
        return self.mapping[element]

    def _compute_flags(self):
        src_alg = self.source.algebra
        m = self.mapping
        hom = m[src_alg.unit] == self.target.algebra.unit
        soc = True
        if hom:
            for a in src_alg.elements:
                ma = m[a]
                for b in src_alg.elements:
                    if m[a ^ b] != ma ^ m[b] or m[a & b] != ma & m[b]:
                        hom = False
                        break
                if not hom:
                    break
        if hom:
            for a in src_alg.elements:
                for b in src_alg.elements:
                    if m[a | b] != m[a] | m[b]:
                        soc = False
                        break
                if not soc:
                    break
        else:
            soc = False
        preserving = hom and all(
            self.target.mu_bar(m[a]) == self.source.mu_bar(a)
            for a in src_alg.elements)
        self._flags = (hom, soc, preserving)

    @property
    def is_hom(self) -> bool:
        if self._flags is None:
            self._compute_flags()
        return self._flags[0]

    @property
    def is_soc(self) -> bool:
        if self._flags is None:
            self._compute_flags()
        return self._flags[1]

    @property
    def is_measure_preserving(self) -> bool:
        if self._flags is None:
            self._compute_flags()
        return self._flags[2]

    def __eq__(self, other):
        return (isinstance(other, BooleanHom)
                and self.source == other.source
                and self.target == other.target
                and self.mapping == other.mapping)

    def __hash__(self):
        return hash((self.source, self.target, self.mapping))

    def __repr__(self):
        return f"BooleanHom({self.source!r} -> {self.target!r})"


def identity_hom(malg: MeasureAlgebra) -> BooleanHom:
    return BooleanHom(malg, malg, tuple(malg.algebra.elements))


def compose_homs(theta: BooleanHom, pi: BooleanHom) -> BooleanHom:
    """The composite ``theta after pi`` (apply ``pi`` first)."""
    if pi.target != theta.source:
        raise SpaceMismatch("inner hom's target must equal outer hom's source")
    return BooleanHom(pi.source, theta.target,
                      tuple(theta.mapping[pi.mapping[a]] for a in pi.source.algebra.elements))


def induced_hom(phi: MeasurableMap) -> BooleanHom:
    """The contravariant hom of measure algebras induced by a nonsingular map.

    For ``phi : source -> target`` the result goes the other way, from the
    measure algebra of ``phi.target`` to that of ``phi.source``, sending the
    class of ``F`` to the class of the preimage of ``F``.  Nonsingularity is
    exactly what makes this well defined on classes.
    """
    if not phi.is_nonsingular:
        raise NotNonsingular("induced homs exist only for nonsingular maps")
    src_alg = MeasureAlgebra(phi.target)
    tgt_alg = MeasureAlgebra(phi.source)
    mapping = []
    for e in src_alg.algebra.elements:
        f_member = src_alg.member_rep(e)
        mapping.append(tgt_alg.project(phi.preimage_mask(f_member)))
    hom = BooleanHom(src_alg, tgt_alg, mapping)
    if not hom.is_hom:
        raise NotHom("induced mapping failed the homomorphism laws")
    return hom


@dataclass(frozen=True)
class HomLawReport:
    preserves_sym_diff: bool
    preserves_meet: bool
    preserves_unit: bool
    is_soc: bool
    is_measure_preserving: bool
    failures: Tuple[str, ...]

    @property
    def is_hom(self) -> bool:
        return (self.preserves_sym_diff and self.preserves_meet
                and self.preserves_unit)


def check_hom_laws(pi: BooleanHom) -> HomLawReport:
    """Exhaustively check the homomorphism laws of ``pi`` and report which
    hold, with a short description of each failure found."""
    src = pi.source.algebra
    m = pi.mapping
    failures = []
    sym = meet = True
    for a in src.elements:
        for b in src.elements:
            if m[a ^ b] != m[a] ^ m[b]:
                sym = False
                failures.append(f"sym_diff broken at ({a}, {b})")
            if m[a & b] != m[a] & m[b]:
                meet = False
                failures.append(f"meet broken at ({a}, {b})")
    unit_ok = m[src.unit] == pi.target.algebra.unit
    if not unit_ok:
        failures.append("unit not preserved")
    soc = sym and meet and unit_ok
    if soc:
        for a in src.elements:
            for b in src.elements:
                if m[a | b] != m[a] | m[b]:
                    soc = False
                    failures.append(f"join broken at ({a}, {b})")
    preserving = all(pi.target.mu_bar(m[a]) == pi.source.mu_bar(a)
                     for a in src.elements)
    if not preserving:
        failures.append("measure not preserved")
    return HomLawReport(sym, meet, unit_ok, soc, preserving, tuple(failures[:16]))
