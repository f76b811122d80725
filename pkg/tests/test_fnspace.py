"""Function classes: canonical form, norms, pullback, duality, transport."""

import random
from fractions import Fraction

import pytest

from sigrep import (INFINITY, BooleanHom, DualElement, FiniteCarrier,
                    FiniteMeasureSpace, FnClass, MeasurableMap,
                    MeasureAlgebra, NonConstantOnAtom, NotHom, NotIMP,
                    NotNonsingular, SpaceMismatch, canonical_class,
                    counting_space, covariant_l2_op, covariant_op, direct_sum,
                    dual_norm2_sq, duality_bridge, duality_bridge_inverse,
                    generate_sigma_algebra, indicator, inner, join_direct_sum,
                    norm2, norm2_sq, power_set_algebra, pullback,
                    split_direct_sum)
from sigrep.fnspace import inf as fn_inf
from sigrep.fnspace import leq_ae, sup as fn_sup


def full_space(weights):
    carrier = FiniteCarrier(range(len(weights)))
    return FiniteMeasureSpace(power_set_algebra(carrier), weights)


SP102 = full_space([Fraction(1), Fraction(0), Fraction(2)])


# ---------------------------------------------------------------- canonical


def test_canonical_zeroes_null_points():
    f = canonical_class([5, 7, 9], SP102)
    assert f.values == (5, 0, 9)
    assert f.support_mask() == 0b101


def test_canonical_accepts_mapping_and_callable():
    f = canonical_class({0: 1, 1: 2, 2: 3}, SP102)
    g = canonical_class(lambda p: p + 1, SP102)
    assert f == g
    assert f.value(2) == 3


def test_non_canonical_values_rejected():
    with pytest.raises(ValueError):
        FnClass(SP102, (Fraction(1), Fraction(1), Fraction(1)))


def test_floats_rejected():
    with pytest.raises(TypeError):
        canonical_class([0.5, 0, 0], SP102)


def test_indicator_needs_member():
    c = FiniteCarrier([0, 1, 2])
    sp = FiniteMeasureSpace(generate_sigma_algebra(c, [[0]]), [Fraction(1)] * 3)
    ind = indicator(sp, 0b110)
    assert ind.values == (0, 1, 1)
    with pytest.raises(ValueError):
        indicator(sp, 0b010)


def test_tags():
    f = canonical_class([1, 2], counting_space([0, 1]), "L2")
    assert f.tag == "L2"
    assert f.retag("L0").tag == "L0"
    g = canonical_class([1, 1], counting_space([0, 1]))
    assert (f + g).tag == "L0"      # mixed tags fall back to L0
    assert (f + f).tag == "L2"
    with pytest.raises(ValueError):
        canonical_class([1], counting_space([0]), "L7")


# ---------------------------------------------------------------- norms


def test_norm_three_four_five():
    f = canonical_class([3, 4], counting_space([0, 1]), "L2")
    assert norm2_sq(f) == 25
    assert norm2(f) == 5.0


def test_norm_uses_weights():
    sp = full_space([Fraction(1, 2), Fraction(3)])
    f = canonical_class([2, 1], sp)
    assert norm2_sq(f) == Fraction(1, 2) * 4 + 3


def test_norm_infinite_weight():
    sp = full_space([INFINITY, Fraction(1)])
    assert norm2_sq(canonical_class([1, 1], sp)) == INFINITY
    assert norm2(canonical_class([1, 1], sp)) == float("inf")
    # zero value on the infinite point does not blow up
    assert norm2_sq(canonical_class([0, 3], sp)) == 9


def test_inner_product():
    sp = counting_space([0, 1, 2])
    f = canonical_class([1, 2, 3], sp)
    g = canonical_class([4, 0, -1], sp)
    assert inner(f, g) == 4 - 3
    with pytest.raises(SpaceMismatch):
        inner(f, canonical_class([1], counting_space([0])))


def test_vector_and_lattice_ops():
    sp = counting_space([0, 1])
    f = canonical_class([1, -2], sp)
    g = canonical_class([0, 5], sp)
    assert (f + g).values == (1, 3)
    assert (f - g).values == (1, -7)
    assert (Fraction(1, 2) * f).values == (Fraction(1, 2), -1)
    assert abs(f).values == (1, 2)
    assert fn_sup(f, g).values == (1, 5)
    assert fn_inf(f, g).values == (0, -2)
    assert leq_ae(fn_inf(f, g), f) and leq_ae(f, fn_sup(f, g))
    # lattice identity: f + g = f v g + f ^ g
    assert fn_sup(f, g) + fn_inf(f, g) == f + g


# ---------------------------------------------------------------- pullback


def test_pullback_swap():
    sp = counting_space([0, 1])
    swap = MeasurableMap(sp, sp, {0: 1, 1: 0})
    g = canonical_class([1, 3], sp)
    assert pullback(swap, g).values == (3, 1)


def test_pullback_composes_with_values():
    src = counting_space([0, 1, 2])
    tgt = counting_space([0, 1])
    phi = MeasurableMap(src, tgt, {0: 0, 1: 1, 2: 1})
    g = canonical_class([10, 20], tgt)
    assert pullback(phi, g).values == (10, 20, 20)


def test_pullback_l0_requires_nonsingular():
    src = counting_space([0, 1])
    tgt = full_space([Fraction(1), Fraction(0)])
    phi = MeasurableMap(src, tgt, {0: 0, 1: 1})
    g = canonical_class([1, 0], tgt)
    with pytest.raises(NotNonsingular):
        pullback(phi, g)


def test_pullback_l2_requires_imp():
    two = counting_space([0, 1])
    one = full_space([Fraction(3)])          # collapse changes mass 2 -> 3
    phi = MeasurableMap(two, one, {0: 0, 1: 0})
    assert phi.is_nonsingular and not phi.is_imp
    g2 = canonical_class([1], one, "L2")
    with pytest.raises(NotIMP):
        pullback(phi, g2)
    # the same data as an L0 class passes
    assert pullback(phi, g2.retag("L0")).values == (1, 1)


def test_pullback_isometry_random():
    rng = random.Random(31)
    for _ in range(50):
        n = rng.randint(1, 6)
        sp = counting_space(range(n))
        perm = list(range(n))
        rng.shuffle(perm)
        phi = MeasurableMap(sp, sp, dict(enumerate(perm)))
        g = canonical_class([Fraction(rng.randint(-5, 5)) for _ in range(n)],
                            sp, "L2")
        assert norm2_sq(pullback(phi, g)) == norm2_sq(g)


# ---------------------------------------------------------------- dual side


def test_dual_thresholds():
    malg = MeasureAlgebra(SP102)        # atoms: {0} then {2}
    u = DualElement(malg, [Fraction(1), Fraction(3)])
    assert u.threshold(0) == 0b11
    assert u.threshold(1) == 0b10
    assert u.threshold(3) == 0b00
    assert u.threshold_ge(3) == 0b10
    assert u.threshold_ge(Fraction(1, 2)) == 0b11
    with pytest.raises(ValueError):
        DualElement(malg, [Fraction(1)])


def test_dual_norm():
    malg = MeasureAlgebra(SP102)
    u = DualElement(malg, [Fraction(1), Fraction(3)])
    assert dual_norm2_sq(u) == 1 * 1 + 2 * 9


def test_covariant_swap():
    malg = MeasureAlgebra(counting_space([0, 1]))
    swap = BooleanHom(malg, malg, (0b00, 0b10, 0b01, 0b11))
    u = DualElement(malg, [Fraction(1), Fraction(3)])
    assert covariant_op(swap, u).atom_values == (3, 1)


def test_covariant_pick_takes_largest_cover():
    # the hom dual to picking atom 0: the target atom receives the largest
    # value d whose pushed super-level set covers it -- here 1, because the
    # pushed [[u >= 3]] misses the picked atom
    two = MeasureAlgebra(counting_space([0, 1]))
    one = MeasureAlgebra(full_space([Fraction(1)]))
    pick0 = BooleanHom(two, one, (0b0, 0b1, 0b0, 0b1))
    assert pick0.is_hom and pick0.is_soc
    u = DualElement(two, [Fraction(1), Fraction(3)])
    assert covariant_op(pick0, u).atom_values == (1,)


def test_covariant_duplicate_along_collapse():
    # the hom induced by collapsing two unit points onto one point of mass 2
    # sends the single atom to the unit; transport duplicates the value
    one = MeasureAlgebra(full_space([Fraction(2)]))
    two = MeasureAlgebra(counting_space([0, 1]))
    dup = BooleanHom(one, two, (0b00, 0b11))
    assert dup.is_hom and dup.is_soc and dup.is_measure_preserving
    u = DualElement(one, [Fraction(7)])
    assert covariant_op(dup, u).atom_values == (7, 7)


def test_covariant_handles_negative_values():
    two = MeasureAlgebra(counting_space([0, 1]))
    one = MeasureAlgebra(counting_space([0]))
    # dual of the inclusion of the first atom
    pick = BooleanHom(two, one, (0b0, 0b1, 0b0, 0b1))
    u = DualElement(two, [Fraction(-4), Fraction(-1)])
    assert covariant_op(pick, u).atom_values == (-4,)


def test_covariant_requires_hom():
    src, tgt = (MeasureAlgebra(counting_space([0, 1])),
                MeasureAlgebra(counting_space([0, 1])))
    bad = BooleanHom(src, tgt, (0b00, 0b11, 0b01, 0b11))
    u = DualElement(src, [Fraction(1), Fraction(2)])
    with pytest.raises(NotHom):
        covariant_op(bad, u)


def test_covariant_l2_requires_measure_preserving():
    two = MeasureAlgebra(counting_space([0, 1]))
    one = MeasureAlgebra(full_space([Fraction(3)]))
    pick0 = BooleanHom(two, one, (0b0, 0b1, 0b0, 0b1))
    assert pick0.is_hom and not pick0.is_measure_preserving
    u = DualElement(two, [Fraction(1), Fraction(3)])
    with pytest.raises(NotIMP):
        covariant_l2_op(pick0, u)
    assert covariant_op(pick0, u).atom_values == (1,)


def test_covariant_threshold_characterization_random():
    """[[Tu > a]] == pi([[u > a]]) for every threshold a."""
    rng = random.Random(37)
    for _ in range(40):
        n = rng.randint(1, 4)
        malg = MeasureAlgebra(counting_space(range(n)))
        perm = list(range(n))
        rng.shuffle(perm)
        table = []
        for e in malg.algebra.elements:
            img = 0
            for j in range(n):
                if e >> j & 1:
                    img |= 1 << perm[j]
            table.append(img)
        pi = BooleanHom(malg, malg, tuple(table))
        u = DualElement(malg, [Fraction(rng.randint(-4, 4)) for _ in range(n)])
        v = covariant_op(pi, u)
        for a in set(u.atom_values) | {Fraction(-9), Fraction(9)}:
            assert v.threshold(a) == pi(u.threshold(a))


# ---------------------------------------------------------------- bridge


def test_bridge_round_trip():
    f = canonical_class([5, 7, 9], SP102)
    u = duality_bridge(SP102, f)
    assert u.atom_values == (5, 9)
    assert duality_bridge_inverse(SP102, u) == f
    assert norm2_sq(f) == dual_norm2_sq(u)


def test_bridge_rejects_non_constant_atom():
    c = FiniteCarrier([0, 1, 2])
    sp = FiniteMeasureSpace(generate_sigma_algebra(c, [[0, 1]]),
                            [Fraction(1)] * 3)
    f = canonical_class([1, 2, 3], sp)
    with pytest.raises(NonConstantOnAtom):
        duality_bridge(sp, f)
    ok = canonical_class([1, 1, 3], sp)
    assert duality_bridge(sp, ok).atom_values == (1, 3)


def test_bridge_space_mismatch():
    f = canonical_class([1, 2], counting_space([0, 1]))
    with pytest.raises(SpaceMismatch):
        duality_bridge(SP102, f)


def test_bridge_naturality_square():
    """bridge(pullback(phi, f)) == covariant(induced(phi), bridge(f))."""
    from sigrep import induced_hom
    sp = counting_space([0, 1, 2])
    phi = MeasurableMap(sp, sp, {0: 1, 1: 2, 2: 0})
    f = canonical_class([4, 8, 15], sp)
    left = duality_bridge(sp, pullback(phi, f))
    right = covariant_op(induced_hom(phi), duality_bridge(sp, f))
    assert left == right


# ---------------------------------------------------------------- direct sums


def test_split_and_join():
    a = counting_space([0, 1])
    b = counting_space([0, 1])
    total, _ = direct_sum([a, b])
    f = canonical_class([3, 4, 0, 5], total, "L2")
    parts = split_direct_sum(f)
    assert [p.values for p in parts] == [(3, 4), (0, 5)]
    assert [norm2_sq(p) for p in parts] == [25, 25]
    assert norm2_sq(f) == 50
    assert join_direct_sum(parts, total) == f


def test_split_requires_sum_space():
    from sigrep import NotADirectSum
    f = canonical_class([1, 2], counting_space([0, 1]))
    with pytest.raises(NotADirectSum):
        split_direct_sum(f)
