"""Differential codec and the FSG1 container: round trips and strictness."""

import random
from fractions import Fraction
from math import log2

import pytest

from sigrep import (ArrowRecord, CorruptContainer, EmptySignal, EncodedSignal,
                    PolicyMismatch, decode, encode, metrics, read_container,
                    read_container_file, write_container, write_container_file,
                    zeroth_order_entropy)
from sigrep.container import KIND_AMP_AFFINE, KIND_TRANSLATION


def dpcm(shift, d):
    return ArrowRecord(KIND_TRANSLATION, shift, 1, 1, 1, (d,))


# ------------------------------------------------------------- encode, 1-D


def test_encode_ramp():
    enc = encode([1, 2, 3, 4, 5])
    assert enc.dimension == 1
    assert enc.shape == (5,)
    assert enc.policy == "predecessor"
    assert enc.seed == (1,)
    assert enc.records == (dpcm(-1, 1),) * 4


def test_encode_keeps_origin():
    enc = encode([4, 4], origin=-3)
    assert enc.origin == -3
    assert decode(enc) == [4, 4]


def test_encode_rejects_empty_and_junk():
    with pytest.raises(EmptySignal):
        encode([])
    with pytest.raises(EmptySignal):
        encode([[]])
    with pytest.raises(TypeError):
        encode([1, 0.5])
    with pytest.raises(TypeError):
        encode([True, False])
    with pytest.raises(ValueError):
        encode([1, 2], policy="best")


def test_decode_hand_built_records():
    enc = EncodedSignal(1, (3,), 0, "predecessor", (0,),
                        (dpcm(-1, 1), dpcm(-1, -1)))
    assert decode(enc) == [0, 1, 0]


def test_roundtrip_random_1d():
    rng = random.Random(7)
    for _ in range(60):
        sig = [rng.randint(-500, 500) for _ in range(rng.randint(1, 40))]
        enc = encode(sig, origin=rng.randint(-5, 5))
        assert decode(enc) == sig


def test_roundtrip_fraction_samples():
    # Rational samples survive encode/decode; only the container insists on ints.
    sig = [Fraction(1, 2), Fraction(3, 2), Fraction(3, 2)]
    enc = encode(sig)
    assert decode(enc) == sig
    with pytest.raises(ValueError):
        write_container(enc)


# ------------------------------------------------------------ encode, 2-D


def test_encode_constant_image_is_all_zero():
    enc = encode([[7, 7, 7]] * 3)
    assert enc.dimension == 2
    assert enc.shape == (3, 3)
    assert enc.seed == (7,)
    assert all(rec.delta == (0,) for rec in enc.records)
    assert decode(enc) == [[7, 7, 7]] * 3


def test_encode_two_region_image_boundary_only():
    """A vertical edge puts one nonzero delta per row, nothing else."""
    rows = [[10, 10, 20, 20] for _ in range(4)]
    enc = encode(rows)
    nonzero = [rec.delta[0] for rec in enc.records if rec.delta != (0,)]
    assert nonzero == [10, 10, 10, 10]
    assert len(enc.records) == 15  # 3 in row 0, then 4 per later row
    assert decode(enc) == rows


def test_encode_image_first_column_reads_up():
    enc = encode([[1, 2], [5, 6]])
    # row 0: left arrow; row 1: up arrow for column 0, then left again
    assert [r.shift for r in enc.records] == [-1, -2, -1]
    assert [r.delta for r in enc.records] == [(1,), (4,), (1,)]


def test_encode_ragged_image():
    with pytest.raises(ValueError):
        encode([[1, 2], [3]])


def test_roundtrip_random_images():
    rng = random.Random(11)
    for _ in range(40):
        h = rng.randint(1, 9)
        w = rng.randint(1, 9)
        rows = [[rng.randint(0, 255) for _ in range(w)] for _ in range(h)]
        assert decode(encode(rows)) == rows


# -------------------------------------------------------- detected policy


def test_detected_image_refused():
    with pytest.raises(PolicyMismatch):
        encode([[1, 2], [3, 4]], policy="detected")


def test_detected_roundtrip_and_dominance():
    """Detected arrows never do worse than the fixed predecessor arrow."""
    rng = random.Random(23)
    for _ in range(25):
        sig = [rng.randint(-9, 9) for _ in range(rng.randint(2, 12))]
        enc = encode(sig, policy="detected")
        assert decode(enc) == sig
        for k, rec in enumerate(enc.records, start=1):
            pred = sig[k] - sig[k - 1]
            assert sum(d * d for d in rec.delta) <= pred * pred


def test_detected_exploits_amplitude():
    # every later sample is a rational multiple of the seed: zero residuals
    enc = encode([2, 3, 5, 7], policy="detected")
    assert all(rec.delta == (0,) for rec in enc.records)
    assert enc.records[0].kind == KIND_AMP_AFFINE
    assert enc.records[0].amp == Fraction(3, 2)
    assert decode(enc) == [2, 3, 5, 7]


def test_decode_policy_mismatch():
    enc = EncodedSignal(1, (2,), 0, "predecessor", (0,),
                        (dpcm(-2, 1),))  # wrong shift for 1-D predecessor
    with pytest.raises(PolicyMismatch):
        decode(enc)


def test_decode_count_mismatch():
    enc = EncodedSignal(1, (3,), 0, "predecessor", (0,), (dpcm(-1, 1),))
    with pytest.raises(CorruptContainer):
        decode(enc)


def test_decode_forward_reference():
    bad = EncodedSignal(1, (2,), 0, "detected", (5,),
                        (ArrowRecord(KIND_TRANSLATION, 1, 1, 1, 1, (0,)),))
    with pytest.raises(CorruptContainer):
        decode(bad)
    bad2 = EncodedSignal(1, (2,), 0, "detected", (5,),
                         (ArrowRecord(KIND_TRANSLATION, 0, 2, 1, 1, (0,)),))
    with pytest.raises(CorruptContainer):
        decode(bad2)


def test_decode_rational_amplitude():
    enc = EncodedSignal(1, (2,), 0, "detected", (4,),
                        (ArrowRecord(KIND_AMP_AFFINE, -1, 1, 3, 2, (1,)),))
    assert decode(enc) == [4, 7]


# --------------------------------------------------------------- container


def test_container_roundtrip_and_rewrite():
    enc = encode([3, 1, 4, 1, 5, 9, 2, 6], origin=2)
    blob = write_container(enc)
    back = read_container(blob)
    assert back == enc
    assert write_container(back) == blob  # byte-identical rewrite


def test_container_roundtrip_detected_and_images():
    rng = random.Random(31)
    for _ in range(20):
        sig = [rng.randint(0, 50) for _ in range(rng.randint(1, 10))]
        enc = encode(sig, policy="detected")
        assert read_container(write_container(enc)) == enc
    img = encode([[rng.randint(0, 255) for _ in range(5)] for _ in range(4)])
    assert read_container(write_container(img)) == img


def test_container_files(tmp_path):
    enc = encode([9, 8, 7])
    path = tmp_path / "sig.fsg"
    write_container_file(path, enc)
    assert read_container_file(path) == enc


def test_container_multi_delta_record():
    enc = EncodedSignal(1, (3,), 0, "detected", (0,),
                        (ArrowRecord(KIND_TRANSLATION, -1, 1, 1, 1, (1, 2)),))
    assert read_container(write_container(enc)) == enc
    assert decode(enc) == [0, 1, 3]


def test_container_normalises_fraction_delta():
    a = EncodedSignal(1, (2,), 0, "detected", (0,),
                      (ArrowRecord(KIND_TRANSLATION, -1, 1, 1, 1, (Fraction(2),)),))
    b = a._replace(records=(a.records[0]._replace(delta=(2,)),))
    assert write_container(a) == write_container(b)


def test_container_write_rejections():
    ok = encode([1, 2])
    with pytest.raises(ValueError):
        write_container(ok._replace(dimension=3, shape=(1, 1, 2)))
    with pytest.raises(ValueError):
        write_container(ok._replace(shape=(2, 2)))
    with pytest.raises(ValueError):
        write_container(ok._replace(policy="guess"))
    with pytest.raises(ValueError):
        write_container(ok._replace(origin=1 << 63))
    frac = ok.records[0]._replace(delta=(Fraction(1, 2),))
    with pytest.raises(ValueError):
        write_container(ok._replace(records=(frac,)))
    with pytest.raises(ValueError):
        write_container(ok._replace(records=(ok.records[0]._replace(kind=9),)))


def test_container_read_rejections():
    blob = write_container(encode([1, 2, 3]))
    with pytest.raises(CorruptContainer):
        read_container(b"JUNK" + blob[4:])
    with pytest.raises(CorruptContainer):
        read_container(blob[:-1])
    with pytest.raises(CorruptContainer):
        read_container(blob + b"\x00")
    with pytest.raises(CorruptContainer):
        read_container(blob[:4] + bytes([9]) + blob[5:])  # version
    with pytest.raises(CorruptContainer):
        read_container(blob[:5] + bytes([3]) + blob[6:])  # dimension byte
    for cut in (0, 3, 5, 9, 17):
        with pytest.raises(CorruptContainer):
            read_container(blob[:cut])


def test_container_read_zero_stride_and_amp():
    base = EncodedSignal(1, (2,), 0, "detected", (1,),
                         (ArrowRecord(KIND_TRANSLATION, -1, 1, 1, 1, (0,)),))

    def mutate(**kw):
        rec = base.records[0]._replace(**kw)
        return write_container(base._replace(records=(rec,)))

    with pytest.raises(CorruptContainer):
        read_container(mutate(stride=0))
    with pytest.raises(CorruptContainer):
        read_container(mutate(amp_den=0))
    with pytest.raises(CorruptContainer):
        read_container(mutate(amp_num=0))
    # writing refuses an unknown kind, so corrupt the byte after the fact
    blob = write_container(base)
    kind_off = 4 + 1 + 1 + 8 + 8 + 1 + 8 + 8 + 8
    with pytest.raises(CorruptContainer):
        read_container(blob[:kind_off] + bytes([7]) + blob[kind_off + 1:])


# ----------------------------------------------------------------- metrics


def test_entropy_oracles():
    assert zeroth_order_entropy([]) == 0.0
    assert zeroth_order_entropy([1, 1, 1, 1]) == 0.0
    assert abs(zeroth_order_entropy([1, 2, 3, 4, 5]) - log2(5)) < 1e-12


def test_metrics_on_ramp():
    sig = [1, 2, 3, 4, 5]
    enc = encode(sig)
    m = metrics(sig, enc)
    assert m.nonzero_delta_fraction == 1
    assert abs(m.raw_entropy - log2(5)) < 1e-12
    assert m.delta_entropy == 0.0  # every delta is the same symbol
    assert m.encoded_size == len(write_container(enc))


def test_metrics_on_two_region_image():
    rows = [[10, 10, 20, 20] for _ in range(4)]
    enc = encode(rows)
    m = metrics(rows, enc)
    assert m.nonzero_delta_fraction == Fraction(4, 15)
    assert m.raw_entropy == 1.0
    assert 0.0 < m.delta_entropy < 1.0


def test_metrics_checks_sample_count():
    with pytest.raises(ValueError):
        metrics([1, 2, 3], encode([1, 2]))
