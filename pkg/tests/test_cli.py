"""End-to-end runs of every CLI subcommand, in process via cli.main."""

import pytest

from sigrep import read_csv_signal, read_pgm, write_csv_signal, write_pgm
from sigrep.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_green(capsys):
    code, out, err = run(capsys, "verify", "--seed", "3", "--instances", "2")
    assert code == 0
    assert err == ""
    assert "total:" in out and "0 failures" in out.splitlines()[-1]


def test_verify_bad_instances(capsys):
    code, _, err = run(capsys, "verify", "--instances", "0")
    assert code == 2
    assert err.startswith("error:")


def test_demo_prototype(capsys):
    code, out, _ = run(capsys, "demo-prototype")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "signal=1,2,3,4,5"
    assert "first_deltas=1,1,1,1" in lines
    assert "second_deltas=0,0,0" in lines
    assert lines[-1] == "exact=true"


def test_analyze_exact_match(tmp_path, capsys):
    sig = tmp_path / "sig.csv"
    write_csv_signal(sig, [5, 6, 7, 5, 6, 7], origin=0)
    code, out, _ = run(capsys, "analyze", str(sig), "--segment-len", "3")
    assert code == 0
    assert "entry.1.redundant=true" in out
    assert "entry.1.relation=observed isomorphism" in out
    assert "entry.1.source=[0,3)" in out
    assert "summary.redundant_count=1" in out
    assert "summary.redundant_fraction=1" in out


def test_analyze_tolerance_and_detectors(tmp_path, capsys):
    from fractions import Fraction
    sig = tmp_path / "sig.csv"
    # second segment = 2 * first + noise (-4/5, 3/5): orthogonal to the
    # source, so the fitted amplitude is exactly 2 and the residual norm 1
    write_csv_signal(sig, [3, 4, Fraction(26, 5), Fraction(43, 5)], origin=0)
    code, out, _ = run(capsys, "analyze", str(sig), "--segment-len", "2",
                       "--detectors", "translation")
    assert code == 0
    assert "entry.1.redundant=false" in out
    code, out, _ = run(capsys, "analyze", str(sig), "--segment-len", "2",
                       "--tol", "1", "--detectors", "amp")
    assert code == 0
    assert "entry.1.relation=within-tolerance match" in out
    assert "entry.1.amp=2" in out
    code, _, err = run(capsys, "analyze", str(sig), "--detectors", "sonar")
    assert code == 2 and "unknown detector" in err


def test_encode_decode_csv(tmp_path, capsys):
    sig = tmp_path / "in.csv"
    enc = tmp_path / "sig.fsg"
    out_csv = tmp_path / "out.csv"
    write_csv_signal(sig, [9, 4, 4, 8], origin=-2)
    code, out, _ = run(capsys, "encode", str(sig), "-o", str(enc))
    assert code == 0
    assert "dimension=1 shape=4" in out
    code, _, _ = run(capsys, "decode", str(enc), "-o", str(out_csv))
    assert code == 0
    assert read_csv_signal(out_csv) == ([9, 4, 4, 8], -2)


def test_encode_decode_pgm(tmp_path, capsys):
    img = tmp_path / "in.pgm"
    enc = tmp_path / "img.fsg"
    out_img = tmp_path / "out.pgm"
    rows = [[0, 10, 10], [0, 10, 20]]
    write_pgm(img, rows)
    code, out, _ = run(capsys, "encode", str(img), "-o", str(enc))
    assert code == 0 and "dimension=2 shape=2x3" in out
    code, _, _ = run(capsys, "decode", str(enc), "-o", str(out_img))
    assert code == 0
    assert read_pgm(out_img)[0] == rows


def test_decode_extension_mismatch(tmp_path, capsys):
    sig = tmp_path / "in.csv"
    enc = tmp_path / "sig.fsg"
    write_csv_signal(sig, [1, 2, 3])
    run(capsys, "encode", str(sig), "-o", str(enc))
    code, _, err = run(capsys, "decode", str(enc), "-o",
                       str(tmp_path / "no.pgm"))
    assert code == 2 and "2-D container" in err


def test_stats(tmp_path, capsys):
    sig = tmp_path / "in.csv"
    enc = tmp_path / "sig.fsg"
    write_csv_signal(sig, [1, 2, 3, 4, 5])
    run(capsys, "encode", str(sig), "-o", str(enc))
    code, out, _ = run(capsys, "stats", str(sig), str(enc))
    assert code == 0
    lines = dict(line.split("=", 1) for line in out.splitlines())
    assert lines["nonzero_delta_fraction"] == "1"
    assert lines["raw_entropy_bits_per_sample"] == "2.321928"
    assert lines["delta_entropy_bits_per_sample"] == "0.000000"
    assert int(lines["encoded_size_bytes"]) > 0


def test_io_errors_exit_2(tmp_path, capsys):
    code, _, err = run(capsys, "encode", str(tmp_path / "missing.csv"),
                       "-o", str(tmp_path / "x.fsg"))
    assert code == 2 and err.startswith("error:")
    bad = tmp_path / "bad.fsg"
    bad.write_bytes(b"not a container")
    code, _, err = run(capsys, "decode", str(bad), "-o",
                       str(tmp_path / "y.csv"))
    assert code == 2 and "magic" in err


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
