import pytest

from urdkit.cli import main
from urdkit.io import parse_urd
from urdkit.model import Profile
from urdkit.verifier import verify


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_construct_and_verify_pipeline(tmp_path, capsys):
    out = tmp_path / "d.urd"
    code, _, _ = run(capsys, "construct", "--family", "k2p4c4", "--v", "8",
                     "--profile", "2 2 1", "--out", str(out))
    assert code == 0
    doc = parse_urd(out.read_text())
    assert verify(doc.decomposition, Profile("k2p4c4", (2, 2, 1))).ok
    code, stdout, _ = run(capsys, "verify", "--in", str(out))
    assert code == 0 and stdout.strip() == "ok"


def test_construct_writes_stdout(capsys):
    code, stdout, _ = run(capsys, "construct", "--family", "p4c4", "--v", "8",
                          "--profile", "2 2")
    assert code == 0
    assert stdout.startswith("urd 1 v=8 family=p4c4")


def test_verify_detects_profile_mismatch(tmp_path, capsys):
    out = tmp_path / "d.urd"
    run(capsys, "construct", "--family", "k2p4c4", "--v", "8",
        "--profile", "2 2 1", "--out", str(out))
    code, stdout, _ = run(capsys, "verify", "--in", str(out),
                          "--profile", "1 2 1", "--family", "k2p4c4")
    assert code == 1
    assert "ProfileMismatch" in stdout


def test_verify_bad_file_usage_error(tmp_path, capsys):
    missing = tmp_path / "nope.urd"
    code, _, err = run(capsys, "verify", "--in", str(missing))
    assert code == 2
    bad = tmp_path / "bad.urd"
    bad.write_text("not a document\n")
    code, _, err = run(capsys, "verify", "--in", str(bad))
    assert code == 2 and "line 1" in err


def test_known_nonexistent_exit_codes(capsys):
    code, _, err = run(capsys, "construct", "--family", "k2p3k3", "--v", "6",
                       "--profile", "1 0 2")
    assert code == 1 and "known not to exist" in err
    code, _, err = run(capsys, "construct", "--family", "k2p3k3", "--v", "12",
                       "--profile", "1 0 5")
    assert code == 1
    code, _, err = run(capsys, "construct", "--family", "k2p3k3", "--v", "6",
                       "--profile", "1 3 1")
    assert code == 1
    code, _, err = run(capsys, "search", "--matching-triangles", "--v", "12", "--m", "1")
    assert code == 1


def test_inadmissible_profile_exit_code(capsys):
    code, _, err = run(capsys, "construct", "--family", "k2p4c4", "--v", "8",
                       "--profile", "1 2 1")
    assert code == 1 and "admissible" in err


def test_metamorph_two_c4(tmp_path, capsys):
    blow = tmp_path / "blow.urd"
    code, _, _ = run(capsys, "construct", "--family", "k2p4c4", "--v", "8",
                     "--profile", "1 0 3", "--out", str(blow))
    assert code == 0
    out = tmp_path / "meta.urd"
    doc = parse_urd(blow.read_text())
    c4_indices = [i for i, c in enumerate(doc.decomposition.classes) if c.kind == "c4"]
    code, _, _ = run(capsys, "metamorph", "--mode", "two-c4", "--in", str(blow),
                     "--classes", f"{c4_indices[0]},{c4_indices[1]}", "--out", str(out))
    assert code == 0
    result = parse_urd(out.read_text())
    assert verify(result.decomposition).ok
    kinds = sorted(c.kind for c in result.decomposition.classes)
    assert kinds == ["c4", "k2", "k2", "p4", "p4"]


def test_metamorph_usage_errors(tmp_path, capsys):
    blow = tmp_path / "blow.urd"
    run(capsys, "construct", "--family", "k2p4c4", "--v", "8",
        "--profile", "1 0 3", "--out", str(blow))
    code, _, _ = run(capsys, "metamorph", "--mode", "two-c4", "--in", str(blow),
                     "--classes", "0,9")
    assert code == 2
    code, _, _ = run(capsys, "metamorph", "--mode", "cycles-k", "--in", str(blow),
                     "--classes", "0,1")
    assert code == 2


def test_metamorph_domain_error(tmp_path, capsys):
    blow = tmp_path / "blow.urd"
    run(capsys, "construct", "--family", "k2p4c4", "--v", "8",
        "--profile", "1 0 3", "--out", str(blow))
    doc = parse_urd(blow.read_text())
    k2_index = next(i for i, c in enumerate(doc.decomposition.classes) if c.kind == "k2")
    c4_index = next(i for i, c in enumerate(doc.decomposition.classes) if c.kind == "c4")
    code, _, err = run(capsys, "metamorph", "--mode", "two-c4", "--in", str(blow),
                       "--classes", f"{k2_index},{c4_index}")
    assert code == 1


def test_spectrum_table(capsys):
    code, stdout, _ = run(capsys, "spectrum", "--family", "k2p4c4", "--v", "8")
    assert code == 0
    lines = stdout.strip().splitlines()
    assert lines[0] == "v\tfamily\tm\tp\tc/t\tfeasible\twitness_file"
    assert lines[1].startswith("8\tk2p4c4\t2\t2\t1\tyes")


def test_spectrum_exhaustive_v6(capsys):
    code, stdout, _ = run(capsys, "spectrum", "--family", "k2p3k3", "--v", "6",
                          "--all", "--exhaustive")
    assert code == 0
    rows = {}
    for line in stdout.strip().splitlines()[1:]:
        parts = line.split("\t")
        rows[(int(parts[2]), int(parts[3]), int(parts[4]))] = parts[5]
    assert {t for t, s in rows.items() if s == "yes"} == {(5, 0, 0), (3, 0, 1), (1, 3, 0)}
    assert rows[(1, 0, 2)] == "no"


def test_spectrum_witness_dir(tmp_path, capsys):
    wd = tmp_path / "wit"
    code, stdout, _ = run(capsys, "spectrum", "--family", "p4c4", "--v", "8",
                          "--exhaustive", "--witness-dir", str(wd))
    assert code == 0
    files = list(wd.glob("*.urd"))
    assert len(files) == 1
    doc = parse_urd(files[0].read_text())
    assert verify(doc.decomposition, Profile("p4c4", (2, 2))).ok


def test_spectrum_all_vs_complex(capsys):
    code, stdout, _ = run(capsys, "spectrum", "--family", "k2p3k3", "--v", "12", "--all")
    assert code == 0
    assert len(stdout.strip().splitlines()) == 1 + 11 + 1  # header + feasible + excluded row
    code, stdout, _ = run(capsys, "spectrum", "--family", "k2p3k3", "--v", "12")
    assert len(stdout.strip().splitlines()) == 1 + 4


def test_search_matching_triangles(tmp_path, capsys):
    out = tmp_path / "mt.urd"
    code, _, _ = run(capsys, "search", "--matching-triangles", "--v", "12", "--m", "9",
                     "--out", str(out))
    assert code == 0
    doc = parse_urd(out.read_text())
    assert verify(doc.decomposition, Profile("k2p3k3", (9, 0, 1))).ok


def test_search_timeout_exit_code(capsys):
    code, _, err = run(capsys, "search", "--matching-triangles", "--v", "18",
                       "--m", "1", "--budget", "0.05")
    assert code == 3 and "timeout" in err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["construct", "--family", "nope", "--v", "8", "--profile", "1 1 1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
