import pytest

from groupcolour import catalog
from groupcolour.cli import main, trend_rows
from groupcolour.colouring import dump_cover, random_cover
from groupcolour.corners import dump_pairs, random_pairs
from groupcolour.errors import GroupColourError


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def s3_cover_file(tmp_path):
    path = tmp_path / "s3.cover"
    path.write_text("cover 2 6\n0 2 5\n1 3 4\n")
    return str(path)


class TestInfo:
    def test_s3(self, capsys):
        code, out, _ = run(capsys, "info", "symmetric:3", "--porcelain")
        assert code == 0
        assert out == "order=6 abelian=false classes=3 c=1/2 c_decimal=0.500000\n"

    def test_human_mode_header(self, capsys):
        code, out, _ = run(capsys, "info", "symmetric:3")
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("# ")
        assert lines[1] == "order=6 abelian=false classes=3 c=1/2 c_decimal=0.500000"

    def test_abelian(self, capsys):
        code, out, _ = run(capsys, "info", "cyclic:5", "--porcelain")
        assert code == 0
        assert "abelian=true" in out and "c=1/1" in out


class TestCprob:
    def test_q8(self, capsys):
        code, out, _ = run(capsys, "cprob", "quaternion8", "--porcelain")
        assert code == 0
        assert "pairs_total=64 pairs_commuting=40" in out
        assert "c=5/8" in out


class TestQuads:
    def test_per_class(self, capsys, s3_cover_file):
        code, out, _ = run(capsys, "quads", "symmetric:3", "--cover", s3_cover_file, "--porcelain")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "classes=2"
        assert lines[1] == "class=0 size=3 total=9 noncommuting=0"
        assert lines[2] == "class=1 size=3 total=0 noncommuting=0"


class TestSchur:
    def test_s3(self, capsys):
        code, out, _ = run(capsys, "schur", "symmetric:3", "--porcelain")
        assert code == 0
        lines = out.splitlines()
        assert "k=1" in lines
        assert "complete=true" in lines
        # emitted colouring has exactly two classes covering all six elements
        members = [ln for ln in lines if ln.startswith("class=")]
        assert len(members) == 2
        seen = sorted(v for ln in members for v in map(int, ln.split("members=")[1].split()))
        assert seen == list(range(6))

    def test_abelian_rejected(self, capsys):
        code, out, err = run(capsys, "schur", "cyclic:4", "--porcelain")
        assert code == 1
        assert out == ""
        assert err.startswith("error:")


class TestCoverBuild:
    def test_stdout_cover(self, capsys):
        code, out, _ = run(capsys, "cover-build", "symmetric:3", "--porcelain")
        assert code == 0
        assert "cover_size=" in out
        assert "\ncover " in out  # cover file follows the transcript

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "built.cover"
        code, out, _ = run(capsys, "cover-build", "quaternion8", "--porcelain",
                           "--out", str(target))
        assert code == 0
        assert f"cover_file={target}" in out
        assert target.read_text().startswith("cover ")
        # the emitted file passes its own avoidance check
        code2, out2, _ = run(capsys, "cover-check", "quaternion8",
                             "--cover", str(target), "--porcelain")
        assert code2 == 0
        assert out2 == "avoids=true\n"

    def test_bad_epsilon(self, capsys):
        code, _, err = run(capsys, "cover-build", "symmetric:3",
                           "--epsilon", "9/10", "--porcelain")
        assert code == 1
        assert "exceeds" in err


class TestCoverCheck:
    def test_avoiding(self, capsys, s3_cover_file):
        code, out, _ = run(capsys, "cover-check", "symmetric:3",
                           "--cover", s3_cover_file, "--porcelain")
        assert code == 0
        assert out == "avoids=true\n"

    def test_violating(self, capsys, tmp_path):
        path = tmp_path / "bad.cover"
        path.write_text("cover 1 6\n0 1 2 3 4 5\n")
        code, out, _ = run(capsys, "cover-check", "symmetric:3",
                           "--cover", str(path), "--porcelain")
        assert code == 0
        assert out.startswith("avoids=false witness_class=0")

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "cover-check", "symmetric:3",
                           "--cover", "/nonexistent.cover", "--porcelain")
        assert code == 1
        assert err.startswith("error:")


class TestCorners:
    def test_empty(self, capsys, tmp_path):
        path = tmp_path / "e.pairs"
        path.write_text("pairs 6\n")
        code, out, _ = run(capsys, "corners", "symmetric:3", "--pairs", str(path), "--porcelain")
        assert code == 0
        assert out == "S=0/216 S_decimal=0.000000 triangles=0 bijection=ok\n"

    def test_full(self, capsys, tmp_path):
        path = tmp_path / "f.pairs"
        path.write_text(dump_pairs(random_pairs(6, seed=0, density=1.1)))
        code, out, _ = run(capsys, "corners", "symmetric:3", "--pairs", str(path), "--porcelain")
        assert code == 0
        assert out.startswith("S=216/216 ")
        assert "bijection=ok" in out

    def test_size_mismatch(self, capsys, tmp_path):
        path = tmp_path / "m.pairs"
        path.write_text("pairs 4\n0 0\n")
        code, _, err = run(capsys, "corners", "symmetric:3", "--pairs", str(path), "--porcelain")
        assert code == 1
        assert "order" in err


class TestWitness:
    def test_transcript(self, capsys, tmp_path):
        g = catalog.builtin("heisenberg", [3])
        path = tmp_path / "h.cover"
        path.write_text(dump_cover(random_cover(g, 2, seed=1, overlap=0.1)))
        code, out, _ = run(capsys, "witness", "heisenberg:3",
                           "--cover", str(path), "--porcelain", "--seed", "3")
        assert code == 0
        assert out.startswith("densities=")
        assert "success=" in out


class TestTrend:
    def test_dihedral_rows(self, capsys):
        code, out, _ = run(capsys, "trend", "--family", "dihedral",
                           "--range", "3..5", "--porcelain")
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 3
        assert lines[0].startswith("n=3 order=6 c=1/2")
        for ln in lines:
            assert "size_bound=" in ln and "k=" in ln

    def test_bad_range(self, capsys):
        code, _, err = run(capsys, "trend", "--family", "dihedral",
                           "--range", "3-5", "--porcelain")
        assert code == 1
        assert "range" in err

    def test_rows_helper_skips_non_primes(self):
        rows = trend_rows("heisenberg", 3, 7)
        assert [r["param"] for r in rows] == [3, 5, 7]

    def test_rows_helper_unknown_family(self):
        with pytest.raises(GroupColourError):
            trend_rows("simple", 1, 2)


class TestCatalogVerb:
    def test_lists_names(self, capsys):
        code, out, _ = run(capsys, "catalog", "--porcelain")
        assert code == 0
        assert "quaternion8" in out


class TestExitCodes:
    def test_usage_error_is_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["schur"])  # missing groupspec
        assert exc.value.code == 2
        capsys.readouterr()

    def test_unknown_verb_is_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2
        capsys.readouterr()

    def test_domain_error_is_one(self, capsys):
        code, _, err = run(capsys, "info", "nosuchgroup:3", "--porcelain")
        assert code == 1
        assert err.startswith("error:")

    def test_bad_jobs(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["info", "symmetric:3", "--jobs", "0"])
        assert exc.value.code == 2
        capsys.readouterr()


class TestDeterminism:
    def test_repeat_runs_identical(self, capsys, tmp_path):
        g = catalog.builtin("symmetric", [4])
        path = tmp_path / "s4.cover"
        path.write_text(dump_cover(random_cover(g, 3, seed=5, overlap=0.2)))
        argv = ["witness", "symmetric:4", "--cover", str(path), "--porcelain"]
        _, out1, _ = run(capsys, *argv)
        _, out2, _ = run(capsys, *argv)
        assert out1 == out2

    def test_jobs_flag_no_effect(self, capsys):
        _, out1, _ = run(capsys, "schur", "quaternion8", "--porcelain", "--jobs", "1")
        _, out2, _ = run(capsys, "schur", "quaternion8", "--porcelain", "--jobs", "4")
        assert out1 == out2
