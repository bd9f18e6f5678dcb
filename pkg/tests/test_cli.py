from fractions import Fraction

import pytest

from quivermod.cli import main
from quivermod.kronecker import ScanResult


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out.splitlines(), captured.err


class TestInvariantCommands:
    def test_euler(self, capsys):
        code, out, _ = run(capsys, ["euler", "--quiver", "kronecker:3", "--d", "2,2", "--e", "2,2"])
        assert code == 0
        assert out == ["-4"]

    def test_slope_prints_exact_rational(self, capsys):
        code, out, _ = run(capsys, ["slope", "--theta", "1,0", "--d", "2,2"])
        assert code == 0
        assert out == ["1/2"]
        assert Fraction(out[0]) == Fraction(1, 2)

    def test_slope_integer_prints_bare(self, capsys):
        code, out, _ = run(capsys, ["slope", "--theta", "2,0", "--d", "1,1"])
        assert code == 0
        assert out == ["1"]

    def test_gcd(self, capsys):
        code, out, _ = run(capsys, ["gcd", "--d", "6,10,15"])
        assert code == 0
        assert out == ["1"]

    def test_weights(self, capsys):
        code, out, _ = run(capsys, ["weights", "--d", "6,10,15"])
        assert code == 0
        assert out == ["-14\t7\t1"]

    def test_dim_moduli(self, capsys):
        code, out, _ = run(capsys, ["dim", "--quiver", "loop:2", "--d", "2"])
        assert code == 0
        assert out == ["5"]

    def test_dim_framed(self, capsys):
        code, out, _ = run(capsys, ["dim", "--quiver", "kronecker:3", "--d", "2,2",
                                    "--framing", "1,0"])
        assert code == 0
        assert out == ["1"]

    def test_fine(self, capsys):
        code, out, _ = run(capsys, ["fine", "--d", "2,3"])
        assert code == 0
        assert out[0] == "fine\ttrue"
        code, out, _ = run(capsys, ["fine", "--d", "2,2"])
        assert out[0] == "fine\tfalse"


class TestStabilityCommands:
    def test_amply_stable_pass(self, capsys):
        code, out, _ = run(capsys, ["amply-stable", "--quiver", "kronecker:3",
                                    "--theta", "1,0", "--d", "2,3"])
        assert code == 0
        assert out == ["verdict\tpass", "max_pairing\t-3"]

    def test_amply_stable_fail_prints_witness(self, capsys):
        code, out, _ = run(capsys, ["amply-stable", "--quiver", "kronecker:3",
                                    "--theta", "1,0", "--d", "2,2"])
        assert code == 0
        assert out == ["verdict\tfail", "witness\t1,1\t1,1", "max_pairing\t-1"]

    def test_hn(self, capsys):
        code, out, _ = run(capsys, ["hn", "--quiver", "kronecker:3",
                                    "--theta", "1,0", "--d", "2,2"])
        assert code == 0
        assert out == [
            "1,0|1,1|0,1\t7",
            "1,0|1,2\t5",
            "2,0|0,2\t12",
            "2,1|0,1\t5",
            "2,2\t0",
        ]

    def test_hn_max_parts(self, capsys):
        code, out, _ = run(capsys, ["hn", "--quiver", "kronecker:3",
                                    "--theta", "1,0", "--d", "2,2", "--max-parts", "1"])
        assert code == 0
        assert out == ["2,2\t0"]

    def test_wall(self, capsys):
        code, out, _ = run(capsys, ["wall", "--quiver", "kronecker:3",
                                    "--theta", "1,0", "--d", "2,2"])
        assert code == 0
        assert out == ["codim\t1"]

    def test_wall_none_for_coprime(self, capsys):
        code, out, _ = run(capsys, ["wall", "--quiver", "kronecker:3",
                                    "--theta", "1,0", "--d", "2,3"])
        assert code == 0
        assert out == ["codim\tnone"]

    def test_brauer_special_case(self, capsys):
        code, out, _ = run(capsys, ["brauer", "--quiver", "kronecker:3",
                                    "--theta", "1,0", "--d", "2,2"])
        assert code == 0
        assert out == ["order\t2\tstatus\tspecial-case"]

    def test_brauer_theorem_case(self, capsys):
        code, out, _ = run(capsys, ["brauer", "--quiver", "kronecker:3",
                                    "--theta", "1,0", "--d", "3,3"])
        assert code == 0
        assert out == ["order\t3\tstatus\ttheorem"]


class TestVerifyCommands:
    def test_verify_loop_match(self, capsys):
        code, out, _ = run(capsys, ["verify-loop", "--m-max", "4", "--d-max", "6"])
        assert code == 0
        assert out == ["exception\t2\t2", "exceptions\t1\texpected\t1\tMATCH"]

    def test_verify_kronecker_match(self, capsys):
        code, out, _ = run(capsys, ["verify-kronecker", "--m-max", "4", "--d-max", "5",
                                    "--workers", "1"])
        assert code == 0
        assert out == ["exception\t3\t2,2", "exceptions\t1\texpected\t1\tMATCH"]

    def test_verify_loop_mismatch_exits_one(self, capsys, monkeypatch):
        def fake(m_range, d_range, workers=None):
            return ScanResult(exceptions=((2, 2), (3, 5)), scanned=0, elapsed=0.0)

        monkeypatch.setattr("quivermod.cli.loop_criterion_exceptions", fake)
        code, out, _ = run(capsys, ["verify-loop", "--m-max", "4", "--d-max", "6"])
        assert code == 1
        assert out[-1] == "exceptions\t2\texpected\t1\tMISMATCH"

    def test_verify_kronecker_mismatch_exits_one(self, capsys, monkeypatch):
        def fake(m_range, box, workers=None):
            return ScanResult(exceptions=(), scanned=0, elapsed=0.0)

        monkeypatch.setattr("quivermod.cli.kronecker_criterion_exceptions", fake)
        code, out, _ = run(capsys, ["verify-kronecker", "--m-max", "4", "--d-max", "5"])
        assert code == 1
        assert out[-1] == "exceptions\t0\texpected\t1\tMISMATCH"


class TestModelCommands:
    def test_l2(self, capsys):
        code, out, _ = run(capsys, ["l2", "--A", "0,1,1,0", "--B", "1,0,0,-1",
                                    "--v", "1,0"])
        assert code == 0
        assert out == [
            "invariants\t2\t0\t2\t0\t0",
            "stable\ttrue",
            "conic\t2\t-2\t2\t0\t0\t0",
            "semiinvariants\t1\t-1\t0",
        ]

    def test_k3(self, capsys):
        code, out, _ = run(capsys, ["k3", "--A", "1,0,0,1", "--B", "1,0,0,-1",
                                    "--C", "0,1,1,0", "--v", "1,0"])
        assert code == 0
        assert out == [
            "invariants\t1\t0\t0\t-1\t0\t-1",
            "stable\ttrue",
            "conic\t-1\t-1\t1\t0\t0\t0",
            "semiinvariants\t0\t1\t1",
        ]

    def test_l2_rational_entries(self, capsys):
        code, out, _ = run(capsys, ["l2", "--A", "1/2,0,0,-1/2", "--B", "0,1,0,0"])
        assert code == 0
        assert out[0].startswith("invariants\t1/2\t")


class TestAlgebraCommands:
    def test_clifford(self, capsys):
        code, out, _ = run(capsys, ["clifford", "--b", "0,1,0,1,0,0,0,0,1"])
        assert code == 0
        assert out == [
            "dimension\t8",
            "smooth\ttrue",
            "even_rank\t4",
            "azumaya\ttrue",
        ]

    def test_clifford_char(self, capsys):
        code, out, _ = run(capsys, ["clifford", "--b", "0,1,0,1,0,0,0,0,1",
                                    "--char", "2"])
        assert code == 0
        assert out[1] == "smooth\ttrue" and out[3] == "azumaya\ttrue"

    def test_hilbert_negative_args_need_separator(self, capsys):
        code, out, _ = run(capsys, ["hilbert", "--", "-1", "-1"])
        assert code == 0
        assert out == ["place\treal\t-1", "place\t2\t-1", "split\tfalse"]

    def test_hilbert_split(self, capsys):
        code, out, _ = run(capsys, ["hilbert", "1", "1"])
        assert code == 0
        assert out == ["place\treal\t1", "place\t2\t1", "split\ttrue"]

    def test_conic_solvable(self, capsys):
        code, out, _ = run(capsys, ["conic", "--", "1", "1", "-1", "0", "0", "0"])
        assert code == 0
        assert out == ["solvable\ttrue", "witness\t0\t1\t1"]

    def test_conic_unsolvable(self, capsys):
        code, out, _ = run(capsys, ["conic", "--", "1", "1", "-3", "0", "0", "0"])
        assert code == 0
        assert out == ["solvable\tfalse"]

    def test_hilbpoly(self, capsys):
        code, out, _ = run(capsys, ["hilbpoly", "--n", "1", "--t", "3"])
        assert code == 0
        assert out == ["7"]


class TestQuiverFiles:
    def test_file_based_quiver(self, capsys, tmp_path):
        path = tmp_path / "three_arrows.quiver"
        path.write_text("# two vertices, three parallel arrows\nvertices 2\narrow 0 1 3\n")
        code, out, _ = run(capsys, ["euler", "--quiver", str(path), "--d", "2,2", "--e", "2,2"])
        assert code == 0
        assert out == ["-4"]

    def test_missing_file_exits_two(self, capsys, tmp_path):
        code, out, err = run(capsys, ["euler", "--quiver", str(tmp_path / "nope"),
                                      "--d", "1", "--e", "1"])
        assert code == 2
        assert err.startswith("error:")


class TestErrorHandling:
    def test_no_subcommand(self, capsys):
        assert main([]) == 2
        capsys.readouterr()

    def test_unknown_flag(self, capsys):
        assert main(["gcd", "--nope", "1"]) == 2
        capsys.readouterr()

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        capsys.readouterr()

    def test_bad_integers(self, capsys):
        code, _, err = run(capsys, ["gcd", "--d", "2,x"])
        assert code == 2
        assert "error:" in err

    def test_wrong_matrix_arity(self, capsys):
        code, _, err = run(capsys, ["l2", "--A", "1,2,3", "--B", "1,0,0,1"])
        assert code == 2
        assert "needs 4 entries" in err

    def test_weights_need_coprime(self, capsys):
        code, _, err = run(capsys, ["weights", "--d", "2,4"])
        assert code == 2
        assert "error:" in err

    def test_degenerate_conic_domain_error(self, capsys):
        code, _, err = run(capsys, ["conic", "1", "0", "0", "0", "0", "0"])
        assert code == 2
        assert "degenerate" in err

    def test_clifford_non_square_entry_count(self, capsys):
        code, _, err = run(capsys, ["clifford", "--b", "1,2,3"])
        assert code == 2
        assert "square number" in err

    def test_dimension_mismatch(self, capsys):
        code, _, err = run(capsys, ["euler", "--quiver", "loop:2", "--d", "1,2", "--e", "1"])
        assert code == 2
        assert "error:" in err
