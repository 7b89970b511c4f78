import json

import pytest

from homlie import catalog, cli


@pytest.fixture()
def fixture_file(tmp_path):
    def write(name):
        path = tmp_path / f"{name}.alg"
        path.write_text(catalog.fixture_text(name), encoding="utf-8")
        return str(path)

    return write


def run(argv):
    return cli.main(argv)


class TestVerify:
    def test_requested_checks_pass(self, fixture_file, capsys):
        code = run(
            ["verify", fixture_file("imex"), "-p", "a=1", "-p", "b=1", "-p", "A=1",
             "--checks", "hom-jacobi,symplectic"]
        )
        out = capsys.readouterr().out
        assert code == cli.EXIT_OK
        assert "hom-jacobi" in out and "PASS" in out

    def test_default_checks(self, fixture_file, capsys):
        code = run(
            ["verify", fixture_file("kahler4"), "-p", "a=2", "-p", "b=3", "-p", "A=1"]
        )
        out = capsys.readouterr().out
        assert code == cli.EXIT_OK
        for name in ("antisymmetry", "morphism", "hom-jacobi", "pseudo-riemannian",
                     "symplectic", "almost-complex", "nijenhuis", "hermitian",
                     "kahler"):
            assert name in out

    def test_failing_check_sets_exit_one(self, fixture_file, capsys):
        code = run(
            ["verify", fixture_file("imex"), "-p", "a=1", "-p", "b=1", "-p", "A=1",
             "--checks", "jacobi"]
        )
        out = capsys.readouterr().out
        assert code == cli.EXIT_FAIL
        assert "FAIL" in out
        assert "(1, 2, 4)" in out

    def test_degenerate_omega_is_a_verdict_failure(self, fixture_file, capsys):
        code = run(
            ["verify", fixture_file("imex"), "-p", "a=0", "-p", "b=1", "-p", "A=1",
             "--checks", "jacobi,symplectic"]
        )
        out = capsys.readouterr().out
        assert code == cli.EXIT_FAIL
        assert "jacobi" in out
        assert "degenerate" in out

    def test_missing_binding_is_input_error(self, fixture_file, capsys):
        code = run(["verify", fixture_file("imex"), "-p", "a=1"])
        err = capsys.readouterr().err
        assert code == cli.EXIT_INPUT
        assert "missing bindings" in err

    def test_unknown_check_is_input_error(self, fixture_file, capsys):
        code = run(
            ["verify", fixture_file("imex"), "-p", "a=1", "-p", "b=1", "-p", "A=1",
             "--checks", "bogus"]
        )
        assert code == cli.EXIT_INPUT

    def test_absent_structure_is_input_error(self, fixture_file, capsys):
        code = run(
            ["verify", fixture_file("imex"), "-p", "a=1", "-p", "b=1", "-p", "A=1",
             "--checks", "hermitian"]
        )
        assert code == cli.EXIT_INPUT

    def test_missing_file_is_input_error(self, capsys):
        assert run(["verify", "/nonexistent.alg"]) == cli.EXIT_INPUT

    def test_bad_param_syntax_is_input_error(self, fixture_file):
        assert (
            run(["verify", fixture_file("imex"), "-p", "a"]) == cli.EXIT_INPUT
        )

    def test_json_report_written(self, fixture_file, tmp_path, capsys):
        out_path = tmp_path / "report.json"
        code = run(
            ["verify", fixture_file("imex"), "-p", "a=1", "-p", "b=1", "-p", "A=1",
             "--checks", "hom-jacobi", "--json", str(out_path)]
        )
        assert code == cli.EXIT_OK
        doc = json.loads(out_path.read_text())
        assert doc["verdicts"] == {"hom-jacobi": "pass"}
        assert doc["bindings"] == {"A": "1", "a": "1", "b": "1"}
        assert doc["instance"] == "imex"
        assert doc["counterexamples"] == []

    def test_color_disabled_by_env(self, fixture_file, capsys, monkeypatch):
        monkeypatch.setenv("HOMLIE_COLOR", "0")
        run(
            ["verify", fixture_file("imex"), "-p", "a=1", "-p", "b=1", "-p", "A=1",
             "--checks", "hom-jacobi"]
        )
        out = capsys.readouterr().out
        assert "\x1b[" not in out

    def test_hermitian_fixture_passes(self, fixture_file, capsys):
        code = run(
            ["verify", fixture_file("hermitian4"), "-p", "a=1",
             "--checks", "antisymmetry,morphism,hom-jacobi,almost-complex,hermitian"]
        )
        assert code == cli.EXIT_OK

    def test_verdicts_stable_across_bindings(self, fixture_file):
        import random
        from fractions import Fraction

        rng = random.Random(991)
        path = fixture_file("imex")
        for _ in range(10):
            a = Fraction(rng.randint(1, 6), rng.randint(1, 3)) * rng.choice((1, -1))
            b = Fraction(rng.randint(1, 6), rng.randint(1, 3)) * rng.choice((1, -1))
            code = run(
                ["verify", path, "-p", f"a={a}", "-p", f"b={b}", "-p", "A=1",
                 "--checks", "antisymmetry,morphism,hom-jacobi,symplectic"]
            )
            assert code == cli.EXIT_OK

    def test_one_violation_among_passes_still_fails(self, fixture_file, capsys):
        code = run(
            ["verify", fixture_file("imex"), "-p", "a=1", "-p", "b=1", "-p", "A=1",
             "--checks", "antisymmetry,jacobi,hom-jacobi"]
        )
        out = capsys.readouterr().out
        assert code == cli.EXIT_FAIL
        assert out.count("PASS") == 2 and out.count("FAIL") == 1

    def test_bianchi_check(self, fixture_file):
        code = run(
            ["verify", fixture_file("kahler2_case1"),
             "-p", "a=1", "-p", "h=1", "-p", "d=-2", "--checks", "bianchi"]
        )
        assert code == cli.EXIT_OK

    def test_integrability_check(self, fixture_file, capsys):
        code = run(
            ["verify", fixture_file("kahler4"), "-p", "a=1", "-p", "b=1", "-p", "A=1",
             "--checks", "integrability"]
        )
        assert code == cli.EXIT_OK
        code = run(
            ["verify", fixture_file("hermitian4"), "-p", "a=1",
             "--checks", "integrability"]
        )
        # three-way agreement holds even when the structure is not integrable
        assert code == cli.EXIT_OK

    def test_curved_product_fails_left_symmetry_by_default(self, fixture_file, capsys):
        code = run(
            ["verify", fixture_file("kahler2_case1"),
             "-p", "a=1", "-p", "h=1", "-p", "d=-2"]
        )
        out = capsys.readouterr().out
        assert code == cli.EXIT_FAIL
        assert "hom-left-symmetric" in out
        assert "kahler" in out and out.count("FAIL") == 1


class TestBuild:
    def test_levi_civita_product_table(self, fixture_file, tmp_path):
        out_path = tmp_path / "lc.json"
        code = run(
            ["build", fixture_file("kahler4"), "-p", "a=1", "-p", "b=1", "-p", "A=1",
             "--target", "levi-civita", "--json", str(out_path)]
        )
        assert code == cli.EXIT_OK
        doc = json.loads(out_path.read_text())
        table = {
            (e["i"], e["j"]): e["coeffs"]
            for e in doc["derived"]["levi-civita"]["product"]
        }
        assert table[(2, 1)] == ["0", "0", "1", "0"]
        assert doc["verdicts"]["torsion"] == "pass"

    def test_left_symmetric(self, fixture_file, tmp_path):
        out_path = tmp_path / "ls.json"
        code = run(
            ["build", fixture_file("imex"), "-p", "a=1", "-p", "b=1", "-p", "A=1",
             "--target", "left-symmetric", "--json", str(out_path)]
        )
        assert code == cli.EXIT_OK
        doc = json.loads(out_path.read_text())
        table = {
            (e["i"], e["j"]): e["coeffs"]
            for e in doc["derived"]["left-symmetric"]["product"]
        }
        assert table[(1, 1)] == ["0", "0", "0", "-1"]
        assert doc["verdicts"]["hom-left-symmetric"] == "pass"

    def test_phase_space_reports_honest_nijenhuis(self, fixture_file, tmp_path):
        out_path = tmp_path / "ps.json"
        code = run(
            ["build", fixture_file("imex"), "-p", "a=1", "-p", "b=1", "-p", "A=1",
             "--target", "phase-space", "--json", str(out_path)]
        )
        doc = json.loads(out_path.read_text())
        assert doc["derived"]["phase-space"]["dimension"] == 8
        assert doc["verdicts"]["hom-left-symmetric"] == "pass"
        assert doc["verdicts"]["symplectic"] == "pass"
        assert doc["verdicts"]["complex-square"] == "pass"
        # the cocycle-induced base is not metric compatible, so the
        # canonical complex structure is genuinely non-integrable here
        assert doc["verdicts"]["nijenhuis"] == "fail"
        assert code == cli.EXIT_FAIL

    def test_complexify(self, fixture_file, tmp_path):
        out_path = tmp_path / "cx.json"
        code = run(
            ["build", fixture_file("kahler4"), "-p", "a=1", "-p", "b=1", "-p", "A=1",
             "--target", "complexify", "--json", str(out_path)]
        )
        assert code == cli.EXIT_OK
        doc = json.loads(out_path.read_text())
        assert doc["derived"]["complexify"]["rank"] == 2
        assert doc["derived"]["complexify"]["integrability"]["nijenhuis_zero"] is True

    def test_induced_omega_matches_fixture(self, fixture_file, tmp_path):
        out_path = tmp_path / "io.json"
        code = run(
            ["build", fixture_file("kahler4"), "-p", "a=1", "-p", "b=1", "-p", "A=1",
             "--target", "induced-omega", "--json", str(out_path)]
        )
        assert code == cli.EXIT_OK
        doc = json.loads(out_path.read_text())
        omega = doc["derived"]["induced-omega"]["omega"]
        assert omega[0][2] == "-1"
        assert omega[1][3] == "1"
        assert doc["verdicts"]["symplectic"] == "pass"

    def test_phase_space_needs_product_or_omega(self, fixture_file):
        code = run(
            ["build", fixture_file("twist2_hat"), "--target", "phase-space"]
        )
        assert code == cli.EXIT_INPUT


class TestClassify2:
    def test_bar_reports_none_and_exits_zero(self, capsys):
        code = run(["classify2", "--twist", "bar"])
        out = capsys.readouterr().out
        assert code == cli.EXIT_OK
        assert '"kind": "none"' in out

    def test_tilde_with_shear(self, capsys):
        code = run(["classify2", "--twist", "tilde", "--B", "1/2"])
        out = capsys.readouterr().out
        assert code == cli.EXIT_OK
        assert '"kind": "none"' in out

    def test_tilde_needs_nonzero_shear(self, capsys):
        assert run(["classify2", "--twist", "tilde", "--B", "0"]) == cli.EXIT_INPUT
        assert run(["classify2", "--twist", "tilde"]) == cli.EXIT_INPUT

    def test_hat_family_with_samples(self, tmp_path, capsys):
        out_path = tmp_path / "hat.json"
        code = run(["classify2", "--twist", "hat", "--json", str(out_path)])
        assert code == cli.EXIT_OK
        doc = json.loads(out_path.read_text())
        assert doc["derived"]["almost-complex"]["kind"] == "constrained"
        assert doc["verdicts"]["sample-hermitian"] == "pass"
        assert doc["verdicts"]["sample-kahler"] == "pass"

    def test_proper_report(self, tmp_path, capsys):
        out_path = tmp_path / "proper.json"
        code = run(["classify2", "--proper", "--json", str(out_path)])
        assert code == cli.EXIT_OK
        doc = json.loads(out_path.read_text())
        assert doc["verdicts"]["proper-nonexistence"] == "pass"
        assert set(doc["derived"]["families"]) == {
            "bar", "tilde(B=1)", "tilde(B=2)", "tilde(B=-1)",
            "tilde(B=1/2)", "tilde(B=7)",
        }

    def test_needs_twist_or_proper(self, capsys):
        assert run(["classify2"]) == cli.EXIT_INPUT


def test_module_entry_point(fixture_file):
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "homlie", "verify", fixture_file("imex"),
         "-p", "a=1", "-p", "b=1", "-p", "A=1", "--checks", "hom-jacobi"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "hom-jacobi" in proc.stdout
