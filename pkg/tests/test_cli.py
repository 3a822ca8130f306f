"""End-to-end tests of the command-line surface: exit codes, report shapes,
JSON determinism, and the documented example invocations."""

import json
import shutil
import subprocess

import pytest

from liesym.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


@pytest.fixture
def clean_seed_env(monkeypatch):
    monkeypatch.delenv("LIESYM_SEED", raising=False)


@pytest.fixture
def sysfile(tmp_path):
    def make(payload, name="system.json"):
        p = tmp_path / name
        p.write_text(json.dumps(payload))
        return str(p)
    return make


class TestCommutator:
    @pytest.mark.parametrize("i,j,expected", [
        ("4", "7", "[X4, X7] = X3"),
        ("5", "8", "[X5, X8] = X8"),
        ("1", "3", "[X1, X3] = 0"),
    ])
    def test_basis_brackets(self, capsys, i, j, expected):
        code, out, _ = run(capsys, "commutator", i, j)
        assert code == 0
        assert out.strip() == expected

    def test_json_is_byte_identical(self, capsys):
        code1, out1, _ = run(capsys, "commutator", "4", "7", "--json")
        code2, out2, _ = run(capsys, "commutator", "4", "7", "--json")
        assert code1 == code2 == 0
        assert out1 == out2
        payload = json.loads(out1)
        assert payload["coefficients"] == [0, 0, 1, 0, 0, 0, 0, 0]
        assert payload["pretty"] == "X3"

    def test_bad_index(self, capsys):
        code, _, err = run(capsys, "commutator", "0", "5")
        assert code == 1
        assert "indices" in err

    def test_generator_files(self, capsys, sysfile):
        g1 = sysfile({"xi": "1"}, "g1.json")
        g2 = sysfile({"xi": "x"}, "g2.json")
        code, out, _ = run(capsys, "commutator", g1, g2, "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["xi"] == "1"

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "commutator", "4", "/nope/such.json")
        assert code == 1
        assert "cannot read" in err


class TestNormalize:
    def test_diagonal_family(self, capsys):
        code, out, _ = run(capsys, "normalize", "0,0,0,0,1,0.5,0,0",
                           "--algebra", "L4", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["family"] == 1
        assert payload["params"]["alpha"] == pytest.approx(0.5)
        assert payload["violations"] == []
        assert isinstance(payload["word"], list)

    def test_shear_family(self, capsys):
        code, out, _ = run(capsys, "normalize", "0,0,0,0,0,0,1,0",
                           "--algebra", "L4", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["family"] == 3
        assert payload["params"].get("beta", 0.0) == 0.0

    def test_zero_element(self, capsys):
        code, out, _ = run(capsys, "normalize", "0,0,0,0,0,0,0,0",
                           "--algebra", "L4", "--json")
        assert code == 0
        assert json.loads(out)["family"] == 4

    def test_human_output(self, capsys):
        code, out, _ = run(capsys, "normalize", "0,0,0,0,1,0.5,0,0",
                           "--algebra", "L4")
        assert code == 0
        assert out.startswith("L4 family 1 (scale 1")
        assert "alpha=0.5" in out

    def test_support_restriction(self, capsys):
        code, _, err = run(capsys, "normalize", "1,0,0,0,1,0,0,0",
                           "--algebra", "L4")
        assert code == 1
        assert "zero coefficients" in err

    def test_full_algebra_accepts_everything(self, capsys):
        code, out, _ = run(capsys, "normalize", "1,0,0,0,1,0,0,0", "--json")
        assert code == 0
        assert json.loads(out)["algebra"] == "L8"

    def test_arity_error(self, capsys):
        code, _, err = run(capsys, "normalize", "1,2,3")
        assert code == 1
        assert "8 comma-separated" in err


class TestJordan:
    def test_rotation_like(self, capsys):
        code, out, _ = run(capsys, "jordan", "--matrix", "1,2,-2,1", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["kind"] == "J2"
        assert payload["l4_family"] == 2
        assert payload["reconstruction_error"] < 1e-12

    def test_human_output(self, capsys):
        code, out, _ = run(capsys, "jordan", "--matrix", "2,0,0,3")
        assert code == 0
        assert out.startswith("kind J1")

    def test_arity_error(self, capsys):
        code, _, err = run(capsys, "jordan", "--matrix", "1,2,3")
        assert code == 1
        assert "4 comma-separated" in err


class TestCheck:
    def test_kernel_admitted(self, capsys, sysfile, clean_seed_env):
        s = sysfile({"F": "exp(y)", "G": "exp(z)"})
        g = sysfile({"xi": "1"}, "gen.json")
        code, out, _ = run(capsys, "check", s, g)
        assert code == 0
        assert out.startswith("admitted")

    def test_rejection_reports_witness(self, capsys, sysfile, clean_seed_env):
        s = sysfile({"F": "exp(y)", "G": "exp(z)"})
        g = sysfile({"xi": "0", "eta1": "y", "eta2": "0"}, "gen.json")
        code, out, _ = run(capsys, "check", s, g, "--json")
        assert code == 2
        payload = json.loads(out)
        assert payload["verdict"] == "rejected"
        assert set(payload["witness"]) == {"x", "y", "z", "yp", "zp"}
        code, out, _ = run(capsys, "check", s, g)
        assert code == 2
        assert "witness:" in out

    def test_coefficient_generator_file(self, capsys, sysfile, clean_seed_env):
        s = sysfile({"F": "exp(y)", "G": "exp(z)"})
        g = sysfile({"coefficients": [1, 0, 0, 0, 0, 0, 0, 0]}, "gen.json")
        code, out, _ = run(capsys, "check", s, g)
        assert code == 0
        assert out.startswith("admitted")

    def test_system_params(self, capsys, sysfile, clean_seed_env):
        s = sysfile({"F": "a*y", "G": "a*z", "params": {"a": 2.0}})
        g = sysfile({"xi": "1"}, "gen.json")
        code, out, _ = run(capsys, "check", s, g)
        assert code == 0

    def test_unbound_parameter_rejected(self, capsys, sysfile):
        s = sysfile({"F": "a*y", "G": "z"})
        g = sysfile({"xi": "1"}, "gen.json")
        code, _, err = run(capsys, "check", s, g)
        assert code == 1
        assert "unbound" in err

    def test_bad_generator_symbol(self, capsys, sysfile):
        s = sysfile({"F": "exp(y)", "G": "exp(z)"})
        g = sysfile({"xi": "q"}, "gen.json")
        code, _, err = run(capsys, "check", s, g)
        assert code == 1

    def test_domain_flag(self, capsys, sysfile, clean_seed_env):
        s = sysfile({"F": "z^(-2)", "G": "z^(-3)"})
        g = sysfile({"coefficients": [0, 1, 0, 0, 1, 0.5, 0, 0]}, "gen.json")
        dom = "x=0.2:3,y=0.2:3,z=0.2:3,yp=-1:1,zp=-1:1"
        code, out, _ = run(capsys, "check", s, g, "--domain", dom, "--tol", "1e-8")
        assert code == 0, out
        code, _, err = run(capsys, "check", s, g, "--domain", "x=1")
        assert code == 1
        assert "name=lo:hi" in err
        code, _, err = run(capsys, "check", s, g, "--domain",
                           "x=0.2:3,y=0.2:3,z=0.2:3,yp=-1:1")
        assert code == 1
        assert "missing" in err

    def test_json_reports_are_reproducible(self, capsys, sysfile, clean_seed_env):
        s = sysfile({"F": "exp(y)", "G": "exp(z)"})
        g = sysfile({"xi": "0", "eta1": "y", "eta2": "0"}, "gen.json")
        _, out1, _ = run(capsys, "check", s, g, "--json")
        _, out2, _ = run(capsys, "check", s, g, "--json")
        assert out1 == out2

    def test_seed_resolution(self, capsys, sysfile, monkeypatch):
        s = sysfile({"F": "exp(y)", "G": "exp(z)"})
        g = sysfile({"xi": "1"}, "gen.json")
        monkeypatch.setenv("LIESYM_SEED", "7")
        _, out, _ = run(capsys, "check", s, g, "--json")
        assert json.loads(out)["seed"] == 7
        _, out, _ = run(capsys, "check", s, g, "--json", "--seed", "3")
        assert json.loads(out)["seed"] == 3
        monkeypatch.setenv("LIESYM_SEED", "pony")
        code, _, err = run(capsys, "check", s, g)
        assert code == 1
        assert "LIESYM_SEED" in err

    def test_missing_and_malformed_files(self, capsys, sysfile, tmp_path):
        g = sysfile({"xi": "1"}, "gen.json")
        code, _, err = run(capsys, "check", str(tmp_path / "none.json"), g)
        assert code == 1
        assert "cannot read" in err
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, _, err = run(capsys, "check", str(bad), g)
        assert code == 1
        assert "not valid JSON" in err
        incomplete = sysfile({"F": "y"}, "partial.json")
        code, _, err = run(capsys, "check", incomplete, g)
        assert code == 1
        assert "'G'" in err


class TestCatalogCli:
    def test_list(self, capsys):
        code, out, _ = run(capsys, "catalog", "list", "--json")
        assert code == 0
        entries = json.loads(out)["entries"]
        assert len(entries) == 34
        code, out, _ = run(capsys, "catalog", "list")
        assert code == 0
        assert "T1.J1" in out and "T2.3 [quarantined]" in out

    def test_verify_single_pass(self, capsys, clean_seed_env):
        code, out, _ = run(capsys, "catalog", "verify", "--id", "T3.S2")
        assert code == 0
        assert "T3.S2 PASS" in out

    def test_verify_quarantined(self, capsys, clean_seed_env):
        code, out, _ = run(capsys, "catalog", "verify", "--id", "T2.3", "--json")
        assert code == 3
        payload = json.loads(out)
        assert payload["summary"]["quarantined"] == 1
        entry = payload["entries"][0]
        bad = [c for c in entry["checks"] if not c["ok"]]
        assert bad and set(bad[0]["witness"]) == {"x", "y", "z", "yp", "zp"}

    def test_verify_with_overrides(self, capsys, clean_seed_env):
        code, out, _ = run(capsys, "catalog", "verify", "--id", "T1.J1",
                           "--set", "gamma=2.5", "--set", "kappa=-1", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["entries"][0]["params"]["gamma"] == 2.5
        assert payload["entries"][0]["passed"]

    def test_verify_rejects_bad_params(self, capsys, clean_seed_env):
        code, _, err = run(capsys, "catalog", "verify", "--id", "T1.J1",
                           "--set", "gamma=1")
        assert code == 1
        assert "stay away" in err
        code, _, err = run(capsys, "catalog", "verify", "--id", "T1.J1",
                           "--set", "gamma")
        assert code == 1
        assert "NAME=VALUE" in err

    def test_verify_unknown_id(self, capsys, clean_seed_env):
        code, _, err = run(capsys, "catalog", "verify", "--id", "T9.zz")
        assert code == 1
        assert "unknown catalog entry" in err

    def test_verify_tight_tolerance_fails_with_witness(self, capsys,
                                                       clean_seed_env):
        code, out, _ = run(capsys, "catalog", "verify", "--id", "T3.S2",
                           "--tol", "1e-18")
        assert code == 2
        assert "FAIL" in out and "witness:" in out

    def test_verify_all(self, capsys, clean_seed_env):
        code, out, _ = run(capsys, "catalog", "verify", "--all", "--json")
        assert code == 3  # one quarantined row, nothing genuinely failing
        payload = json.loads(out)
        assert payload["summary"] == {"pass": 33, "fail": 0, "quarantined": 1}
        assert len(payload["entries"]) == 34

    def test_selection_usage_errors(self, capsys):
        code, _, err = run(capsys, "catalog", "verify")
        assert code == 1
        assert "exactly one" in err
        code, _, err = run(capsys, "catalog", "verify", "--all",
                           "--id", "T1.J1")
        assert code == 1
        code, _, err = run(capsys, "catalog", "verify", "--all",
                           "--set", "gamma=2")
        assert code == 1
        assert "--set" in err


class TestHarness:
    def test_no_arguments_is_usage_error(self, capsys):
        assert run(capsys, )[0] == 1

    def test_unknown_subcommand(self, capsys):
        assert run(capsys, "frobnicate")[0] == 1

    def test_help_exits_zero(self, capsys):
        assert run(capsys, "--help")[0] == 0

    def test_timings_opt_in(self, capsys):
        code, out, _ = run(capsys, "commutator", "4", "7", "--timings")
        assert code == 0
        assert "(took" in out
        code, out, _ = run(capsys, "commutator", "4", "7", "--json",
                           "--timings")
        assert "timings" in json.loads(out)

    @pytest.mark.skipif(shutil.which("liesym") is None,
                        reason="console script not on PATH")
    def test_console_script(self):
        proc = subprocess.run(["liesym", "commutator", "4", "7"],
                              capture_output=True, text=True)
        assert proc.returncode == 0
        assert "[X4, X7] = X3" in proc.stdout
