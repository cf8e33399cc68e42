import json
import subprocess
import sys

import pytest

from cuequiv.cli import main


@pytest.fixture
def pair(tmp_path):
    paths = {}
    for kind in ("base", "equivalent", "error", "independent"):
        paths[kind] = tmp_path / f"{kind}.qasm"
        assert main(["gen", "--kind", kind, "--n", "3", "--m", "4", "--seed", "7", "--out", str(paths[kind])]) == 0
    return paths


class TestCheck:
    def test_equivalent(self, pair, tmp_path, capsys):
        report = tmp_path / "r.json"
        assert main(["check", str(pair["base"]), str(pair["equivalent"]), "--json", str(report)]) == 0
        assert "EquivalentAllParams" in capsys.readouterr().out
        data = json.loads(report.read_text())
        assert data["verdict"]["outcome"] == "EquivalentAllParams"
        assert {"python", "numpy"} <= set(data["environment"])

    def test_error(self, pair):
        assert main(["check", str(pair["base"]), str(pair["error"])]) == 1

    def test_independent(self, pair):
        assert main(["check", str(pair["base"]), str(pair["independent"])]) == 1

    def test_inconclusive(self, tmp_path):
        a, b = tmp_path / "a.qasm", tmp_path / "b.qasm"
        a.write_text("qreg q[1]; t q[0]; h q[0];")
        b.write_text("qreg q[1]; t q[0];")
        assert main(["check", str(a), str(b), "--mode", "fixed"]) == 2

    def test_permutation_file(self, tmp_path):
        a, b, perm = tmp_path / "a.qasm", tmp_path / "b.qasm", tmp_path / "p.txt"
        a.write_text("qreg q[2]; rz(x) q[0]; ry(y) q[1];")
        b.write_text("qreg q[2]; ry(y) q[1]; rz(x) q[0];")
        perm.write_text("2 -> 1\n1 -> 2\n")
        assert main(["check", str(a), str(b)]) == 1
        assert main(["check", str(a), str(b), "--perm", str(perm)]) == 0

    def test_parse_error_exit(self, tmp_path, capsys):
        a = tmp_path / "a.qasm"
        a.write_text("qreg q[1]; t q[0];")
        assert main(["check", str(a), str(a)]) == 3
        assert "unsupported gate t" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert main(["check", str(tmp_path / "nope.qasm"), str(tmp_path / "nope.qasm")]) == 3

    def test_usage_error(self):
        with pytest.raises(SystemExit) as info:
            main(["check"])
        assert info.value.code == 3


class TestOther:
    def test_oracle(self, pair):
        assert main(["oracle", "check", str(pair["base"]), str(pair["equivalent"]), "--angles", "3"]) == 0
        assert main(["oracle", "check", str(pair["base"]), str(pair["error"]), "--angles", "3"]) == 1

    def test_gen_stdout(self, capsys):
        assert main(["gen", "--n", "2", "--m", "1", "--seed", "1"]) == 0
        assert "param_u1" in capsys.readouterr().out

    def test_bench(self, tmp_path):
        spec = tmp_path / "s.json"
        spec.write_text(json.dumps({"reps": 5, "sweeps": [{"name": "m", "n": 4, "m": [2, 4, 8], "depth": 2}]}))
        out = tmp_path / "r.json"
        assert main(["bench", "--sweep", str(spec), "--report", str(out)]) == 0
        data = json.loads(out.read_text())
        assert len(data["records"]) == 3 and "m" in data["slopes"]

    def test_empty_bench(self, tmp_path):
        spec = tmp_path / "s.json"
        spec.write_text('{"sweeps": []}')
        out = tmp_path / "r.json"
        assert main(["bench", "--sweep", str(spec), "--report", str(out)]) == 0
        assert json.loads(out.read_text())["records"] == []

    def test_module_entry_point(self):
        done = subprocess.run([sys.executable, "-m", "cuequiv", "--help"], capture_output=True, text=True)
        assert done.returncode == 0 and "check" in done.stdout
