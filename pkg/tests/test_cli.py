import json
import os
import random
import shutil
import subprocess
import sys
from importlib import resources

import pytest

from coact import f2poly as fp
from coact import presets as pr
from coact import steenrod as st
from coact.cli import parser as ps
from coact.cli.main import main
from conftest import P


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def random_element(rnd, basis_fn, dmax):
    out = set()
    for _ in range(rnd.randint(0, 4)):
        b = basis_fn(rnd.randint(0, dmax))
        if b:
            out ^= {rnd.choice(b)}
    return frozenset(out)


@pytest.mark.parametrize("name", ["A", "Mj1", "Mj2", "Mjc"])
def test_round_trip(name):
    rnd = random.Random(sum(map(ord, name)))
    basis_fn = st.basis if name == "A" else pr.build(name).basis
    for _ in range(200):
        e = random_element(rnd, basis_fn, 14)
        text = ps.print_element(e)
        assert ps.parse(text) == e
        assert ps.print_element(ps.parse(text)) == text


def test_round_trip_tensors():
    rnd = random.Random(9)
    M = pr.build("Mj1")
    for _ in range(200):
        a = random_element(rnd, st.basis, 8)
        b = random_element(rnd, M.basis, 8)
        t = fp.tensor(a, b) if a and b else fp.ZERO
        assert ps.parse_tensor(fp.tensor_str(t)) == t


def test_parse_examples():
    assert P("Q[4](x[3]) + Q[5](x[2])") == pr.X_family(1, 3)
    assert P("X[1,3]") == pr.X_family(1, 3)
    assert P("z1^2*z2") == frozenset([fp.mono((fp.zeta(1), 2), (fp.zeta(2), 1))])
    assert P(" z1 +  z1 ") == fp.ZERO
    assert P("N[3]") == P("z2")
    with pytest.raises(ps.ExprSyntaxError) as exc:
        P("Q[3,")
    assert exc.value.offset == 4


def test_emit_examples(capsys):
    code, out, _ = run(capsys, "emit", "basis", "--preset", "Mj1", "--degree", "6")
    assert code == 0 and out.strip() == "x[2]^3, x[3]^2, Q[4](x[2])"
    code, out, _ = run(capsys, "emit", "poincare", "--preset", "Mj2", "--max-degree", "10")
    assert out.strip() == ", ".join(str(c) for c in pr.build("Mj2").poincare(10))
    code, out, _ = run(capsys, "emit", "coact", "--preset", "Mj1", "Q[4](x[3])+Q[5](x[2])", "--side", "right")
    assert P(out.strip()) == P("(Q[4](x[3]) + Q[5](x[2])) | 1 + x[3]^2 | z1 + x[2]^2 | xi2 + 1 | xi3")
    code, out, _ = run(capsys, "emit", "coact", "--preset", "Mj1", "--side", "right", "Q[4](x[3])+Q[5](x[2])")
    assert code == 0 and P(out.strip()) == P("(Q[4](x[3]) + Q[5](x[2])) | 1 + x[3]^2 | z1 + x[2]^2 | xi2 + 1 | xi3")
    code, out, _ = run(capsys, "emit", "reduce", "--over", "A(1)", "z1^5 + z1^3")
    assert out.strip() == "z1^3"
    code, out, _ = run(capsys, "emit", "coact", "z2")
    assert P(out.strip()) == P("1 | z2 + z1 | z1^2 + z2 | 1")
    code, out, _ = run(capsys, "emit", "coact", "--preset", "Mj1", "--over", "A(0)", "X[1,3]")
    assert P(out.strip()) == P("1 | X[1,3] + z1 | X[1,2]^2")


def test_emit_json(capsys):
    code, out, _ = run(capsys, "emit", "basis", "--preset", "Mj1", "--degree", "5", "--json")
    js = json.loads(out)
    assert js["value"] == ["x[2]*x[3]", "Q[3](x[2])"]


def test_exit_codes(capsys):
    assert run(capsys, "verify", "i3-invariant", "--smax", "6")[0] == 0
    code, out, _ = run(capsys, "verify", "tmf-coaction:as-printed")
    assert code == 1 and "x[15]" in out
    assert run(capsys, "verify", "mj1-extended", "--max-degree", "12")[0] == 0
    code, _, err = run(capsys, "emit", "coact", "Q[3,")
    assert code == 2 and "offset 4" in err
    assert run(capsys, "emit", "basis", "--preset", "nope", "--degree", "2")[0] == 2
    assert run(capsys, "verify", "no-such-target")[0] == 2


def test_reports_echo_caps(capsys):
    code, out, _ = run(capsys, "verify", "i3-invariant", "--smax", "5")
    assert "smax=5" in out
    code, out, _ = run(capsys, "verify", "i3-invariant", "--smax", "5", "--json")
    assert json.loads(out)["caps"]["smax"] == 5


def test_json_reports_validate(capsys):
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads(resources.files("coact").joinpath("data/report.schema.json").read_text())
    for target in ("nishida-mj1", "tmf-coaction:as-printed", "cover-gens"):
        _, out, _ = run(capsys, "verify", target, "--json")
        jsonschema.validate(json.loads(out), schema)


def test_bockstein_command(capsys):
    code, out, _ = run(capsys, "bockstein", "--preset", "Mj1", "--max-degree", "12", "--pages", "4", "--json")
    js = json.loads(out)
    assert code == 0 and js["torsion_free"] == {"0": 1}
    with pytest.raises(SystemExit):
        main(["bockstein", "--max-degree", "20"])


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert "bockstein-mj1" in out and "tmf-skel15" in out


def test_cache_dir(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("COACT_CACHE_DIR", str(tmp_path))
    code1, out1, _ = run(capsys, "verify", "steinberger")
    files = os.listdir(tmp_path)
    assert len(files) == 1 and files[0].endswith(".json")
    code2, out2, _ = run(capsys, "verify", "steinberger")
    assert (code1, out1) == (code2, out2)
    run(capsys, "verify", "steinberger", "--smax", "3")
    assert len(os.listdir(tmp_path)) == 2


def _cli():
    exe = shutil.which("coact")
    return [exe] if exe else [sys.executable, "-m", "coact"]


def test_byte_identical_subprocess():
    argv = _cli() + ["emit", "coact", "--preset", "Mj2", "--over", "A(1)", "X[2,5]", "--json"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "coact", "verify", "tmf-coaction:as-printed"], capture_output=True)
    assert r.returncode == 1
