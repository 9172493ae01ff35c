import io
import json
import subprocess
import sys

import pytest

from kostant.cli import EXIT_INTERNAL, EXIT_OK, EXIT_USAGE, run


def call(*argv, cache=None):
    out, err = io.StringIO(), io.StringIO()
    extra = ["--cache-dir", str(cache)] if cache else ["--no-cache"]
    code = run(list(argv) + extra, out=out, err=err)
    return code, out.getvalue().strip(), err.getvalue()


def test_tensor():
    code, out, _ = call("tensor", "--family", "A", "--rank", "2", "--lambda", "1,0,-1", "--mu", "1,0,-1", "--nu", "1,0,-1")
    assert (code, out) == (EXIT_OK, "2")


def test_mult_funda_basis():
    code, out, _ = call("mult", "--family", "B", "--rank", "2", "--lambda", "2,0", "--mu", "0,0")
    assert (code, out) == (EXIT_OK, "2")


def test_mult_poly_stretch():
    code, out, _ = call("mult-poly", "--family", "A", "--rank", "2", "--lambda", "2,1,0", "--mu", "1,1,1", "--stretch", "t")
    assert code == EXIT_OK
    assert "t" in out


def test_chambers():
    assert call("chambers", "--family", "B", "--rank", "3")[:2] == (EXIT_OK, "23")
    assert call("chambers", "--family", "A", "--rank", "3")[:2] == (EXIT_OK, "7")


def test_convert():
    code, out, _ = call("convert", "--family", "B", "--rank", "3", "--weight", "0,15,5")
    assert (code, out) == (EXIT_OK, "35/2,35/2,5/2")
    code, out, _ = call("convert", "--family", "B", "--rank", "3", "--basis", "cano", "--weight", "35/2,35/2,5/2")
    assert (code, out) == (EXIT_OK, "0,15,5")


def test_kpf_and_oracle():
    a = call("kpf", "--family", "B", "--rank", "3", "--weight", "3,2,1")
    b = call("kpf", "--family", "B", "--rank", "3", "--weight", "3,2,1", "--oracle")
    assert a[0] == b[0] == EXIT_OK and a[1] == b[1]


def test_usage_errors():
    assert call("mult", "--family", "E", "--rank", "6", "--lambda", "0", "--mu", "0")[0] == EXIT_USAGE
    assert call("mult", "--family", "A", "--rank", "2", "--lambda", "0,1,0", "--mu", "0,0,0")[0] == EXIT_USAGE
    assert call("mult", "--family", "A", "--rank", "2", "--lambda", "1,x,0", "--mu", "0,0,0")[0] == EXIT_USAGE
    assert call("kpf", "--family", "A", "--rank", "2", "--weight", "1,0")[0] == EXIT_USAGE
    assert call("frobnicate")[0] == EXIT_USAGE
    code, _, err = call("chambers", "--family", "A", "--rank", "5")
    assert code == EXIT_USAGE and err.startswith("error:")


def test_internal_error_exit_code(monkeypatch):
    from kostant import cli
    from kostant.errors import InternalError

    def boom(*a, **k):
        raise InternalError("broken")

    monkeypatch.setattr(cli, "weight_multiplicity", boom)
    code, _, err = call("mult", "--family", "A", "--rank", "1", "--lambda", "1,0", "--mu", "1,0")
    assert code == EXIT_INTERNAL and "broken" in err


def test_json_agrees_with_text():
    args = ["tensor", "--family", "C", "--rank", "2", "--lambda", "1,1", "--mu", "1,0", "--nu", "1,1"]
    _, text, _ = call(*args)
    _, raw, _ = call(*args, "--output", "json")
    payload = json.loads(raw)
    assert payload["value"] == text
    assert payload["query"]["family"] == "C"


def test_json_quasipolynomial():
    _, raw, _ = call("kpf-poly", "--family", "B", "--rank", "2", "--weight", "2,1", "--output", "json")
    payload = json.loads(raw)
    _, value, _ = call("kpf", "--family", "B", "--rank", "2", "--weight", "2,1")
    assert payload["base_point_check"] == value


def test_warm_cache_output_identical(tmp_path):
    from kostant import nested

    args = ["mult-poly", "--family", "B", "--rank", "3", "--lambda", "2,1,0", "--mu", "1,0,0"]
    nested._MPNS_MEMO.clear()
    cold = call(*args, cache=tmp_path)
    assert list(tmp_path.iterdir())
    nested._MPNS_MEMO.clear()
    warm = call(*args, cache=tmp_path)
    assert cold == warm and cold[0] == EXIT_OK


def test_stats_go_to_stderr(capsys):
    code, out, _ = call("kpf", "--family", "A", "--rank", "2", "--weight", "2,0,-2", "--stats")
    assert (code, out) == (EXIT_OK, "3")
    assert capsys.readouterr().err.startswith("time")


def test_selftest():
    code, out, _ = call("selftest", "--family", "C", "--rank", "2")
    assert code == EXIT_OK and out.endswith("ok")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "kostant", "chambers", "--family", "A", "--rank", "2", "--no-cache"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "2"
