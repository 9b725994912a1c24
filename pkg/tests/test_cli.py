import io
import json
import subprocess
import sys

import jsonschema
import pytest
from referencing import Registry, Resource

from nanophrases import load_schema
from nanophrases.cli import run

NAMES = ("move", "signature", "label", "verdict", "reduce", "atlas")
REGISTRY = Registry().with_resources(
    (f"{n}.json", Resource.from_contents(load_schema(n))) for n in NAMES
)


def check(name, obj):
    jsonschema.Draft202012Validator(load_schema(name), registry=REGISTRY).validate(obj)


def cli(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_equiv_example():
    code, out = cli("equiv", "ABAB ; A=a B=b", "", "--alphabet", "ab-swap")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "Equivalent"
    assert len(lines) > 1 and all(json.loads(line)["kind"] for line in lines[1:])


def test_equiv_distinct_and_inconclusive():
    code, out = cli("equiv", "A|A ; A=a", "0|0")
    assert code == 0 and out.splitlines()[0] == "Distinct"
    code, out = cli("equiv", "ABAB ; A=a B=b", "", "--max-extra-letters", "2")
    assert code == 2 and out.splitlines()[0] == "Inconclusive"


def test_classify_example():
    assert cli("classify", "A|BAB ; A=a B=b") == (0, "P13;p=1,q=2;a=a,b=b\n")


def test_classify_out_of_scope_is_input_error(capsys):
    code, _ = cli("classify", "ABC|ABC ; A=a B=a C=a")
    assert code == 1 and "at most 4" in capsys.readouterr().err


def test_validate():
    assert cli("validate", "AB|AB ; A=a B=b") == (0, "valid\n")
    assert cli("validate", "AB|A ; A=a B=b") == (1, "invalid: letter B occurs 1 time(s)\n")


def test_input_errors(capsys):
    assert cli("canon", "Ab")[0] == 1
    assert "column 2" in capsys.readouterr().err
    assert cli("canon", "AA ; A=a", "--alphabet", "/nonexistent")[0] == 1
    with pytest.raises(SystemExit) as err:
        cli("frobnicate")
    assert err.value.code == 1


def test_canon_and_files(tmp_path):
    f = tmp_path / "p.txt"
    f.write_text("BA|AB ; B=b A=a\n")
    assert cli("canon", str(f)) == (0, "AB|BA ; A=b B=a\n")
    code, out = cli("canon", str(f), "--json")
    assert json.loads(out) == {"shape": [1, 2, 0, 2, 1], "projections": ["b", "a"]}


def test_alphabet_file(tmp_path):
    f = tmp_path / "alpha.txt"
    f.write_text("x y\ny x\nc c\n")
    code, out = cli("invariants", "ABAB ; A=x B=c", "--alphabet", str(f), "--json")
    assert code == 0
    sig = json.loads(out)
    check("signature", sig)
    assert sig["t"] == [{"(1,2)": 1, "(2,1)": 1}]


def test_invariants_text():
    code, out = cli("invariants", "ABA|B ; A=a B=b")
    assert code == 0
    assert out.splitlines() == [
        "parities: 1 1",
        "gamma:    z1^-1 | z1",
        'T:        {"(1,1)": -1} | {}',
        "pairing:  (1,2)=[-1]",
    ]


def test_json_outputs_validate():
    check("verdict", json.loads(cli("equiv", "ABAB ; A=a B=b", "", "--json")[1]))
    check("verdict", json.loads(cli("equiv", "A|A ; A=a", "0|0", "--json")[1]))
    check("label", json.loads(cli("classify", "AB|A|B ; A=a B=b", "--json")[1]))
    check("reduce", json.loads(cli("reduce", "BAAB ; A=a B=a", "--json")[1]))
    check("signature", json.loads(cli("invariants", "AB|BA|0 ; A=a B=a", "--json")[1]))


def test_reduce_text():
    code, out = cli("reduce", "BAAB ; A=a B=a")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "0" and len(lines) == 3


def test_encode_curve(tmp_path):
    f = tmp_path / "curve.txt"
    f.write_text("1,2\n2,1\nsigns: 1=+,2=-\n")
    assert cli("encode-curve", str(f)) == (0, "AB|BA ; A=a B=b\n")
    assert cli("encode-curve", str(f), "--irreducible") == (0, "AB|BA ; A=a B=b\nreducible\n")
    assert cli("encode-curve", "1\n1\nsigns: 1=+", "--irreducible", "--json") == (
        0,
        '{"irreducible": "irreducible", "phrase": "A|A ; A=a"}\n',
    )


def test_output_is_deterministic():
    args = ("equiv", "AB|C|CBA ; A=a B=b C=a", "AB|A|B ; A=a B=a")
    assert cli(*args) == cli(*args)


def test_atlas_json():
    code, out = cli("atlas", "--json")
    data = json.loads(out)
    check("atlas", data)
    assert code == 0 and len(data) == 52


def test_console_script_atlas():
    proc = subprocess.run(
        [sys.executable, "-m", "nanophrases.cli", "atlas"], capture_output=True, text=True, check=True
    )
    lines = proc.stdout.splitlines()
    assert len(lines) == 1 + 52 + 1
    assert lines[-1] == "2 2 8 4 24 12 total=52"
