"""CLI and serialization: round-trips, exit codes, determinism."""

import json
from importlib import resources

from towerdiff import jsonio
from towerdiff.cli import main
from towerdiff.ff import FieldSpec

F3 = FieldSpec(3)


def fixture_path(name):
    return str(resources.files("towerdiff") / "fixtures" / f"{name}.json")


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_descriptor_round_trip(fixtures):
    for name, d in fixtures.items():
        doc = jsonio.descriptor_to_json(d)
        again = jsonio.descriptor_from_json(json.loads(json.dumps(doc)))
        assert jsonio.descriptor_to_json(again) == doc, name


def test_element_serialization_prime_vs_extension():
    F9 = FieldSpec(3, 2, [1, 0, 1])
    assert jsonio.element_to_json(F3.element(2)) == 2
    assert jsonio.element_to_json(F9.element([1, 2])) == [1, 2]
    assert jsonio.place_to_json(jsonio.place_from_json(F3, "infinity")) == "infinity"


def test_cli_genus(capsys):
    code, out = run(capsys, "genus", "--input", fixture_path("artin_mumford_p3"))
    assert code == 0
    assert json.loads(out) == {"genus": 4, "stepwise": [4]}


def test_cli_basis_check(capsys):
    code, out = run(capsys, "basis", "--check", "--input", fixture_path("mixed_tower_f3"))
    assert code == 0
    doc = json.loads(out)
    assert len(doc) == 2
    assert all(rec["check"] for rec in doc)


def test_cli_validate_failure_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(
        json.dumps(
            {
                "field": {"p": 5, "h": 1},
                "steps": [{"kind": "kummer", "n": 4, "c": [0, 0, 1, 3, 1]}],
            }
        )
    )
    code, out = run(capsys, "validate", "--input", str(bad))
    assert code == 1
    doc = json.loads(out)
    failed = [c["name"] for c in doc["checks"] if not c["passed"]]
    assert failed == ["kummer_primitive"]


def test_cli_parse_error(capsys, tmp_path):
    f = tmp_path / "junk.json"
    f.write_text("{nope")
    code, out = run(capsys, "genus", "--input", str(f))
    assert code == 1
    doc = json.loads(out)
    assert doc["error"] == "parse_error"
    assert "line" in doc["detail"]


def test_cli_decompose(capsys):
    code, out = run(capsys, "decompose", "--input", fixture_path("as_genus2_f3"))
    assert code == 0
    doc = json.loads(out)
    assert doc["modules"] == [
        {"dim": 2, "mu_p": 2, "mu_tame": [], "multiplicity": 1}
    ]
    assert doc["nilpotency"] is True


def test_cli_act(capsys):
    code, out = run(capsys, "act", "--element", "1", "--input", fixture_path("as_genus2_f3"))
    assert code == 0
    assert json.loads(out) == {"matrix": [[1, 1], [0, 1]]}


def test_cli_standardform(capsys, tmp_path):
    f = tmp_path / "sf.json"
    f.write_text(
        json.dumps(
            {
                "field": {"p": 3, "h": 1},
                "steps": [
                    {"kind": "artin_schreier", "c": {"num": [1, 0, 1], "den": [0, 0, 0, 1]}}
                ],
            }
        )
    )
    code, out = run(capsys, "standardform", "--input", str(f))
    assert code == 0
    doc = json.loads(out)
    assert doc["chain"] == [{"kind": "shift", "w": {"den": [0, 1], "num": [1]}}]
    assert doc["step"]["c"] == [{"den": [0, 1], "exps": [], "num": [2]}]


def test_cli_deterministic_output(capsys):
    _, first = run(capsys, "basis", "--input", fixture_path("hermitian_p3"))
    _, second = run(capsys, "basis", "--input", fixture_path("hermitian_p3"))
    assert first == second


def test_cli_emitted_basis_reparses(capsys, fixtures):
    code, out = run(capsys, "basis", "--input", fixture_path("mixed_tower_f3"))
    assert code == 0
    d = fixtures["mixed_tower_f3"]
    basis = jsonio.basis_from_json(d.field, json.loads(out))
    assert jsonio.basis_to_json(basis) == json.loads(out)
