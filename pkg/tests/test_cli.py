from __future__ import annotations

import json

from click.testing import CliRunner

from stormerkit.cli import cli


def run(*args: str):
    return CliRunner().invoke(cli, args)


def test_stormer_of_prime_text() -> None:
    result = run("stormer", "of-prime", "13")
    assert result.exit_code == 0
    assert result.output.strip() == "S(13) = 5"


def test_stormer_of_prime_domain_error() -> None:
    assert run("stormer", "of-prime", "7").exit_code == 3
    assert run("stormer", "of-prime", "21").exit_code == 3


def test_stormer_of_prime_usage_error() -> None:
    assert run("stormer", "of-prime", "xyz").exit_code == 2


def test_stormer_check_text_and_json() -> None:
    result = run("stormer", "check", "3")
    assert result.exit_code == 0
    assert "not a Stormer number" in result.output
    assert "5" in result.output

    result = run("stormer", "check", "15", "--format", "json")
    payload = json.loads(result.output)
    assert payload == {
        "convention": "strict",
        "is_stormer": True,
        "largest_prime_factor": 113,
        "witness_prime": 113,
        "x0": 15,
    }


def test_stormer_check_convention_flag() -> None:
    strict = json.loads(run("stormer", "check", "1", "--format", "json").output)
    assert strict["is_stormer"] is False
    inclusive = json.loads(
        run("stormer", "check", "1", "--convention", "inclusive", "--format", "json").output
    )
    assert inclusive["is_stormer"] is True


def test_stormer_list() -> None:
    result = run("stormer", "list", "--limit", "16")
    assert result.output.strip() == "1 2 4 5 6 9 10 11 12 14 15 16"
    result = run("stormer", "list", "--limit", "1", "--convention", "strict")
    assert result.output.strip() == ""
    payload = json.loads(run("stormer", "list", "--limit", "16", "--format", "json").output)
    assert payload["values"] == [1, 2, 4, 5, 6, 9, 10, 11, 12, 14, 15, 16]


def test_twosquares_command() -> None:
    result = run("twosquares", "13")
    assert result.exit_code == 0
    assert "13 = 3^2 + 2^2" in result.output
    assert "[2,1,1,2]" in result.output

    payload = json.loads(run("twosquares", "5", "--format", "json").output)
    assert payload == {"a": 2, "b": 1, "p": 5, "palindrome": [2, 2], "x0": 2}

    assert run("twosquares", "7").exit_code == 3


def test_density_default_and_measures() -> None:
    result = run("density", "--limits", "100,1000")
    lines = result.output.strip().splitlines()
    assert lines[0] == "limit,count,ratio,ln2_gap"
    assert lines[1].startswith("100,70,")
    assert lines[2].startswith("1000,720,")

    result = run("density", "--limits", "100", "--measure", "large-factor")
    assert result.output.strip().splitlines()[1].startswith("100,86,0.86")

    result = run("density", "--limits", "1000", "--measure", "strict")
    assert result.output.strip().splitlines()[1].startswith("1000,719,0.719")


def test_density_json() -> None:
    payload = json.loads(run("density", "--limits", "100,200", "--format", "json").output)
    assert payload["measure"] == "inclusive"
    assert [row["limit"] for row in payload["rows"]] == [100, 200]
    assert payload["rows"][0]["count"] == 70


def test_density_usage_errors() -> None:
    assert run("density", "--limits", "").exit_code == 2
    assert run("density", "--limits", "10,5").exit_code == 2
    assert run("density", "--limits", "a,b").exit_code == 2


def test_gregory_decompose() -> None:
    result = run("gregory", "decompose", "70")
    assert result.output.strip() == "t70 = -t2 + 2*t5 + t12"
    payload = json.loads(run("gregory", "decompose", "70", "--format", "json").output)
    assert payload["n"] == 70
    assert {"re": 5, "im": 1, "coef": 2} in payload["terms"]
    assert run("gregory", "decompose", "0").exit_code == 3


def test_gregory_verify() -> None:
    result = run("gregory", "verify", "t1 = 4*t5 - t239")
    assert result.output.startswith("true")
    assert "certificate" in result.output

    result = run("gregory", "verify", "t1 = 4*t5 + t239")
    assert result.output.startswith("false")

    assert run("gregory", "verify", "nonsense").exit_code == 2


def test_pi_command() -> None:
    result = run("pi", "--formula", "machin", "--digits", "30")
    assert result.output.strip().startswith("3.141592653589793238462643383279")

    as_string = run("pi", "--formula", "t1 = 4*t5 - t239", "--digits", "30")
    assert as_string.output == result.output

    payload = json.loads(run("pi", "--formula", "vega", "--digits", "25", "--format", "json").output)
    assert payload["digits"].startswith("3.14159265358979323846")
    assert len(payload["terms_used"]) == 2


def test_pi_max_terms_reports_tail_estimate() -> None:
    result = run("pi", "--formula", "machin", "--digits", "140", "--max-terms", "100")
    assert result.exit_code == 0
    lines = result.output.strip().splitlines()
    assert lines[0].startswith("3.14159265358979")
    assert "correct digits" in lines[1]
    assert int(lines[1].rsplit(" ", 1)[1]) >= 140


def test_pi_rejects_unverified_formula() -> None:
    assert run("pi", "--formula", "t1 = 4*t5 + t239", "--digits", "20").exit_code == 3
    assert run("pi", "--formula", "t5 = t5", "--digits", "20").exit_code == 3
    assert run("pi", "--formula", "gibberish", "--digits", "20").exit_code == 2


def test_outputs_are_deterministic() -> None:
    first = run("gregory", "decompose", "239").output
    second = run("gregory", "decompose", "239").output
    assert first == second
    assert run("pi", "--digits", "200").output == run("pi", "--digits", "200").output


def test_out_option_writes_file(tmp_path) -> None:
    target = tmp_path / "digits.txt"
    result = CliRunner().invoke(cli, ["pi", "--digits", "15", "--out", str(target)])
    assert result.exit_code == 0
    assert target.read_text().strip().startswith("3.14159265358979")
