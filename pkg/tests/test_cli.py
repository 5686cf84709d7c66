import json

import pytest

from nonstd.classify import loads_report
from nonstd.cli import main, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_survey_q2_is_empty(capsys):
    code, out, _ = run(capsys, "survey", "--q", "2", "--m", "2")
    header, records = loads_report(out)
    assert code == 0 and records == [] and header["command"] == "survey"
    assert header["seed"] == 0 and "version" in header


def test_survey_is_deterministic_across_workers(capsys):
    _, a, _ = run(capsys, "survey", "--q", "13", "--workers", "1")
    _, b, _ = run(capsys, "survey", "--q", "13", "--workers", "3")
    _, c, _ = run(capsys, "survey", "--q", "13", "--workers", "1")
    assert a == b == c


def test_document_format(capsys):
    code, out, _ = run(capsys, "survey", "--q", "5", "--document")
    doc = json.loads(out)
    assert code == 0 and doc["format"] == "nonstd-report" and len(doc["records"]) == 2


def test_verify_nod3(capsys):
    code, out, _ = run(capsys, "verify", "--claim", "nod3", "--range", "q<=64")
    _, recs = loads_report(out)
    assert code == 0 and recs[0]["counterexamples"] == [] and recs[0]["checked"] > 0


def test_verify_other_claims_small(capsys):
    for claim, rng in [("d4", "q<=27"), ("d5", "q<=16"), ("trp", "q<=5"), ("tqord", "q<=5"), ("cqpol", "n<=7")]:
        code, out, _ = run(capsys, "verify", "--claim", claim, "--range", rng)
        assert code == 0, (claim, out)


def test_golay_binary(capsys):
    code, out, _ = run(capsys, "golay", "--binary")
    _, (rec,) = loads_report(out)
    assert code == 0 and rec["min_distance"] == 7 and rec["perfect"] and rec["extra_automorphism"]
    assert (rec["witness"]["m"], rec["witness"]["d"]) == (11, 23)


def test_classify_and_transports(capsys):
    code, out, _ = run(capsys, "classify", "--q", "27", "--order", "104")
    _, (rec,) = loads_report(out)
    assert code == 0 and rec["label"] == "type_II(q0=3,t=3,k=13)"
    code, out, _ = run(capsys, "lift", "--q0", "3", "--t", "3")
    _, (rec,) = loads_report(out)
    assert code == 0 and rec["lifted"]["q"] == 27 and rec["lifted"]["d"] == 4
    code, out, _ = run(capsys, "extend", "--q", "27", "--order", "8", "--target-order", "104")
    _, (rec,) = loads_report(out)
    assert code == 0 and rec["extended"]["n"] == 104 and rec["extended"]["d"] == 4
    code, out, _ = run(capsys, "transport", "--count", "5", "--seed", "7")
    header, (rec,) = loads_report(out)
    assert code == 0 and header["seed"] == 7 and rec["ok"]


def test_code_file(tmp_path, capsys):
    f = tmp_path / "codes.txt"
    f.write_text("# comment\n7 2 zeros=1\n7 2 zeros=1 perm=[0,2,1,3,4,5,6]\n")
    code, out, _ = run(capsys, "code", "--file", str(f), "--find-extra")
    _, recs = loads_report(out)
    assert code == 2  # the second line names a non-automorphism
    assert recs[0]["dim"] == 4 and recs[0]["min_distance"] == 3 and recs[0]["extra_automorphism"]
    assert recs[1]["perm_is_automorphism"] is False


def test_usage_and_budget_errors(capsys):
    assert run(capsys, "survey", "--q", "6")[0] == 1
    assert run(capsys, "classify", "--q", "3", "--order", "13")[0] == 1
    code, out, _ = run(capsys, "survey", "--q", "32", "--budget", "10")
    assert code == 1 and "search budget" in out
    with pytest.raises(SystemExit) as exc:
        main(["survey", "--bogus"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["golay"])
    assert exc.value.code == 1
    assert run(capsys, "code", "--n", "7")[0] == 1


def test_timing_flag(capsys):
    _, out, _ = run(capsys, "survey", "--q", "3", "--timing")
    header, _ = loads_report(out)
    assert "seconds" in header
    _, out, _ = run(capsys, "survey", "--q", "3")
    assert "seconds" not in loads_report(out)[0]


def test_parse_range():
    assert parse_range("q<=64") == 64 and parse_range("n <= 8") == 8 and parse_range("9") == 9
