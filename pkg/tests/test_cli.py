import json

import pytest
from hypothesis import given, strategies as st

from peterson_schubert.cli import OutputRecord, main


def run(capsys, *argv):
    status = main(list(argv))
    return status, capsys.readouterr().out.strip()


@pytest.mark.parametrize("argv, expected", [
    (["constant", "--a", "1,2", "--b", "2-4", "--c", "1-4", "--n", "5"], "12*t^1"),
    (["constant", "--a", "1,2,4,5", "--b", "2-4", "--c", "1-6", "--n", "7"], "280*t^1"),
    (["constant", "--a", "1", "--b", "", "--c", "1", "--n", "3"], "1"),
    (["restrict", "--a", "2,3", "--c", "1-6", "--n", "7"], "60*t^2"),
    (["restrict", "--a", "1,3", "--c", "1,2", "--n", "4"], "0"),
    (["restrict", "--a", "2-4", "--c", "2-4", "--n", "5"], "6*t^3"),
])
def test_single_values(capsys, argv, expected):
    assert run(capsys, *argv) == (0, expected)


def records(text):
    return [OutputRecord.from_json(line) for line in text.splitlines()]


def test_expand_json(capsys):
    status, out = run(capsys, "expand", "--a", "1", "--b", "1", "--n", "3", "--json")
    assert status == 0
    assert [(r.C, r.coeff, r.t_power) for r in records(out)] == [([1], "1", 1), ([1, 2], "1", 0)]


def test_expand_unit(capsys):
    _, out = run(capsys, "expand", "--a", "", "--b", "2", "--n", "4", "--json")
    assert [(r.C, r.coeff) for r in records(out)] == [([2], "1")]


def test_expand_ordinary(capsys):
    _, out = run(capsys, "expand", "--a", "1,2", "--b", "2-4", "--n", "6", "--ordinary", "--json")
    rows = {tuple(r.C): r.coeff for r in records(out)}
    assert rows[(1, 2, 3, 4, 5)] == "4"
    assert all(len(C) == 5 for C in rows)


def test_expand_rows_sorted(capsys):
    _, out = run(capsys, "expand", "--a", "2,3", "--b", "2,3", "--n", "6", "--json")
    keys = [(len(r.C), sum(1 << i for i in r.C)) for r in records(out)]
    assert keys == sorted(keys) and len(keys) > 2


def test_csv_and_latex(capsys):
    _, out = run(capsys, "expand", "--a", "1", "--b", "1,2", "--n", "4", "--csv")
    assert out.splitlines()[0] == "A,B,C,coeff,t_power,n"
    assert '"1,2"' in out
    _, out = run(capsys, "expand", "--a", "1", "--b", "1,2", "--n", "4", "--latex")
    assert out.startswith(r"\begin{tabular}") and "$2t$" in out


@given(st.lists(st.integers(1, 9), unique=True), st.lists(st.integers(1, 9), unique=True),
       st.lists(st.integers(1, 9), unique=True), st.integers(0, 10 ** 40), st.integers(0, 20),
       st.integers(2, 64))
def test_record_json_round_trip(A, B, C, coeff, power, n):
    rec = OutputRecord(sorted(A), sorted(B), sorted(C), str(coeff), power, n)
    assert OutputRecord.from_json(rec.to_json()) == rec


@pytest.mark.parametrize("argv", [
    ["constant", "--a", "9", "--b", "1", "--c", "1", "--n", "5"],
    ["constant", "--a", "x", "--b", "1", "--c", "1", "--n", "5"],
    ["restrict", "--a", "3-1", "--c", "1", "--n", "5"],
])
def test_parse_errors_exit_nonzero(capsys, argv):
    assert main(argv) != 0


def test_identity_constraint_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["identity", "--m", "0", "--n", "0", "--w", "1", "--x", "0", "--y", "0", "--z", "0"])
    assert exc.value.code == 2


def test_identity_outputs(capsys):
    status, out = run(capsys, "identity", "--m", "1", "--n", "0", "--w", "1", "--x", "1", "--y", "1", "--z", "1")
    assert status == 0 and "lhs=4 rhs=4" in out
    status, out = run(capsys, "identity", "--m", "0", "--n", "0", "--w", "0", "--x", "0", "--y", "0", "--z", "0")
    assert "lhs=1 rhs=1" in out
    status, out = run(capsys, "identity", "--m", "2", "--n", "1", "--w", "3", "--x", "2", "--y", "3", "--z", "2",
                      "--bijection")
    assert status == 0 and "bijection: valid" in out
    status, out = run(capsys, "identity", "--m", "1", "--n", "1", "--w", "1", "--x", "0", "--y", "1", "--z", "0",
                      "--json", "--trace")
    cert = json.loads(out)
    assert cert["ok"] and len(cert["pairs"]) == 4


def test_verify_modes(capsys):
    status, out = run(capsys, "verify", "--max-n", "5", "--mode", "formula")
    assert status == 0 and out.startswith("checked 340 pairs, 0 mismatches")
    status, out = run(capsys, "verify", "--max-n", "3", "--mode", "oracle")
    assert status == 0 and "0 mismatches" in out
    status, out = run(capsys, "verify", "--mode", "identity", "--grid-m", "2", "--grid-n", "2", "--grid-max", "4")
    assert status == 0 and "0 mismatches" in out


def test_verify_reports_counterexamples(capsys, monkeypatch):
    from peterson_schubert import verify
    from peterson_schubert.monomial import TMonomial

    monkeypatch.setattr(verify, "b_general_bits", lambda a, b, c: TMonomial(1, 0))
    status, out = run(capsys, "verify", "--max-n", "3", "--mode", "formula")
    assert status == 1
    assert out.count("counterexample:") == 10


def test_cache_snapshot(tmp_path, capsys):
    path = tmp_path / "memo.json"
    assert main(["--cache", str(path), "constant", "--a", "1,2", "--b", "2-4", "--c", "1-4", "--n", "5"]) == 0
    data = json.loads(path.read_text())
    assert data["format"] == "peterson-schubert-memo" and data["version"] == 1 and data["entries"]
    assert main(["--cache", str(path), "constant", "--a", "1,2", "--b", "2-4", "--c", "1-4", "--n", "5"]) == 0
    path.write_text(json.dumps({"format": "other", "version": 9}))
    assert main(["--cache", str(path), "constant", "--a", "1", "--b", "1", "--c", "1", "--n", "3"]) == 2


def test_worker_pool_matches_serial(monkeypatch):
    from peterson_schubert.verify import verify_formula, worker_count

    monkeypatch.setenv("PETERSON_WORKERS", "2")
    assert worker_count() == 2
    pooled = verify_formula(4)
    assert pooled.ok and pooled.checked == verify_formula(4, workers=1).checked == 4 + 16 + 64
    monkeypatch.setenv("PETERSON_WORKERS", "lots")
    assert worker_count() == 1
