import io
import json

import numpy as np
import pytest

from trichord.cli import TableSpec, UsageError, build_table, format_table, main


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def test_table_chord_cdf_csv():
    code, text = run(["table", "--fn", "chord_cdf", "--a", "3", "--b", "4", "--grid", "0,5,6"])
    assert code == 0
    lines = text.strip().splitlines()
    assert lines[0].startswith("# function=chord_cdf,a=3.0,b=4.0,c=5.0")
    assert lines[1] == "t,value,branch"
    rows = [r.split(",") for r in lines[2:]]
    assert len(rows) == 6
    assert float(rows[-1][1]) == 1.0 and rows[-1][2] == "ABOVE"


def test_table_normalized_density_scaling():
    code, text = run(["table", "--fn", "distance_pdf", "--a", "1", "--b", "5",
                      "--normalize-c", "--format", "json"])
    assert code == 0
    table = json.loads(text)
    c = table["meta"]["c"]
    assert len(table["t"]) == 20 and table["t"][-1] == 1.0
    from trichord.distance import distance_pdf
    from trichord.geometry import RightTriangle
    tri = RightTriangle(1, 5)
    for x, v in zip(table["t"], table["value"]):
        assert v == pytest.approx(c * distance_pdf(tri, x * c).value, rel=1e-14, abs=1e-14)


def test_normalized_density_depends_only_on_ratio():
    a = build_table(TableSpec("distance_pdf", 1, 5, normalize_c=True))
    b = build_table(TableSpec("distance_pdf", 3, 15, normalize_c=True))
    np.testing.assert_allclose(a["value"], b["value"], rtol=1e-12, atol=1e-12)


def test_cross_cdf_column_monotone():
    table = build_table(TableSpec("cross_cdf", 1, 5))
    assert len(table["value"]) == 20
    assert np.all(np.diff(table["value"]) >= 0)


@pytest.mark.parametrize("fn", ["chord_cdf", "chord_pdf", "distance_pdf", "distance_cdf",
                                "rect_pdf", "rect_cdf", "cross_pdf", "cross_cdf"])
def test_every_function_and_json_roundtrip(fn):
    code, text = run(["table", "--fn", fn, "--a", "2", "--b", "3", "--points", "0,0.5,1.7,3.6",
                      "--format", "json"])
    assert code == 0
    assert json.dumps(json.loads(text)) + "\n" == text


def test_csv_is_bit_stable():
    argv = ["table", "--fn", "distance_cdf", "--a", "1", "--b", "2", "--grid", "0,2.5,33"]
    assert run(argv)[1] == run(argv)[1]


def test_csv_values_roundtrip_exactly():
    _, text = run(["table", "--fn", "chord_pdf", "--a", "1", "--b", "2", "--grid", "0,2,7"])
    table = build_table(TableSpec("chord_pdf", 1, 2, grid=(0, 2, 7)))
    values = [float(r.split(",")[1]) for r in text.splitlines()[2:]]
    assert values == table["value"]
    assert format_table(table, "csv") == text


@pytest.mark.parametrize("argv", [
    ["table", "--fn", "chord_cdf", "--a", "0", "--b", "1"],
    ["table", "--fn", "chord_cdf", "--a", "1", "--b", "1", "--grid", "2,1,5"],
    ["table", "--fn", "chord_cdf", "--a", "1", "--b", "1", "--grid", "0,1,1"],
    ["verify", "all", "--a", "-1"],
    ["verify", "mc", "--n", "0"],
])
def test_usage_errors_exit_2(argv):
    assert run(argv)[0] == 2


@pytest.mark.parametrize("argv", [
    ["table", "--fn", "nope", "--a", "1", "--b", "1"],
    ["table", "--fn", "chord_cdf", "--a", "1", "--b", "1", "--grid", "x"],
    ["verify", "bogus"],
])
def test_argparse_errors_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv, out=io.StringIO())
    assert exc.value.code == 2


def test_table_spec_validation():
    with pytest.raises(UsageError):
        TableSpec("chord_cdf", 1, 1, points=[]).validate()
    with pytest.raises(UsageError):
        TableSpec("chord_cdf", 1, 1, format="xml").validate()


@pytest.mark.parametrize("suite", ["chord", "distance", "rectangle", "proof"])
def test_verify_suites_pass(suite):
    code, text = run(["verify", suite, "--a", "3", "--b", "4"])
    assert code == 0
    assert text.count("passed=PASS") == len(text.strip().splitlines())


def test_verify_mc_records_seed(monkeypatch):
    monkeypatch.setenv("TRICHORD_SEED", "77")
    code, text = run(["verify", "--suite", "mc", "--n", "20000"])
    assert code == 0
    lines = text.strip().splitlines()
    assert len(lines) == 4
    assert all("seed=77" in ln and "n=20000" in ln for ln in lines)
    assert run(["verify", "mc", "--n", "20000", "--seed", "77"])[1].split("wall_time")[0] == \
        text.split("wall_time")[0]


def test_verify_failure_exits_1(monkeypatch):
    from trichord import suites

    def broken(tri):
        yield suites._timed("fake.check", 1e-10, lambda: 1.0)
    monkeypatch.setattr(suites, "chord_suite", broken)
    code, text = run(["verify", "chord"])
    assert code == 1 and "FAIL" in text
