import io

import numpy as np
import pytest
from django.core.management import ManagementUtility, call_command
from django.core.management.base import CommandError

from conv_app.api.tensors.formats import read_result, read_vector, write_hypercube
from conv_app.api.tensors.models import Hypercube


@pytest.fixture
def hcube(tmp_path):
    def write(name, values):
        path = tmp_path / f"{name}.hcube"
        with open(path, "w") as sink:
            write_hypercube(Hypercube.from_flat(np.asarray(values, dtype=np.float64)), sink)
        return str(path)

    return write


def read_tcube(path):
    with open(path) as source:
        return read_result(source)


def delta(length, position):
    v = np.zeros(length)
    v[position] = 1
    return v


def test_convolve_base_case(hcube, tmp_path):
    out = tmp_path / "z.tcube"
    call_command("convolve", hcube("x", [2, 3]), hcube("y", [5, 7]), str(out))
    assert out.read_text() == "TCUBE 1\n10 29 21\n"


def test_convolve_to_stdout(hcube):
    stdout = io.StringIO()
    call_command("convolve", hcube("x", [1, 1]), hcube("y", [1, 1]), "-", stdout=stdout)
    assert stdout.getvalue() == "TCUBE 1\n1 2 1\n"


def test_convolve_engines_write_identical_files(hcube, tmp_path):
    rng = np.random.default_rng(6)
    x = hcube("x", rng.integers(-50, 50, 64))
    y = hcube("y", rng.integers(-50, 50, 64))
    call_command("convolve", x, y, str(tmp_path / "naive.tcube"), method="naive")
    call_command("convolve", x, y, str(tmp_path / "dnc.tcube"), method="dnc")
    assert (tmp_path / "naive.tcube").read_bytes() == (tmp_path / "dnc.tcube").read_bytes()


def test_convolve_difference(hcube, tmp_path):
    out = tmp_path / "d.tcube"
    call_command("convolve", hcube("x", [1, 0]), hcube("y", [0, 1]), str(out), difference=True)
    assert out.read_text() == "TCUBE 1\n1 0 0\n"


def test_convolve_dimension_mismatch(hcube, tmp_path):
    with pytest.raises(CommandError, match="2 and 3") as excinfo:
        call_command("convolve", hcube("x", np.ones(4)), hcube("y", np.ones(8)), str(tmp_path / "z"))
    assert excinfo.value.returncode == 1


def test_convolve_capacity(hcube, tmp_path):
    x = hcube("x", np.ones(16))
    with pytest.raises(CommandError) as excinfo:
        call_command("convolve", x, x, str(tmp_path / "z"), memory_cap=512)
    assert excinfo.value.returncode == 2


def test_convolve_unreadable_input(tmp_path):
    bad = tmp_path / "bad.hcube"
    bad.write_text("HCUBE 1\n1 2 3\n")
    with pytest.raises(CommandError, match="3 values, 2 expected") as excinfo:
        call_command("convolve", str(bad), str(bad), str(tmp_path / "z"))
    assert excinfo.value.returncode == 1

    with pytest.raises(CommandError) as excinfo:
        call_command("convolve", str(tmp_path / "missing"), str(bad), str(tmp_path / "z"))
    assert excinfo.value.returncode == 1


def test_convolve_non_ascii_input(hcube, tmp_path):
    bad = tmp_path / "bad.hcube"
    bad.write_bytes(b"HCUBE 1\n1 \xe9\n")
    with pytest.raises(CommandError, match="0xe9 is not ASCII") as excinfo:
        call_command("convolve", str(bad), hcube("y", [1, 1]), str(tmp_path / "z"))
    assert excinfo.value.returncode == 1
    assert "line 2" in str(excinfo.value)


def test_convolve_missing_argument():
    with pytest.raises(CommandError) as excinfo:
        call_command("convolve", "only-one.hcube")
    assert excinfo.value.returncode == 1


def test_exit_status_on_the_command_line(hcube, tmp_path, capsys):
    x = hcube("x", np.ones(16))
    with pytest.raises(SystemExit) as excinfo:
        ManagementUtility(["manage.py", "convolve", x, x, str(tmp_path / "z"), "--memory-cap", "512"]).execute()
    assert excinfo.value.code == 2
    assert "memory cap" in capsys.readouterr().err

    with pytest.raises(SystemExit) as excinfo:
        ManagementUtility(["manage.py", "convolve", x, x, str(tmp_path / "z"), "--method", "fft"]).execute()
    assert excinfo.value.code == 1


def test_carryfree_worked_example(hcube, tmp_path):
    u = hcube("u", delta(8, 7))
    v = hcube("v", delta(8, 5))
    out = tmp_path / "r.tcube"
    call_command("carryfree", u, v, str(out))
    np.testing.assert_array_equal(np.flatnonzero(read_tcube(out).data), [23])

    out = tmp_path / "r.vec"
    call_command("carryfree", u, v, str(out), with_carries=True)
    with open(out) as source:
        np.testing.assert_array_equal(read_vector(source), delta(15, 12))


def test_carryfree_single_bit(hcube):
    stdout = io.StringIO()
    call_command("carryfree", hcube("u", [1, 1]), hcube("v", [1, 1]), "-", with_carries=True, stdout=stdout)
    assert stdout.getvalue() == "VEC 3\n1\n2\n1\n"


def test_maxconv_exact(hcube, tmp_path):
    out = tmp_path / "m.tcube"
    call_command("maxconv", hcube("x", [2, 3]), hcube("y", [4, 1]), str(out), value_bound=4)
    assert out.read_text() == "TCUBE 1\n8 12 3\n"


def test_maxconv_with_p_one_matches_convolve(hcube, tmp_path):
    x = hcube("x", np.arange(8) * 0.5)
    y = hcube("y", np.arange(8)[::-1] + 1.0)
    call_command("maxconv", x, y, str(tmp_path / "m.tcube"), p=1.0)
    call_command("convolve", x, y, str(tmp_path / "c.tcube"))
    assert (tmp_path / "m.tcube").read_bytes() == (tmp_path / "c.tcube").read_bytes()


def test_maxconv_negative_input(hcube, tmp_path):
    with pytest.raises(CommandError) as excinfo:
        call_command("maxconv", hcube("x", [2, -3]), hcube("y", [4, 1]), str(tmp_path / "m"), p=2.0)
    assert excinfo.value.returncode == 1


def test_maxconv_infeasible(hcube, tmp_path):
    ones = hcube("x", np.ones(8))
    with pytest.raises(CommandError, match="limit p=1") as excinfo:
        call_command("maxconv", ones, ones, str(tmp_path / "m"), value_bound=1, memory_cap=100)
    assert excinfo.value.returncode == 2


def test_maxconv_invalid_p(hcube, tmp_path):
    x = hcube("x", [1, 1])
    with pytest.raises(CommandError) as excinfo:
        call_command("maxconv", x, x, str(tmp_path / "m"), p=0.5)
    assert excinfo.value.returncode == 1


def test_bench_dnc_probe_rows(tmp_path):
    out = tmp_path / "bench.csv"
    call_command("bench", methods=["dnc"], dim_min=11, dim_max=13, runs=3, output=str(out))
    lines = out.read_text().splitlines()
    assert lines[0] == "method,dim,runs,median_seconds,rel_error_at_min,status"
    rows = [line.split(",") for line in lines[1:]]
    assert [row[1] for row in rows] == ["11", "12", "13"]
    assert all(row[4] == "0.0" and row[5] == "ok" for row in rows)


def test_bench_naive_above_practical_limit():
    stdout = io.StringIO()
    call_command("bench", methods=["naive"], dim_min=14, dim_max=14, stdout=stdout)
    assert stdout.getvalue().splitlines()[1:] == ["naive,14,3,,,skipped-practicality"]


def test_bench_writes_excel(tmp_path):
    xlsx = tmp_path / "bench.xlsx"
    call_command("bench", methods=["naive", "dnc"], dim_min=1, dim_max=3, runs=1,
                 output=str(tmp_path / "bench.csv"), xlsx=str(xlsx))
    assert xlsx.read_bytes()[:2] == b"PK"


@pytest.mark.parametrize(
    "options",
    [
        {"runs": 0},
        {"dim_min": 5, "dim_max": 4},
        {"dim_max": 17},
        {"methods": ["fft"]},
        {"dim_min": 2, "dim_max": 2, "check_scaling": True},
    ],
)
def test_bench_invalid_options(options):
    with pytest.raises(CommandError) as excinfo:
        call_command("bench", stdout=io.StringIO(), **options)
    assert excinfo.value.returncode == 1
