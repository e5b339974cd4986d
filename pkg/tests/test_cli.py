from math import sqrt
from unittest import mock

import pytest
from click.testing import CliRunner

from burescorr import full_report, bd_from_c
from burescorr.cli import main
from burescorr.oracle import BatchSummary


@pytest.fixture
def runner():
    return CliRunner()


def run(runner, *args):
    return runner.invoke(main, args, catch_exceptions=False)


def rows(output):
    lines = [ln for ln in output.strip().split("\n") if not ln.startswith("#")]
    header = lines[0].split(",")
    return header, [ln.split(",") for ln in lines[1:]]


class TestReport:
    def test_header(self, runner):
        res = run(runner, "report", "--c1", "0", "--c2", "0", "--c3", "0")
        header, data = rows(res.output)
        assert header == ["c1", "c2", "c3", "alpha", "beta", "gamma", "delta",
                          "E", "Q", "C", "T", "k", "s_k", "l", "a", "b", "branch"]
        assert res.exit_code == 0

    def test_zero_state_row(self, runner):
        res = run(runner, "report", "--c1", "0", "--c2", "0", "--c3", "0")
        _, data = rows(res.output)
        e, q, c, t = (float(x) for x in data[0][7:11])
        assert e == q == c == t == 0.0
        assert data[0][16] == "ZERO"

    def test_bell_state_row(self, runner):
        res = run(runner, "report", "--c1", "1", "--c2", "-1", "--c3", "1")
        _, data = rows(res.output)
        for x in data[0][7:11]:
            assert float(x) == pytest.approx(sqrt(2 - sqrt(2)), abs=1e-8)

    def test_invalid_state_exits_2(self, runner):
        res = runner.invoke(main, ["report", "--c1", "1", "--c2", "1", "--c3", "1"])
        assert res.exit_code == 2
        assert "invalid Bell-diagonal state" in res.output

    def test_numeric_round_trip(self, runner):
        res = run(runner, "report", "--c1", "0.31", "--c2", "-0.4", "--c3", "0.27")
        _, data = rows(res.output)
        parsed = [float(x) for x in data[0][:3]]
        rep = full_report(bd_from_c(*parsed))
        assert float(data[0][7]) == pytest.approx(rep.E, abs=1e-8)
        assert float(data[0][10]) == pytest.approx(rep.T, abs=1e-8)


class TestSweeps:
    def test_werner_entanglement_threshold(self, runner):
        res = run(runner, "sweep-werner", "--steps", "31")
        header, data = rows(res.output)
        assert header == ["parameter", "E", "Q", "C", "T", "QplusC"]
        for row in data:
            r, e = float(row[0]), float(row[1])
            if r <= 1 / 3:
                assert e <= 1e-9
            elif r > 1 / 3 + 1e-3:
                assert e > 0
        assert res.exit_code == 0

    def test_werner_qplusc_column(self, runner):
        res = run(runner, "sweep-werner", "--steps", "11")
        _, data = rows(res.output)
        for row in data:
            assert float(row[5]) == pytest.approx(float(row[2]) + float(row[3]), abs=1e-7)

    def test_rank2_constant_columns(self, runner):
        res = run(runner, "sweep-rank2", "--steps", "41")
        _, data = rows(res.output)
        for row in data:
            c_col, t_col = float(row[3]), float(row[4])
            assert c_col == pytest.approx(sqrt(2 - sqrt(2)), abs=1e-8)
            assert c_col == t_col  # identical strings after 9-digit formatting

    def test_bad_steps(self, runner):
        assert runner.invoke(main, ["sweep-werner", "--steps", "1"]).exit_code == 2


class TestDynamics:
    def test_fig4a_footers(self, runner):
        res = run(runner, "dynamics", "--c1", "1", "--c2", "-0.6", "--c3", "0.6",
                  "--s", "2.5", "--nu-max", "2", "--steps", "40")
        assert res.exit_code == 0
        footers = [ln for ln in res.output.strip().split("\n") if ln.startswith("#")]
        assert len(footers) == 2
        assert footers[0].startswith("# t_star=") and "none" not in footers[0]
        assert footers[1].startswith("# esd=") and "none" not in footers[1]
        t_star = float(footers[0].split("=")[1])
        assert t_star == pytest.approx(0.2925, abs=1e-3)

    def test_fig4b_no_transition(self, runner):
        res = run(runner, "dynamics", "--c1", "1", "--c2", "-0.02", "--c3", "0.02",
                  "--s", "2.5", "--nu-max", "2", "--steps", "20")
        assert "# t_star=none" in res.output
        assert "# esd=none" not in res.output

    def test_zero_state_columns(self, runner):
        res = run(runner, "dynamics", "--c1", "0", "--c2", "0", "--c3", "0",
                  "--s", "2.5", "--nu-max", "1", "--steps", "10")
        _, data = rows(res.output)
        for row in data:
            assert all(float(x) == 0.0 for x in row[4:])

    def test_q_frozen_before_t_star(self, runner):
        res = run(runner, "dynamics", "--c1", "1", "--c2", "-0.6", "--c3", "0.6",
                  "--s", "2.5", "--nu-max", "0.29", "--steps", "30")
        _, data = rows(res.output)
        qs = {row[5] for row in data}
        assert len(qs) == 1  # 9-significant-digit strings all identical

    def test_invalid_state(self, runner):
        res = runner.invoke(main, ["dynamics", "--c1", "1", "--c2", "1", "--c3", "1", "--s", "2.5"])
        assert res.exit_code == 2


class TestVerify:
    def test_small_batch_all_modes(self, runner):
        res = run(runner, "--parallel", "1", "verify", "--samples", "5",
                  "--seed", "9", "--mode", "all")
        header, data = rows(res.output)
        assert header == ["mode", "samples", "violations", "max_gap", "seconds"]
        assert [row[0] for row in data] == ["product", "cq", "classical"]
        assert all(row[2] == "0" for row in data)
        assert res.exit_code == 0

    def test_deterministic_apart_from_seconds(self, runner):
        args = ["--parallel", "1", "verify", "--samples", "3", "--seed", "17",
                "--mode", "product"]
        out1 = run(runner, *args).output
        out2 = run(runner, *args).output
        strip = lambda out: [row[:4] for row in rows(out)[1]]
        assert strip(out1) == strip(out2)

    def test_violations_exit_code(self, runner):
        fake = BatchSummary("product", 3, 1, 2e-5)
        with mock.patch.dict(
            "burescorr.cli._VERIFY_RUNNERS",
            {"product": lambda *a, **k: fake},
        ):
            res = runner.invoke(main, ["verify", "--samples", "3", "--mode", "product"])
        assert res.exit_code == 1

    def test_bad_mode_exits_2(self, runner):
        assert runner.invoke(main, ["verify", "--mode", "bogus"]).exit_code == 2

    def test_header_stability(self, runner):
        h1, _ = rows(run(runner, "--parallel", "1", "verify", "--samples", "1",
                         "--mode", "classical").output)
        h2, _ = rows(run(runner, "--parallel", "1", "verify", "--samples", "2",
                         "--mode", "classical").output)
        assert h1 == h2
