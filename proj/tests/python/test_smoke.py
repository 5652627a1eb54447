import math

import pytest

import charred


def test_list_examples():
    ids = charred.list_examples()
    assert ids == ["E1", "E2", "E3", "E4", "E5", "E6", "E7", "E8"]


def test_solve_matches_closed_form():
    out = charred.solve(
        example="E2", grid={"x": [-1, 1], "t": [0, 0.5], "nx": 21, "nt": 21}
    )
    nx = len(out["x"])
    for j, t in enumerate(out["t"]):
        for i, x in enumerate(out["x"]):
            assert out["status"][j * nx + i] == "ok"
            exact = -math.log(1 - t**3 / 3 + t**2 * x - t * x**2)
            assert out["u"][j * nx + i] == pytest.approx(exact, abs=1e-6)


def test_verify_reports():
    rep = charred.verify(
        example="E2", grid={"x": [-1, 1], "t": [0, 0.4], "nx": 21, "nt": 21}
    )
    assert rep["oracle"]["max_abs"] < 1e-6
    assert rep["fd_residual"]["count_evaluated"] > 0


def test_blowup_time():
    t = charred.estimate_blowup_time("E2", x=2.0, t_max=2.0)
    assert t == pytest.approx(0.2900, abs=1e-2)
    assert charred.estimate_blowup_time("E2", x=0.0, t_max=0.5) is None


def test_real_root_k():
    assert charred.real_root_k(1.0, 0.0) == 2.0
    assert charred.real_root_k(1.0, 0.0, branch="alternate") == -1.0
    K = charred.real_root_k(1.0, 8.0)
    assert (K - 2) ** 2 * (K + 1) == pytest.approx(8.0, abs=1e-10)


def test_classify_and_describe():
    assert "riccati" in charred.classify("E1")
    assert "abel" in charred.classify("E5")
    assert "K'(u)" in charred.describe_reduction("E1")


def test_expressions():
    assert charred.eval_expr("x^2 + t", {"x": 3, "t": 1}) == 10.0
    d = charred.diff_expr("x^2", "x")
    assert charred.eval_expr(d, {"x": 5}) == 10.0
    with pytest.raises(charred.ExpressionError):
        charred.eval_expr("ln(-1)", {})


def test_json_problem():
    doc = """{"id": "tp", "class": 1, "a": "1", "b": "0", "alpha": "0",
               "G": "0", "t0": 0, "u0": "0", "ut0": "1",
               "grid": {"x": [-1, 1, 11], "t": [0, 1, 11]}}"""
    out = charred.solve(json=doc)
    nx = len(out["x"])
    for j, t in enumerate(out["t"]):
        assert out["u"][j * nx] == pytest.approx(t, abs=1e-10)
    with pytest.raises(charred.ProblemError):
        charred.solve(json="{}")


def test_render_svg():
    svg = charred.render_svg(
        "E2", grid={"x": [-1, 1], "t": [0, 0.5], "nx": 9, "nt": 9}, kind="contour"
    )
    assert svg.startswith("<svg")
    assert "</svg>" in svg
