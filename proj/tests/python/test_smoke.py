import math

import pytest

import cyclostark


def test_field_info_for_q_sqrt5():
    info = cyclostark.field_info(5, [4])
    assert info["key"] == "m5_H4"
    assert info["degree"] == 2
    assert info["S"] == ["inf", "5"]


def test_spot_values_for_m5():
    values = cyclostark.l_values(5, [4], precision=40)
    assert [v["vanishing_order"] for v in values] == [1, 1]
    derivs = sorted(float(v["derivative"]["re"]) for v in values)
    assert derivs[0] == pytest.approx(-0.5 * math.log(5), abs=1e-14)
    assert derivs[1] == pytest.approx(math.log((1 + math.sqrt(5)) / 2), abs=1e-14)


def test_element_m5_exponents():
    report = cyclostark.element(5, [4])
    assert report["epsilon"] == ["-1/2", "1/2"]


def test_verify_passes_and_negative_control_fails():
    report, code = cyclostark.verify(only=["regulator", "dimensions"])
    assert code == 0
    assert report["status"] == "pass"
    _, bad = cyclostark.verify(only="regulator", negative_control=True)
    assert bad == 1


def test_fit_over_trivial_group():
    out = cyclostark.fit([["2"]], 0)
    assert out["hnf"] == [["2/1"]]


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        cyclostark.field_info(13, [3])
    with pytest.raises(cyclostark.InputError):
        cyclostark.fit([["1", "2"]], 0)
    with pytest.raises(NotImplementedError):
        cyclostark.field_info(401, [400])
