from decimal import Decimal

import pytest

from lebesgue.constants import AREA_AT_SIGMA_STAR, SIGMA_STAR_DEG
from lebesgue.cover import ConstructionReport
from lebesgue.optimize import (
    BracketError,
    ScanFailure,
    angle_wyl_excess,
    default_bracket,
    find_sigma_star,
    scan,
)
from lebesgue.scalar import PrecisionContext, degrees, radians

D = Decimal


def rad(deg, ctx):
    return radians(D(deg), ctx)


@pytest.fixture(scope="module")
def star60():
    ctx = PrecisionContext(60)
    return ctx, find_sigma_star(*default_bracket(ctx), ctx)


def test_sigma_star_digits(star60):
    ctx, res = star60
    assert abs(degrees(res.sigma_star, ctx) - D(SIGMA_STAR_DEG)) <= D("1e-17")
    assert str(res.area).startswith(AREA_AT_SIGMA_STAR[:20])
    assert res.all_constraints_verified and res.report.constraints_ok


def test_returned_endpoint_is_feasible(star60):
    ctx, res = star60
    lo, hi = res.bracket
    assert angle_wyl_excess(res.sigma_star, ctx) >= 0
    other = lo if res.sigma_star == hi else hi
    assert angle_wyl_excess(other, ctx) < 0
    assert hi - lo < ctx.tol(10)


def test_bracket_independence(star60):
    ctx, res = star60
    other = find_sigma_star(rad("1.2", ctx), rad("1.45", ctx), ctx)
    assert abs(other.sigma_star - res.sigma_star) <= 2 * ctx.tol(10)


def test_reversed_sign_bracket_order():
    ctx = PrecisionContext(30)
    res = find_sigma_star(rad("1.29", ctx), rad("1.3", ctx), ctx)
    assert res.report.constraints_ok


def test_bracket_without_sign_change():
    ctx = PrecisionContext(30)
    with pytest.raises(BracketError):
        find_sigma_star(rad("1.3", ctx), rad("1.5", ctx), ctx)
    with pytest.raises(BracketError):
        find_sigma_star(rad("1.5", ctx), rad("1.0", ctx), ctx)


def test_residual_shrinks_with_precision():
    residuals = []
    for digits in (50, 100):
        ctx = PrecisionContext(digits)
        res = find_sigma_star(*default_bracket(ctx), ctx)
        residuals.append(abs(angle_wyl_excess(res.sigma_star, ctx)))
        assert residuals[-1] <= D(10) ** (12 - digits)
    assert residuals[1] < residuals[0]


def test_excess_slope_stable_across_precisions():
    slopes = []
    for digits in (30, 40):
        ctx = PrecisionContext(digits)
        h, s = rad("0.001", ctx), rad("1.3", ctx)
        with ctx.active():
            slopes.append((angle_wyl_excess(s + h, ctx) - angle_wyl_excess(s - h, ctx)) / (2 * h))
    assert slopes[0] > 0
    assert abs(slopes[0] - slopes[1]) <= D("1e-22")


def test_scan_order_and_failures():
    ctx = PrecisionContext(30)
    out = scan([rad("1.3", ctx), D(0), rad("0.5", ctx)], ctx)
    assert isinstance(out[0], ConstructionReport) and out[0].constraints_ok
    assert isinstance(out[1], ScanFailure) and out[1].error == "DegeneracyError"
    assert isinstance(out[2], ConstructionReport) and not out[2].constraints_ok


def test_empty_scan():
    assert scan([], PrecisionContext(30)) == []
