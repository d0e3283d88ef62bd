from decimal import Decimal

import pytest

from lebesgue.hansen import (
    _x_next_subtractive,
    area_row,
    chord,
    quadratic_residual,
    table,
    x_initial,
    x_next,
)
from lebesgue.scalar import DomainError, PrecisionContext, eval_sqrt, fmt

TABLE1 = [
    ("1.339745962156e-1", "4.952913815765e-4"),
    ("2.413116066646e-2", "2.418850424555e-6"),
    ("6.080990483915e-4", "3.750723412843e-11"),
    ("3.701744790810e-7", "8.454119457933e-21"),
    ("1.370292328207e-13", "4.288332272809e-40"),
]


def sig13(v: Decimal) -> Decimal:
    return Decimal(fmt(v, 13))


def test_x_initial(ctx50):
    x0 = x_initial(ctx50)
    assert sig13(x0) == Decimal("0.1339745962156")
    with ctx50.active():
        r3 = eval_sqrt(Decimal(3), ctx50)
        assert abs(r3 * (1 / r3 - Decimal("0.5")) - x0) <= ctx50.tol(1)


def test_x_initial_stable_under_doubling():
    a, b = x_initial(PrecisionContext(50)), x_initial(PrecisionContext(100))
    assert str(b).startswith(str(a)[:-1])


def test_table1_rows(ctx50):
    rows = table(5, ctx50)
    for row, (x, a) in zip(rows, TABLE1):
        assert sig13(row.x) == Decimal(x)
        assert sig13(row.a) == Decimal(a)


def test_single_row(ctx50):
    rows = table(1, ctx50)
    assert len(rows) == 1 and rows[0].i == 0
    assert sig13(rows[0].a) == Decimal("4.952913815765e-4")


def test_rows_must_be_positive(ctx50):
    with pytest.raises(ValueError):
        table(0, ctx50)


def test_x_next_examples(ctx50):
    assert sig13(x_next(x_initial(ctx50), ctx50)) == Decimal("2.413116066646e-2")
    x2 = table(3, ctx50)[2].x
    assert sig13(x2) == Decimal("6.080990483915e-4")
    assert sig13(x_next(x2, ctx50)) == Decimal("3.701744790810e-7")
    # from the printed, rounded x2 the relative error doubles: x3 ~ x2**2
    rounded = x_next(Decimal("6.080990483915e-4"), ctx50)
    with ctx50.active():
        assert abs(rounded / Decimal("3.701744790810e-7") - 1) < Decimal("1e-12")
    assert x_next(Decimal(0), ctx50) == 0


def test_negative_radicand(ctx50):
    with pytest.raises(DomainError):
        x_next(Decimal("0.5"), ctx50)


def test_area_row_examples(ctx50):
    rows = table(6, ctx50)
    xs = [r.x for r in rows]
    assert sig13(area_row(xs[2], xs[3], ctx50)) == Decimal("3.750723412843e-11")
    assert sig13(area_row(xs[3], xs[4], ctx50)) == Decimal("8.454119457933e-21")
    assert sig13(area_row(xs[4], xs[5], ctx50)) == Decimal("4.288332272809e-40")


def test_deep_table_is_super_exponential():
    ctx = PrecisionContext(200)
    rows = table(8, ctx)
    with ctx.active():
        ratios = [rows[i + 1].x / rows[i].x ** 2 for i in range(7)]
    for r in rows[:-1]:
        assert r.x > 0 and r.a > 0
    assert all(b.x < a.x for a, b in zip(rows, rows[1:]))
    # x_{i+1} ~ x_i**2 / (1 - sqrt(3) x_i) -> x_i**2
    assert all(abs(r - 1) < abs(q - 1) for q, r in zip(ratios, ratios[1:]))
    assert abs(ratios[-1] - 1) < Decimal("1e-50")


def test_rationalized_matches_subtractive_at_high_precision():
    ctx = PrecisionContext(200)
    x = x_initial(ctx)
    for _ in range(8):
        nxt = x_next(x, ctx)
        assert abs(nxt - _x_next_subtractive(x, ctx)) <= ctx.tol(10)
        x = nxt


def test_subtractive_form_loses_digits():
    ctx = PrecisionContext(30)
    x = table(4, ctx)[3].x
    # x_4 ~ 1.4e-13 keeps ~17 of 30 digits in the subtractive form
    good, bad = x_next(x, ctx), _x_next_subtractive(x, ctx)
    with ctx.active():
        assert abs(bad - good) / good > Decimal("1e-25")


def test_quadratic_residual():
    ctx = PrecisionContext(100)
    x = x_initial(ctx)
    for _ in range(8):
        nxt = x_next(x, ctx)
        assert abs(quadratic_residual(x, nxt, ctx)) <= ctx.tol(5)
        x = nxt


def test_segment_term_positive_and_triangle_term_matches_lengths(ctx50):
    rows = table(5, ctx50)
    for a, b in zip(rows, rows[1:]):
        with ctx50.active():
            tri = a.x * b.x / 4
            # right triangle with legs IJ = x_i and CJ = x_{i+1} / 2
            ij, cj = a.x, b.x / 2
            assert abs(ij * cj / 2 - tri) <= ctx50.tol(1) * tri
        assert 0 < a.a < tri


def test_chord_is_short(ctx50):
    rows = table(3, ctx50)
    d = chord(rows[0].x, rows[1].x, ctx50)
    assert 0 < d < 2
