"""Reference areas for the history of the covering problem, as exact strings.

The hexagon and Pal values are closed forms; use the helpers to evaluate them
at a given precision.  The others are published decimal values.
"""

from decimal import Decimal

from .scalar import PrecisionContext, eval_sqrt

SPRAGUE = "0.844137708436"
HANSEN_CORRECTED = "0.844137708398"
LOWER_BOUND = "0.832"

# published results of this construction
AREA_AT_1_3_DEG = "0.8441153768593765"
ANGLE_WYL_AT_1_3_DEG = "90.00593"
ANGLE_MWY_AT_1_3_DEG = "122.9277"
SIGMA_STAR_DEG = "1.294389444703601012"
AREA_AT_SIGMA_STAR = "0.844115297128419059"

# Hansen's claims for his first two removed regions
HANSEN_CLAIMED_A2 = "4e-11"
HANSEN_CLAIMED_A3 = "6e-18"


def hexagon_area(ctx: PrecisionContext) -> Decimal:
    """sqrt(3)/2: regular hexagon around a circle of diameter 1."""
    with ctx.active():
        return eval_sqrt(Decimal(3), ctx) / 2


def pal_area(ctx: PrecisionContext) -> Decimal:
    """2 - 2/sqrt(3): the hexagon minus two corner triangles of the dodecagon cut."""
    with ctx.active():
        return 2 - 2 / eval_sqrt(Decimal(3), ctx)
