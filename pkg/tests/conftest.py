import mpmath
import pytest

from pibench import PrecisionCtx, reference_pi


@pytest.fixture(scope="session")
def ctx15():
    return PrecisionCtx(15, 12)


@pytest.fixture(scope="session")
def ref15(ctx15):
    return reference_pi(ctx15)


@pytest.fixture(scope="session")
def ctx14():
    return PrecisionCtx(14, 12)


@pytest.fixture(scope="session")
def ref14(ctx14):
    return reference_pi(ctx14)


def mp_string(expr_fn, dp, dps=80):
    """Evaluate expr_fn() under mpmath at dps digits, print dp places half-even."""
    with mpmath.workdps(dps):
        v = expr_fn()
        # mpmath's nstr rounds half-even only sometimes; go through a
        # scaled integer to make the rounding explicit.
        scaled = mpmath.mpf(10) ** dp * v
        i = int(mpmath.floor(scaled))
        frac = scaled - i
        if frac > 0.5 or (frac == 0.5 and i % 2 == 1):
            i += 1
    whole, part = divmod(i, 10 ** dp)
    return f"{whole}.{part:0{dp}d}"
