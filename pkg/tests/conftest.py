from fractions import Fraction as F

import pytest

from chainpoly.diag import DiagChainFamily
from chainpoly.jordan import JordanChainFamily

JORDAN_PARAMS = [(0, (1, F(1, 3))), (F(1, 2), (2, -1)), (10, (F(-3, 7), 5))]
DIAG_PARAMS = [(F(1, 2), (F(1, 3), 2)), (2, (1, F(1, 2))), (10, (2, F(-1, 5)))]


@pytest.fixture(params=JORDAN_PARAMS, ids=lambda p: f"a={p[0]}")
def jordan3(request):
    alpha, sig = request.param
    return JordanChainFamily(3, alpha, sig)


@pytest.fixture(params=DIAG_PARAMS, ids=lambda p: f"a={p[0]}")
def diag3(request):
    alpha, sig = request.param
    return DiagChainFamily(3, alpha, sig)
