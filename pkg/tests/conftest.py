import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from mopforge.dwalgebra import build_generators
from mopforge.matpoly import MatPoly, Poly
from mopforge.scalar import Params, Scalar
from mopforge.weight import make_weight

settings.register_profile(
    "default", deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

PARAM_SETS = [Params(1, 1, 1), Params(2, Fraction(1, 2), 3)]
PARAM_IDS = ["1,1,1", "2,1/2,3"]


@pytest.fixture(scope="session", params=PARAM_SETS, ids=PARAM_IDS)
def params(request):
    return request.param


@pytest.fixture(scope="session")
def p111():
    return PARAM_SETS[0]


_weights = {}
_gens = {}


def weight_for(params):
    if params not in _weights:
        _weights[params] = make_weight(params)
    return _weights[params]


def gens_for(params):
    if params not in _gens:
        _gens[params] = build_generators(params)
    return _gens[params]


@pytest.fixture(scope="session")
def W(params):
    return weight_for(params)


@pytest.fixture(scope="session")
def g(params):
    return gens_for(params)


@pytest.fixture(scope="session")
def W111():
    return weight_for(PARAM_SETS[0])


@pytest.fixture(scope="session")
def g111():
    return gens_for(PARAM_SETS[0])


# -- hypothesis strategies -----------------------------------------------------

small_q = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def scalars(draw, max_terms=3, span=3):
    """Laurent polynomials in beta with small rational coefficients."""
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        terms[draw(st.integers(-span, span))] = draw(small_q)
    return Scalar.from_terms(terms)


@st.composite
def nonzero_monomials(draw):
    c = draw(small_q.filter(lambda q: q != 0))
    return Scalar.beta(draw(st.integers(-3, 3))) * c


@st.composite
def polys(draw, max_degree=3):
    d = draw(st.integers(-1, max_degree))
    return Poly([draw(scalars(max_terms=2)) for _ in range(d + 1)])


@st.composite
def matpolys(draw, n=3, max_degree=2):
    return MatPoly([[draw(polys(max_degree)) for _ in range(n)] for _ in range(n)])


def rng(seed=0):
    return random.Random(seed)
