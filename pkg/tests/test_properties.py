import random

from hypothesis import given, settings
from hypothesis import strategies as st

from qintertwine.cli.main import normalize_expression
from qintertwine.cli.config import RunConfig
from qintertwine.freealg import render
from qintertwine.freealg.api import algebra, kernel_algebra
from qintertwine.freealg.checks import random_element
from qintertwine.uqmod import act, all_generators

seeds = st.integers(min_value=0, max_value=10 ** 6)
ALGEBRAS = [algebra(1), algebra(2), algebra(1, "hyperboloid"), kernel_algebra(1, "free", "free")]


# (algebra, rank, left quotient) for the text round trip
ROUND_TRIP = [(algebra(1), 1, "free"), (algebra(2), 2, "free"),
              (algebra(1, "hyperboloid"), 1, "hyperboloid"), (kernel_algebra(1, "free", "free"), 1, "free")]


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from(range(len(ROUND_TRIP))))
def test_parse_render_round_trip(seed, which):
    alg, n, left = ROUND_TRIP[which]
    e = random_element(random.Random(seed), alg)
    back, txt, _ = normalize_expression(render(e), RunConfig(n=n), left, "free")
    assert back == e and txt == render(e)


@settings(max_examples=25, deadline=None)
@given(seeds, st.sampled_from(range(len(ALGEBRAS))))
def test_associativity(seed, which):
    rng = random.Random(seed)
    alg = ALGEBRAS[which]
    a, b, c = (random_element(rng, alg) for _ in range(3))
    assert (a * b) * c == a * (b * c)


@settings(max_examples=25, deadline=None)
@given(seeds, st.sampled_from(range(len(ALGEBRAS))))
def test_star_anti_multiplicative(seed, which):
    rng = random.Random(seed)
    alg = ALGEBRAS[which]
    a, b = random_element(rng, alg), random_element(rng, alg)
    assert (a * b).star() == b.star() * a.star()
    assert a.star().star() == a


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_action_is_linear(seed):
    rng = random.Random(seed)
    alg = algebra(2)
    a, b = random_element(rng, alg), random_element(rng, alg)
    for g in all_generators(2):
        assert act(g, a + b) == act(g, a) + act(g, b)
