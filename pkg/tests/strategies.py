"""Shared hypothesis strategies and seeded generators."""

from fractions import Fraction
from itertools import combinations

from hypothesis import strategies as st

from intforms.algebra import MPoly
from intforms.exterior import PForm

small_rationals = st.builds(
    Fraction,
    st.integers(-6, 6),
    st.integers(1, 4),
)


def mpolys(nvars, max_terms=4, max_deg=2):
    exps = st.tuples(*[st.integers(0, max_deg)] * nvars)
    return st.dictionaries(exps, small_rationals, max_size=max_terms).map(lambda t: MPoly(nvars, t))


def pforms(nvars, degree, max_terms=3):
    idx = list(combinations(range(nvars), degree))
    return st.dictionaries(st.sampled_from(idx), mpolys(nvars, max_terms), max_size=3).map(
        lambda c: PForm(nvars, degree, c)
    )


def random_poly(rng, nvars, terms=3, max_deg=2, bound=4):
    out = {}
    for _ in range(terms):
        e = tuple(rng.randint(0, max_deg) for _ in range(nvars))
        out[e] = Fraction(rng.randint(-bound, bound), rng.randint(1, 3))
    return MPoly(nvars, out)


def random_form(rng, nvars, degree, terms=2):
    idx = list(combinations(range(nvars), degree))
    comps = {}
    for _ in range(rng.randint(1, len(idx))):
        comps[rng.choice(idx)] = random_poly(rng, nvars, terms)
    return PForm(nvars, degree, comps)


def random_point(rng, dim, bound=5):
    while True:
        p = [Fraction(rng.randint(-bound, bound), rng.randint(1, 3)) for _ in range(dim)]
        if any(p):
            return p
