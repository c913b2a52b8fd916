"""Hypothesis strategies producing small instances."""

from hypothesis import strategies as st

from shiftbribery.election import Copeland
from shiftbribery.io import random_instance

FAMILIES = ("unit", "uniform-aon", "one-inf-aon", "general")


@st.composite
def instances(draw, families=FAMILIES, max_m=5, max_n=5, scoring=False, rule=None):
    seed = draw(st.integers(0, 2**32 - 1))
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(1, max_n))
    family = draw(st.sampled_from(families))
    kwargs = {"scoring": scoring}
    if rule is not None:
        kwargs["rule"] = rule
    return random_instance(seed, m, n, family, **kwargs)


def copeland_instances(**kw):
    return instances(rule=Copeland(), **kw)
