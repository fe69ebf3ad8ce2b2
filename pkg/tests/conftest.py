import os

from hypothesis import HealthCheck, settings, strategies as st

from padicfeas.core.sparse import SparsePoly

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=500)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SMALL_PRIMES = [2, 3, 5, 7, 11, 13]


@st.composite
def sparse_polys(draw, max_terms=4, max_exp=12, max_coeff=50, min_terms=1):
    exps = draw(st.lists(st.integers(0, max_exp), min_size=min_terms,
                         max_size=max_terms, unique=True))
    coeffs = draw(st.lists(st.integers(-max_coeff, max_coeff).filter(bool),
                           min_size=len(exps), max_size=len(exps)))
    return SparsePoly.from_dict(dict(zip(exps, coeffs)))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
