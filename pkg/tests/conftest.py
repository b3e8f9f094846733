from fractions import Fraction

import pytest
import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from dqsplit.arith import Poly, RatFunc

settings.register_profile(
    "exact",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("exact")

T = sympy.Symbol("t")


# -- sympy bridge (independent oracle) -------------------------------------------


def poly_to_sympy(p: Poly):
    return sum((sympy.Rational(c.numerator, c.denominator) * T**i for i, c in enumerate(p.coeffs)),
               sympy.Integer(0))


def to_sympy(f):
    f = f if isinstance(f, RatFunc) else RatFunc(f)
    return poly_to_sympy(f.num) / poly_to_sympy(f.den)


def from_sympy(expr) -> RatFunc:
    num, den = sympy.fraction(sympy.cancel(sympy.together(expr)))
    def conv(e):
        coeffs = sympy.Poly(e, T).all_coeffs()[::-1]
        return Poly([Fraction(int(c.p), int(c.q)) for c in coeffs])
    return RatFunc(conv(num), conv(den))


# -- strategies --------------------------------------------------------------------

small_fracs = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))


def polys(max_degree=3, coeffs=small_fracs):
    return st.lists(coeffs, min_size=0, max_size=max_degree + 1).map(Poly)


def nonzero_polys(max_degree=3, coeffs=small_fracs):
    return polys(max_degree, coeffs).filter(bool)


def ratfuncs(max_degree=3, coeffs=small_fracs):
    return st.builds(RatFunc, polys(max_degree, coeffs), nonzero_polys(max_degree, coeffs))


def nonzero_ratfuncs(max_degree=3, coeffs=small_fracs):
    return ratfuncs(max_degree, coeffs).filter(bool)


# -- acceptance summary --------------------------------------------------------------

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[n] = (title, report.outcome == "passed")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        title, ok = _ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}")
