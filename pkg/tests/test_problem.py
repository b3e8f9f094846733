from pathlib import Path

import pytest

from dqsplit.arith import RatFunc
from dqsplit.engine import Hint
from dqsplit.problem import ProblemError, load_problem, parse_hint, problem_from_string

t = RatFunc.t()
PROBLEMS = Path(__file__).resolve().parent.parent / "problems"

RADICAL = """
[field]
t_prime = "1"

[algebra]
alpha = "1"
beta = "t"

[derivation]
a1 = "-1/(8*t)"
a2 = "0"
a3 = "0"
"""


def test_radical_problem():
    p = problem_from_string(RADICAL)
    assert (p.t_prime, p.alpha, p.beta) == (1, 1, t)
    assert (p.a1, p.a2, p.a3) == (-1 / (8 * t), 0, 0)
    assert p.hints == ()
    assert p.rendered() == {"t_prime": "1", "alpha": "1", "beta": "t", "a1": "-1/(8*t)", "a2": "0", "a3": "0"}
    assert p.algebra().base.is_standard()


def test_files_in_repo_load():
    files = sorted(PROBLEMS.glob("*.ini"))
    assert files
    for f in files:
        load_problem(f)
    assert load_problem(PROBLEMS / "log_hint.ini").hints == (Hint("primitive", 1 / t),)


@pytest.mark.parametrize("text, message", [
    (RADICAL.replace("[algebra]", "[algebr]"), "missing section [algebra]"),
    (RADICAL.replace('a3 = "0"', ""), "missing key 'a3' in [derivation]"),
    (RADICAL.replace('beta = "t"', 'beta = "0"'), "beta must be nonzero"),
    (RADICAL.replace('alpha = "1"', 'alpha = "t - t"'), "alpha must be nonzero"),
    (RADICAL.replace('beta = "t"', 'beta = "1/(t"'), "[algebra] beta"),
    ("not an ini file", "malformed problem file"),
])
def test_problem_errors(text, message):
    with pytest.raises(ProblemError) as info:
        problem_from_string(text)
    assert message in str(info.value)


def test_unquoted_values_accepted():
    p = problem_from_string(RADICAL.replace('"', ""))
    assert p.a1 == -1 / (8 * t)


def test_hints():
    assert parse_hint("radical:8:t") == Hint("radical", t, 8)
    assert parse_hint('"primitive:1/t"') == Hint("primitive", 1 / t)
    assert parse_hint("hyperexp:t^2") == Hint("hyperexp", t * t)
    assert parse_hint("riccati:auto") == Hint("riccati")
    for bad in ("radical:1:t", "radical:x:t", "riccati:now", "log:t", "primitive:1/("):
        with pytest.raises(ProblemError):
            parse_hint(bad)
    for h in (Hint("radical", t, 8), Hint("primitive", 1 / t), Hint("riccati")):
        assert parse_hint(h.render()) == h


def test_missing_file(tmp_path):
    with pytest.raises(ProblemError):
        load_problem(tmp_path / "nope.ini")
