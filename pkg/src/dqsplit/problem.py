"""Problem files: a sectioned key/value text file read with configparser.

    [field]
    t_prime = "1"

    [algebra]
    alpha = "1"
    beta = "t"

    [derivation]
    a1 = "-1/(8*t)"
    a2 = "0"
    a3 = "0"

    [hints]
    log = "primitive:1/t"

Hint values are "radical:n:expr", "primitive:expr", "hyperexp:expr" or
"riccati:auto"; hint keys are free-form labels.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from pathlib import Path

from .arith import RatFunc
from .arith import render as render_ratfunc
from .engine import Hint
from .parse import ParseError, parse_expr
from .quaternion import DerivationSpec, QuatAlgebra
from .tower import DiffBase


class ProblemError(ValueError):
    pass


@dataclass
class ProblemSpec:
    t_prime: RatFunc
    alpha: RatFunc
    beta: RatFunc
    a1: RatFunc
    a2: RatFunc
    a3: RatFunc
    hints: tuple = field(default_factory=tuple)

    def algebra(self) -> QuatAlgebra:
        return QuatAlgebra(self.alpha, self.beta, DiffBase(self.t_prime))

    def derivation(self) -> DerivationSpec:
        return DerivationSpec(self.a1, self.a2, self.a3)

    def rendered(self) -> dict:
        return {name: render_ratfunc(getattr(self, name))
                for name in ("t_prime", "alpha", "beta", "a1", "a2", "a3")}


_LAYOUT = {
    "field": ("t_prime",),
    "algebra": ("alpha", "beta"),
    "derivation": ("a1", "a2", "a3"),
}


def _unquote(value: str) -> str:
    value = value.strip()
    if len(value) >= 2 and value[0] == value[-1] and value[0] in "\"'":
        return value[1:-1]
    return value


def _expr(section: str, key: str, raw: str) -> RatFunc:
    try:
        return parse_expr(_unquote(raw))
    except ParseError as exc:
        raise ProblemError(f"[{section}] {key}: {exc}") from exc


def parse_hint(text: str) -> Hint:
    text = _unquote(text)
    kind, _, rest = text.partition(":")
    kind = kind.strip()
    try:
        if kind == "radical":
            n, _, expr = rest.partition(":")
            if not n.strip().isdigit() or int(n) < 2:
                raise ProblemError(f"radical hint needs an index n >= 2: {text!r}")
            return Hint("radical", parse_expr(expr), int(n))
        if kind in ("primitive", "hyperexp"):
            return Hint(kind, parse_expr(rest))
        if kind == "riccati" and rest.strip() == "auto":
            return Hint("riccati")
    except ParseError as exc:
        raise ProblemError(f"hint {text!r}: {exc}") from exc
    raise ProblemError(f"unknown hint {text!r}")


def problem_from_string(text: str) -> ProblemSpec:
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ProblemError(f"malformed problem file: {exc}") from exc
    values = {}
    for section, keys in _LAYOUT.items():
        if not cp.has_section(section):
            raise ProblemError(f"missing section [{section}]")
        for key in keys:
            if not cp.has_option(section, key):
                raise ProblemError(f"missing key {key!r} in [{section}]")
            values[key] = _expr(section, key, cp.get(section, key))
    for key in ("alpha", "beta"):
        if not values[key]:
            raise ProblemError(f"{key} must be nonzero")
    hints = ()
    if cp.has_section("hints"):
        hints = tuple(parse_hint(v) for _, v in cp.items("hints"))
    return ProblemSpec(hints=hints, **values)


def load_problem(path) -> ProblemSpec:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ProblemError(f"cannot read {path}: {exc}") from exc
    return problem_from_string(text)
