"""Python interface to the gkz library.

Rational inputs may be given as ``Fraction``, ``int`` or fraction strings.
Series come back as ``Series`` objects with ``Fraction`` exponents and
coefficients.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from . import _gkz
from ._gkz import GkzError, command_names

RationalLike = Union[Fraction, int, str]

__all__ = [
    "GkzError",
    "Series",
    "annihilates",
    "axis_basis",
    "command_names",
    "ext_table",
    "generic_basis",
    "gevrey_index",
    "monodromy_eigenvalues",
    "normalize_spec",
    "resonance_data",
    "run_command",
]


def _q(x: RationalLike) -> str:
    return str(Fraction(x))


@dataclass
class Series:
    terms: dict = field(default_factory=dict)
    truncation: dict = field(default_factory=dict)
    raw: str = ""

    @classmethod
    def from_json(cls, text: str) -> "Series":
        j = json.loads(text)
        terms = {(Fraction(t["e1"]), Fraction(t["e2"])): Fraction(t["c"]) for t in j["terms"]}
        return cls(terms, j["truncation"], text)

    def __len__(self) -> int:
        return len(self.terms)


def run_command(spec: str, command: str, format: str = "json"):
    out = _gkz.run_command(spec, command, format)
    return json.loads(out) if format == "json" else out


def normalize_spec(text: str) -> str:
    return _gkz.normalize_spec(text)


def axis_basis(a: int, b: int, beta: RationalLike, M: int) -> list[Series]:
    return [Series.from_json(s) for s in _gkz.axis_basis(a, b, _q(beta), M)]


def generic_basis(a: int, b: int, beta: RationalLike, M: int) -> list[Series]:
    return [Series.from_json(s) for s in _gkz.generic_basis(a, b, _q(beta), M)]


def annihilates(a: int, b: int, beta: RationalLike, series: Series) -> tuple[bool, bool]:
    """(P f == 0, E f == 0) on the region the truncation determines."""
    return _gkz.annihilates(a, b, _q(beta), series.raw)


def gevrey_index(series: Series) -> dict:
    return _gkz.gevrey_index(series.raw)


def resonance_data(a: int, b: int, beta: RationalLike) -> Optional[dict]:
    rd = _gkz.resonance_data(a, b, _q(beta))
    if rd is not None:
        rd["vtilde"] = tuple(Fraction(x) for x in rd["vtilde"])
    return rd


def monodromy_eigenvalues(a: int, b: int, beta: RationalLike) -> list[complex]:
    return _gkz.monodromy_eigenvalues(a, b, _q(beta))


def ext_table(a: int, b: int, beta: RationalLike, epsilon: Optional[RationalLike],
              s: Union[RationalLike, float], sheaf: str = "O") -> dict:
    """Predicted and measured Ext dimensions; epsilon None means the origin."""
    s_text = "inf" if s == float("inf") or s == "inf" else _q(s)
    eps = None if epsilon is None else _q(epsilon)
    return json.loads(_gkz.ext_table(a, b, _q(beta), eps, s_text, sheaf))
