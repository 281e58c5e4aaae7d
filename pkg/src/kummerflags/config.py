"""JSON curve configurations and the bundled fixtures.

A configuration looks like::

    {
      "name": "hermitian16",
      "field": {"p": 2, "k": 4, "modulus": "x^4+x+1"},
      "curve": {"m": 5, "f": "x^4+x"},
      "Q": ["0"],
      "beta": [2],
      "places": "default"
    }

``Q`` lists the x-coordinates of the ramified places in the support of
``G``; ``places`` is ``"default"``, ``"cyclic"`` or an explicit list of
``[x, y]`` pairs. Field elements are written ``0``, ``1``, ``α^e`` (or
``a^e``) or as integers mod ``p``. Vectors may use ``value*count`` runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

import numpy as np

from .errors import ConfigError, KummerFlagsError
from .evalcode import EvalSet
from .finite_field import DTYPE, FieldSpec, parse_poly
from .kummer_curve import CurveSpec, curve_make, enumerate_places

FIXTURES = ("hermitian16", "koetter2", "koetter3", "f121")


def parse_vector(F: FieldSpec, text, symbol: str = "α") -> np.ndarray:
    """Parse ``"1*5, α*5, α^2"`` or a list of element strings."""
    items = text.split(",") if isinstance(text, str) else list(text)
    out: list[int] = []
    for item in items:
        item = str(item).strip()
        if not item:
            continue
        val, _, rep = item.partition("*")
        out.extend([F.parse(val, symbol)] * (int(rep) if rep else 1))
    return np.array(out, dtype=DTYPE)


def render_vector(F: FieldSpec, v, symbol: str = "α", runs: bool = True) -> str:
    """Inverse of :func:`parse_vector`; groups equal neighbours when ``runs``."""
    vals = [F.render(int(a), symbol) for a in v]
    if not runs:
        return ", ".join(vals)
    out = []
    i = 0
    while i < len(vals):
        j = i
        while j < len(vals) and vals[j] == vals[i]:
            j += 1
        out.append(vals[i] if j - i == 1 else f"{vals[i]}*{j - i}")
        i = j
    return ", ".join(out)


@dataclass
class Config:
    name: str
    field: FieldSpec
    curve: CurveSpec
    scope: tuple[int, ...]
    beta: tuple[int, ...]
    ordering: Any
    symbol: str = "α"
    raw: dict = field(default_factory=dict, repr=False)

    def eval_set(self, scope=None) -> EvalSet:
        return EvalSet.complement(self.curve, self.scope if scope is None else scope, self.ordering)

    def expected(self, key: str):
        return self.raw.get("expected", {}).get(key)

    def expected_vector(self, key: str) -> np.ndarray | None:
        v = self.expected(key)
        return None if v is None else parse_vector(self.field, v, self.symbol)


def _need(d: dict, key: str, where: str):
    if key not in d:
        raise ConfigError(f"missing '{key}' in {where}")
    return d[key]


def config_from_dict(d: dict) -> Config:
    try:
        fd = _need(d, "field", "config")
        p, k = int(_need(fd, "p", "field")), int(_need(fd, "k", "field"))
        symbol = d.get("symbol", "α")
        modulus = parse_poly(_need(fd, "modulus", "field"), p)
        F = FieldSpec(p, k, modulus, fd.get("generator", "x"))
        cd = _need(d, "curve", "config")
        fc = cd["f"]
        if isinstance(fc, str):
            coeffs = list(parse_poly(fc, p))
        else:
            coeffs = [F.parse(str(c), symbol) for c in fc]
        C = curve_make(F, int(_need(cd, "m", "curve")), coeffs)
        qs = [F.parse(str(x), symbol) for x in d.get("Q", [])]
        scope = []
        for x in qs:
            if x not in C.roots:
                raise ConfigError(f"Q at x={F.render(x, symbol)} is not a rational ramified place")
            scope.append(C.roots.index(x))
        beta = tuple(int(b) for b in d.get("beta", [0] * len(scope)))
        if len(beta) != len(scope):
            raise ConfigError("beta needs one entry per Q")
        places = d.get("places", "default")
        if not isinstance(places, str):
            places = [(F.parse(str(x), symbol), F.parse(str(y), symbol)) for x, y in places]
            enumerate_places(C, places)
        elif places not in ("default", "cyclic"):
            raise ConfigError(f"unknown place ordering {places!r}")
    except KummerFlagsError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(str(e)) from e
    return Config(d.get("name", "custom"), F, C, tuple(scope), beta, places, symbol, d)


def load_config(source) -> Config:
    """Load a config from a path, a fixture name or a dict."""
    if isinstance(source, dict):
        return config_from_dict(source)
    s = str(source)
    if s in FIXTURES:
        text = resources.files("kummerflags.fixtures").joinpath(f"{s}.json").read_text("utf-8")
    else:
        try:
            text = Path(s).read_text("utf-8")
        except OSError as e:
            raise ConfigError(f"cannot read config {s}: {e}") from e
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"invalid JSON in {s}: {e}") from e
    return config_from_dict(d)
