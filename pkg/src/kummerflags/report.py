"""Line-oriented reports.

The machine format is one ``key=value`` per line; keys may repeat and
order is kept, so parsing and re-rendering reproduces the input byte for
byte.  The human format aligns the same pairs for reading.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .config import render_vector
from .finite_field import FieldSpec


@dataclass
class Report:
    pairs: list[tuple[str, str]] = field(default_factory=list)

    def add(self, key: str, value) -> "Report":
        if "=" in key or "\n" in key:
            raise ValueError(f"bad report key {key!r}")
        text = value if isinstance(value, str) else _scalar(value)
        if "\n" in text:
            raise ValueError("report values must be single-line")
        self.pairs.append((key, text))
        return self

    def vector(self, key: str, F: FieldSpec, v, symbol: str = "α") -> "Report":
        return self.add(key, render_vector(F, v, symbol, runs=False).replace(" ", ""))

    def ints(self, key: str, values: Iterable[int]) -> "Report":
        return self.add(key, ",".join(str(int(a)) for a in values))

    def get(self, key: str, default=None):
        for k, v in self.pairs:
            if k == key:
                return v
        return default

    def get_all(self, key: str) -> list[str]:
        return [v for k, v in self.pairs if k == key]

    def render(self, fmt: str = "machine") -> str:
        if fmt == "machine":
            return "".join(f"{k}={v}\n" for k, v in self.pairs)
        if fmt == "human":
            w = max((len(k) for k, _ in self.pairs), default=0)
            return "".join(f"{k.ljust(w)} : {v}\n" for k, v in self.pairs)
        raise ValueError(f"unknown format {fmt!r}")


def _scalar(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (tuple, list)):
        return ",".join(str(int(a)) for a in value)
    return str(value)


def parse_machine(text: str) -> Report:
    rep = Report()
    for line in text.splitlines():
        if not line:
            continue
        k, sep, v = line.partition("=")
        if not sep:
            raise ValueError(f"malformed report line {line!r}")
        rep.pairs.append((k, v))
    return rep


def compress_ranges(values: Iterable[int]) -> str:
    """``[0, 1, 2, 5]`` -> ``"0..2,5"``."""
    vals = sorted(set(int(a) for a in values))
    out = []
    i = 0
    while i < len(vals):
        j = i
        while j + 1 < len(vals) and vals[j + 1] == vals[j] + 1:
            j += 1
        if j - i >= 2:
            out.append(f"{vals[i]}..{vals[j]}")
        else:
            out.extend(str(v) for v in vals[i:j + 1])
        i = j + 1
    return ",".join(out)


def expand_ranges(text: str) -> list[int]:
    """Inverse of :func:`compress_ranges`."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out
