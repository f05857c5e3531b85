"""Sampled subsets of the closed upper half-plane.

Supported shapes: rays ``e^{i pi beta}[h, inf)`` with ``beta`` in (0, 1],
horizontal lines ``R + ih``, the real axis, horizontal rays
``i y0 + [h, inf)``, and disjoint unions.  Each domain carries a
deterministic sampling grid: geometric with the configured ratio out to
``rmax``.  Lines and the axis sample symmetrically and always include
the point above 0, so suprema attained at the imaginary axis are hit
exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .defaults import DEFAULTS
from .errors import ConfigError


@dataclass(frozen=True)
class SampledDomain:
    kind: str                      # ray | line | axis | hray | union
    beta: float = 0.5              # ray direction as a fraction of pi
    h: float = 0.0                 # start offset (ray radius / hray abscissa)
    y0: float = 0.0                # height of lines / horizontal rays
    ratio: float = 0.0             # geometric grid ratio (0 -> default)
    rmax: float = 0.0              # grid extent (0 -> default)
    parts: tuple = ()              # union members

    def _ratio(self) -> float:
        return self.ratio if self.ratio > 1.0 else DEFAULTS["grid_ratio"]

    def _rmax(self) -> float:
        return self.rmax if self.rmax > 0.0 else DEFAULTS["grid_rmax"]

    def _geometric(self, start: float) -> np.ndarray:
        stop = self._rmax()
        if stop <= start:
            raise ConfigError(f"grid extent {stop} does not exceed start {start}")
        n = int(math.floor(math.log(stop / start) / math.log(self._ratio()))) + 1
        g = start * self._ratio() ** np.arange(n)
        return np.append(g, stop) if g[-1] < stop else g

    def points(self) -> np.ndarray:
        if self.kind == "ray":
            if not (0.0 < self.beta <= 1.0):
                raise ConfigError("ray direction beta must lie in (0, 1]")
            r = self._geometric(max(self.h, 1.0))
            return r * np.exp(1j * math.pi * self.beta)
        if self.kind in ("line", "axis"):
            y = 0.0 if self.kind == "axis" else self.y0
            x = self._geometric(1.0)
            xs = np.concatenate([-x[::-1], [0.0], x])
            return xs + 1j * y
        if self.kind == "hray":
            x = self._geometric(max(self.h, 1.0))
            return x + 1j * self.y0
        if self.kind == "union":
            pts = [p.points() for p in self.parts]
            flat = np.concatenate(pts)
            if np.unique(flat).size != flat.size:
                raise ConfigError("union parts must be disjoint")
            return flat
        raise ConfigError(f"unknown domain kind {self.kind!r}")

    def to_json(self) -> dict:
        if self.kind == "union":
            return {"kind": "union", "parts": [p.to_json() for p in self.parts]}
        d = {"kind": self.kind}
        if self.kind == "ray":
            d.update(beta=self.beta, h=self.h)
        elif self.kind == "line":
            d.update(y0=self.y0)
        elif self.kind == "hray":
            d.update(y0=self.y0, h=self.h)
        if self.ratio > 1.0:
            d["ratio"] = self.ratio
        if self.rmax > 0.0:
            d["rmax"] = self.rmax
        return d

    @classmethod
    def from_json(cls, d: dict) -> "SampledDomain":
        kind = d.get("kind")
        if kind == "union":
            return union(*[cls.from_json(p) for p in d["parts"]])
        kw = {"ratio": float(d.get("ratio", 0.0)), "rmax": float(d.get("rmax", 0.0))}
        if kind == "ray":
            return ray(float(d.get("beta", 0.5)), float(d.get("h", 1.0)), **kw)
        if kind == "line":
            return line(float(d.get("y0", d.get("h", 0.0))), **kw)
        if kind == "axis":
            return axis(**kw)
        if kind == "hray":
            return horizontal_ray(float(d.get("y0", 0.0)), float(d.get("h", 1.0)), **kw)
        raise ConfigError(f"unknown domain kind {kind!r}")


def ray(beta: float = 0.5, h: float = 1.0, ratio: float = 0.0,
        rmax: float = 0.0) -> SampledDomain:
    """Ray e^{i pi beta}[h, inf); beta = 1/2 is the imaginary half-axis."""
    return SampledDomain("ray", beta=beta, h=h, ratio=ratio, rmax=rmax)


def line(y0: float, ratio: float = 0.0, rmax: float = 0.0) -> SampledDomain:
    """Horizontal line R + i y0, y0 >= 0."""
    if y0 < 0:
        raise ConfigError("lines must lie in the closed upper half-plane")
    return SampledDomain("line", y0=y0, ratio=ratio, rmax=rmax)


def axis(ratio: float = 0.0, rmax: float = 0.0) -> SampledDomain:
    return SampledDomain("axis", ratio=ratio, rmax=rmax)


def horizontal_ray(y0: float, h: float = 1.0, ratio: float = 0.0,
                   rmax: float = 0.0) -> SampledDomain:
    """Horizontal ray i y0 + [h, inf)."""
    if y0 < 0:
        raise ConfigError("horizontal rays must lie in the closed upper half-plane")
    return SampledDomain("hray", y0=y0, h=h, ratio=ratio, rmax=rmax)


def union(*parts: SampledDomain) -> SampledDomain:
    return SampledDomain("union", parts=tuple(parts))
