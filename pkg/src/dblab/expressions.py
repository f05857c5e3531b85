"""Evaluable expression trees for entire functions.

The node set covers closed forms (constants, the identity, ``exp(c*z)``,
``sin``, ``cos``, polynomials), arithmetic combinations, affine
composition, integer powers, truncated canonical products over a declared
zero sequence, and partial-fraction series over a pole sequence.  Every
node evaluates vectorized over numpy arrays of complex points and carries
an absolute-error estimate (truncation + bounded roundoff) alongside the
value.

Expressions are immutable after construction and evaluation is pure, so
values are safe to share across threads.

The ``#``-conjugate ``F#(z) = conj(F(conj z))`` is implemented
structurally: every node knows its own conjugate, so double conjugation
returns a tree that evaluates identically to the original.

JSON codec: each node serializes to ``{"kind": ..., ...}`` with complex
payloads as ``[re, im]`` pairs.  Zero/pole sequences serialize either as
explicit lists or as named generator specs resolved through
``SEQUENCE_BUILDERS`` / ``POLE_SEQUENCE_BUILDERS`` (populated by
:mod:`dblab.examples` at import time).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .defaults import DEFAULTS
from .errors import ConfigError, PoleHit, RadiusTooLarge, TruncationBudgetExceeded

EPS = float(np.finfo(float).eps)

# product/series chunks sized so a temporary (points x terms) block stays small
_BLOCK = 2 ** 21


def _c2pair(c: complex) -> list:
    c = complex(c)
    return [c.real, c.imag]


def _pair2c(p) -> complex:
    if isinstance(p, (int, float)):
        return complex(p)
    if not (isinstance(p, (list, tuple)) and len(p) == 2):
        raise ConfigError(f"expected [re, im] pair, got {p!r}")
    return complex(float(p[0]), float(p[1]))


@dataclass(frozen=True)
class EvalResult:
    """Value plus a nonnegative absolute-error estimate."""

    value: complex
    abs_error: float

    def __post_init__(self):
        if not (self.abs_error >= 0.0 and math.isfinite(self.abs_error)):
            raise ValueError(f"abs_error must be finite and >= 0, got {self.abs_error}")


# ---------------------------------------------------------------------------
# zero / pole sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZeroSequence:
    """Finite truncation of a declared zero set of an entire function.

    ``tail_log_bound(R)`` bounds ``|log of the omitted tail|`` on the disk
    ``|z| <= R`` *after* any first-order tail correction has been applied
    (the correction is ``exp(-z * tail_inv_sum)`` with
    ``tail_inv_sum = sum of 1/z_n over the omitted indices``).  Builders
    are responsible for making the bound nonincreasing in the truncation
    length.  ``None`` means the sequence is exact (finite zero set).
    """

    label: str
    zeros: np.ndarray
    genus: int = 0
    tail_log_bound: Optional[Callable] = None
    tail_inv_sum: Optional[complex] = None
    spec: Optional[dict] = None

    def __post_init__(self):
        if self.genus not in (0, 1):
            raise ConfigError("declared genus must be 0 or 1")
        zs = np.asarray(self.zeros, dtype=complex)
        object.__setattr__(self, "zeros", zs)
        if zs.size and np.any(zs == 0):
            raise ConfigError("canonical-product zeros must be nonzero")

    def __len__(self) -> int:
        return int(self.zeros.size)

    def conjugated(self) -> "ZeroSequence":
        spec = {"kind": "conjugate", "base": self.spec} if self.spec else None
        inv = None if self.tail_inv_sum is None else np.conj(self.tail_inv_sum)
        return ZeroSequence(self.label + "#", np.conj(self.zeros), self.genus,
                            self.tail_log_bound, inv, spec)

    def genus0_partial_sums(self, n_checks: int = 6) -> np.ndarray:
        """Partial sums of 1/|z_n| at geometric prefixes (monotone, for the
        genus-0 convergence check)."""
        inv = np.sort(1.0 / np.abs(self.zeros))[::-1]
        cum = np.cumsum(inv)
        idx = np.unique(np.geomspace(1, len(inv), n_checks).astype(int)) - 1
        return cum[idx]

    def tail_bound_at(self, r) -> np.ndarray:
        if self.tail_log_bound is None:
            return np.zeros_like(np.asarray(r, dtype=float))
        return np.asarray(self.tail_log_bound(np.asarray(r, dtype=float)), dtype=float)


@dataclass(frozen=True)
class PoleSequence:
    """Real poles ``t_n`` with nonnegative masses ``mu_n`` for
    partial-fraction series ``sum mu_n * (1/(t_n - z) - 1/t_n)``."""

    label: str
    poles: np.ndarray
    weights: np.ndarray
    tail_abs_bound: Optional[Callable] = None
    spec: Optional[dict] = None

    def __post_init__(self):
        object.__setattr__(self, "poles", np.asarray(self.poles, dtype=float))
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=float))
        if self.poles.shape != self.weights.shape:
            raise ConfigError("poles and weights must have matching shapes")
        if np.any(self.poles == 0):
            raise ConfigError("pole at 0 not representable in the normalized series")

    def __len__(self) -> int:
        return int(self.poles.size)


# named generator registries; examples.py registers its builders on import
SEQUENCE_BUILDERS: dict = {}
POLE_SEQUENCE_BUILDERS: dict = {}


def zero_sequence_from_spec(spec: dict) -> ZeroSequence:
    kind = spec.get("kind")
    if kind == "list":
        zs = np.array([_pair2c(p) for p in spec["zeros"]], dtype=complex)
        return ZeroSequence("list", zs, int(spec.get("genus", 0)), None, None, spec)
    if kind == "conjugate":
        return zero_sequence_from_spec(spec["base"]).conjugated()
    if kind == "named":
        name = spec.get("name")
        if name not in SEQUENCE_BUILDERS:
            raise ConfigError(f"unknown zero-sequence generator {name!r}")
        return SEQUENCE_BUILDERS[name](**spec.get("params", {}))
    raise ConfigError(f"bad zero-sequence spec: {spec!r}")


def pole_sequence_from_spec(spec: dict) -> PoleSequence:
    kind = spec.get("kind")
    if kind == "list":
        return PoleSequence("list", np.asarray(spec["poles"], dtype=float),
                            np.asarray(spec["weights"], dtype=float), None, spec)
    if kind == "named":
        name = spec.get("name")
        if name not in POLE_SEQUENCE_BUILDERS:
            raise ConfigError(f"unknown pole-sequence generator {name!r}")
        return POLE_SEQUENCE_BUILDERS[name](**spec.get("params", {}))
    raise ConfigError(f"bad pole-sequence spec: {spec!r}")


# ---------------------------------------------------------------------------
# expression nodes
# ---------------------------------------------------------------------------

class FunctionExpr:
    """Base class. Subclasses implement ``_eval`` and ``sharp``."""

    kind = "?"

    def _eval(self, z: np.ndarray, ctx: dict):
        raise NotImplementedError

    def sharp(self) -> "FunctionExpr":
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    # -- evaluation entry points ------------------------------------------

    def eval_array(self, z, **opts):
        """Vectorized evaluation; returns (values, abs_error_estimates)."""
        ctx = _make_ctx(opts)
        zz = np.asarray(z, dtype=complex)
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            vals, errs = self._eval(np.atleast_1d(zz), ctx)
        vals = np.asarray(vals, dtype=complex).reshape(np.atleast_1d(zz).shape)
        errs = np.asarray(errs, dtype=float).reshape(np.atleast_1d(zz).shape)
        if zz.shape == ():
            return vals[0], errs[0]
        return vals, errs

    def values(self, z, **opts) -> np.ndarray:
        return self.eval_array(z, **opts)[0]

    def at(self, z, **opts) -> complex:
        v, _ = self.eval_array(complex(z), **opts)
        return complex(v)

    # -- arithmetic sugar ---------------------------------------------------

    def __add__(self, other):
        return Sum([self, as_expr(other)])

    def __radd__(self, other):
        return Sum([as_expr(other), self])

    def __sub__(self, other):
        return Sum([self, Product([Const(-1.0), as_expr(other)])])

    def __neg__(self):
        return Product([Const(-1.0), self])

    def __mul__(self, other):
        return Product([self, as_expr(other)])

    def __rmul__(self, other):
        return Product([as_expr(other), self])

    def __truediv__(self, other):
        return Quotient(self, as_expr(other))

    def __rtruediv__(self, other):
        return Quotient(as_expr(other), self)


def as_expr(x) -> FunctionExpr:
    if isinstance(x, FunctionExpr):
        return x
    if isinstance(x, (int, float, complex)):
        return Const(complex(x))
    raise TypeError(f"cannot coerce {type(x)} to FunctionExpr")


def _make_ctx(opts: dict) -> dict:
    return {
        "max_terms": opts.get("max_terms", DEFAULTS["max_series_terms"]),
        "pole_exclusion_scale": opts.get("pole_exclusion_scale",
                                         DEFAULTS["pole_exclusion_scale"]),
    }


class Const(FunctionExpr):
    kind = "const"

    def __init__(self, value):
        self.value = complex(value)

    def _eval(self, z, ctx):
        v = np.full(z.shape, self.value, dtype=complex)
        return v, np.full(z.shape, abs(self.value) * EPS)

    def sharp(self):
        return Const(np.conj(self.value))

    def to_json(self):
        return {"kind": "const", "value": _c2pair(self.value)}


class Z(FunctionExpr):
    kind = "z"

    def _eval(self, z, ctx):
        return z.copy(), np.abs(z) * EPS

    def sharp(self):
        return Z()

    def to_json(self):
        return {"kind": "z"}


class ExpCZ(FunctionExpr):
    """exp(c*z)."""

    kind = "exp"

    def __init__(self, coeff):
        self.coeff = complex(coeff)

    def _eval(self, z, ctx):
        v = np.exp(self.coeff * z)
        return v, 4.0 * EPS * np.abs(v) * (1.0 + np.abs(self.coeff * z))

    def sharp(self):
        return ExpCZ(np.conj(self.coeff))

    def to_json(self):
        return {"kind": "exp", "coeff": _c2pair(self.coeff)}


class Sin(FunctionExpr):
    kind = "sin"

    def _eval(self, z, ctx):
        v = np.sin(z)
        return v, 4.0 * EPS * (np.abs(v) + np.abs(z))

    def sharp(self):
        return Sin()

    def to_json(self):
        return {"kind": "sin"}


class Cos(FunctionExpr):
    kind = "cos"

    def _eval(self, z, ctx):
        v = np.cos(z)
        return v, 4.0 * EPS * (np.abs(v) + np.abs(z))

    def sharp(self):
        return Cos()

    def to_json(self):
        return {"kind": "cos"}


def csinc(w: np.ndarray) -> np.ndarray:
    """Entire ``sin(w)/w`` (value 1 at 0), complex-safe."""
    w = np.asarray(w, dtype=complex)
    small = np.abs(w) < 1e-4
    ws = np.where(small, 0.0, w)
    with np.errstate(invalid="ignore", over="ignore"):
        big = np.sin(ws) / np.where(small, 1.0, ws)
    w2 = w * w
    series = 1.0 - w2 / 6.0 + w2 * w2 / 120.0
    return np.where(small, series, big)


class Sinc(FunctionExpr):
    """Entire sin(z)/z; keeps Paley-Wiener kernels evaluable at their
    removable singularity."""

    kind = "sinc"

    def _eval(self, z, ctx):
        v = csinc(z)
        return v, 4.0 * EPS * (np.abs(v) + 1.0)

    def sharp(self):
        return Sinc()

    def to_json(self):
        return {"kind": "sinc"}


class Poly(FunctionExpr):
    """Polynomial with complex coefficients, ascending degree order."""

    kind = "poly"

    def __init__(self, coeffs: Sequence[complex]):
        self.coeffs = np.asarray(list(coeffs), dtype=complex)
        if self.coeffs.size == 0:
            self.coeffs = np.zeros(1, dtype=complex)

    def _eval(self, z, ctx):
        v = np.polynomial.polynomial.polyval(z, self.coeffs)
        az = np.abs(z)
        cond = np.polynomial.polynomial.polyval(az, np.abs(self.coeffs))
        return v, EPS * (self.coeffs.size + 1) * cond

    def sharp(self):
        return Poly(np.conj(self.coeffs))

    def roots(self) -> np.ndarray:
        c = np.trim_zeros(self.coeffs, "b")
        if c.size <= 1:
            return np.empty(0, dtype=complex)
        return np.polynomial.polynomial.polyroots(c)

    def to_json(self):
        return {"kind": "poly", "coeffs": [_c2pair(c) for c in self.coeffs]}


class Affine(FunctionExpr):
    """child(scale*z + shift)."""

    kind = "affine"

    def __init__(self, child: FunctionExpr, scale, shift=0.0):
        self.child = child
        self.scale = complex(scale)
        self.shift = complex(shift)

    def _eval(self, z, ctx):
        return self.child._eval(self.scale * z + self.shift, ctx)

    def sharp(self):
        return Affine(self.child.sharp(), np.conj(self.scale), np.conj(self.shift))

    def to_json(self):
        return {"kind": "affine", "child": self.child.to_json(),
                "scale": _c2pair(self.scale), "shift": _c2pair(self.shift)}


class Sum(FunctionExpr):
    kind = "sum"

    def __init__(self, children: Sequence[FunctionExpr]):
        self.children = list(children)

    def _eval(self, z, ctx):
        v = np.zeros(z.shape, dtype=complex)
        e = np.zeros(z.shape)
        for c in self.children:
            cv, ce = c._eval(z, ctx)
            v = v + cv
            e = e + ce + EPS * np.abs(v)
        return v, e

    def sharp(self):
        return Sum([c.sharp() for c in self.children])

    def to_json(self):
        return {"kind": "sum", "children": [c.to_json() for c in self.children]}


class Product(FunctionExpr):
    kind = "product"

    def __init__(self, children: Sequence[FunctionExpr]):
        self.children = list(children)

    def _eval(self, z, ctx):
        v = np.ones(z.shape, dtype=complex)
        e = np.zeros(z.shape)
        for c in self.children:
            cv, ce = c._eval(z, ctx)
            e = e * np.abs(cv) + ce * np.abs(v) + EPS * np.abs(v * cv)
            v = v * cv
        return v, e

    def sharp(self):
        return Product([c.sharp() for c in self.children])

    def to_json(self):
        return {"kind": "product", "children": [c.to_json() for c in self.children]}


class Quotient(FunctionExpr):
    kind = "quotient"

    def __init__(self, num: FunctionExpr, den: FunctionExpr):
        self.num = num
        self.den = den
        self._den_roots = None
        if isinstance(den, Poly):
            self._den_roots = den.roots()

    def _eval(self, z, ctx):
        nv, ne = self.num._eval(z, ctx)
        dv, de = self.den._eval(z, ctx)
        excl = ctx["pole_exclusion_scale"] * (1.0 + np.abs(z))
        if self._den_roots is not None and self._den_roots.size:
            dist = np.min(np.abs(z[..., None] - self._den_roots[None, :]), axis=-1)
            if np.any(dist < excl):
                zbad = z[dist < excl].ravel()[0]
                raise PoleHit(f"z={zbad} within exclusion radius of a denominator zero")
        else:
            # overflow (inf) denominators are fine: the quotient underflows to 0
            bad = dv == 0
            if np.any(bad):
                raise PoleHit(f"denominator vanished at z={z[bad].ravel()[0]}")
        v = nv / dv
        e = (ne + np.abs(v) * de) / np.abs(dv) + EPS * np.abs(v)
        return v, e

    def sharp(self):
        return Quotient(self.num.sharp(), self.den.sharp())

    def to_json(self):
        return {"kind": "quotient", "num": self.num.to_json(), "den": self.den.to_json()}


class Power(FunctionExpr):
    kind = "power"

    def __init__(self, child: FunctionExpr, exponent: int):
        if int(exponent) != exponent or exponent < 0:
            raise ConfigError("power exponent must be a nonnegative integer")
        self.child = child
        self.exponent = int(exponent)

    def _eval(self, z, ctx):
        cv, ce = self.child._eval(z, ctx)
        k = self.exponent
        v = cv ** k
        e = k * np.abs(cv) ** max(k - 1, 0) * ce + EPS * np.abs(v)
        return v, e

    def sharp(self):
        return Power(self.child.sharp(), self.exponent)

    def to_json(self):
        return {"kind": "power", "child": self.child.to_json(), "exponent": self.exponent}


class CanonicalProduct(FunctionExpr):
    """Truncated canonical product over a ZeroSequence.

    Genus 0: ``prod (1 - z/z_n)``, times the first-order tail correction
    ``exp(-z * tail_inv_sum)`` when the sequence supplies the omitted
    inverse sum.  Genus 1: ``prod (1 - z/z_n) exp(z/z_n)``.
    """

    kind = "canonical-product"

    def __init__(self, seq: ZeroSequence):
        self.seq = seq
        self._genus1_inv_sum = None

    def _eval(self, z, ctx):
        n = len(self.seq)
        if n > ctx["max_terms"]:
            raise TruncationBudgetExceeded(
                f"{n} product terms exceed the budget of {ctx['max_terms']}")
        flat = z.ravel()
        v = np.ones(flat.shape, dtype=complex)
        zs = self.seq.zeros
        step = max(1, _BLOCK // max(1, flat.size))
        for i in range(0, n, step):
            block = 1.0 - flat[:, None] / zs[None, i:i + step]
            v *= np.prod(block, axis=1)
        if self.seq.genus == 1:
            if self._genus1_inv_sum is None:
                self._genus1_inv_sum = complex(np.sum(1.0 / zs)) if n else 0.0
            v *= np.exp(flat * self._genus1_inv_sum)
        elif self.seq.tail_inv_sum is not None:
            v *= np.exp(-flat * self.seq.tail_inv_sum)
        tail = self.seq.tail_bound_at(np.abs(flat))
        # expm1 keeps the estimate faithful when the tail bound is not small
        e = np.abs(v) * (np.abs(np.expm1(tail)) + 32.0 * EPS + math.sqrt(max(n, 1)) * EPS)
        return v.reshape(z.shape), e.reshape(z.shape)

    def sharp(self):
        return CanonicalProduct(self.seq.conjugated())

    def to_json(self):
        spec = self.seq.spec
        if spec is None:
            if len(self.seq) > 10_000:
                raise ConfigError("zero sequence too large for inline serialization")
            spec = {"kind": "list", "genus": self.seq.genus,
                    "zeros": [_c2pair(c) for c in self.seq.zeros]}
        return {"kind": "canonical-product", "zeros": spec}


class PartialFractions(FunctionExpr):
    """``sum mu_n (1/(t_n - z) - 1/t_n)`` over a truncated PoleSequence."""

    kind = "partial-fractions"

    def __init__(self, seq: PoleSequence):
        self.seq = seq

    def _eval(self, z, ctx):
        n = len(self.seq)
        if n > ctx["max_terms"]:
            raise TruncationBudgetExceeded(
                f"{n} series terms exceed the budget of {ctx['max_terms']}")
        flat = z.ravel()
        excl = ctx["pole_exclusion_scale"] * (1.0 + np.abs(flat))
        v = np.zeros(flat.shape, dtype=complex)
        absacc = np.zeros(flat.shape)
        t, mu = self.seq.poles, self.seq.weights
        step = max(1, _BLOCK // max(1, flat.size))
        mindist = np.full(flat.shape, np.inf)
        for i in range(0, n, step):
            tb, mb = t[None, i:i + step], mu[None, i:i + step]
            diff = tb - flat[:, None]
            mindist = np.minimum(mindist, np.min(np.abs(diff), axis=1))
            term = mb * flat[:, None] / (tb * diff)
            v += np.sum(term, axis=1)
            absacc += np.sum(np.abs(term), axis=1)
        if np.any(mindist < excl):
            zbad = flat[mindist < excl][0]
            raise PoleHit(f"z={zbad} within exclusion radius of a series pole")
        tail = np.zeros(flat.shape)
        if self.seq.tail_abs_bound is not None:
            tail = np.asarray(self.seq.tail_abs_bound(np.abs(flat)), dtype=float)
        e = tail + 32.0 * EPS * absacc
        return v.reshape(z.shape), e.reshape(z.shape)

    def sharp(self):
        # real poles and masses: the series is its own #-conjugate
        return PartialFractions(self.seq)

    def to_json(self):
        spec = self.seq.spec
        if spec is None:
            if len(self.seq) > 10_000:
                raise ConfigError("pole sequence too large for inline serialization")
            spec = {"kind": "list", "poles": self.seq.poles.tolist(),
                    "weights": self.seq.weights.tolist()}
        return {"kind": "partial-fractions", "poles": spec}


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def evaluate(f: FunctionExpr, z, **opts) -> EvalResult:
    """Evaluate ``f`` at a single point with an absolute-error estimate."""
    v, e = f.eval_array(complex(z), **opts)
    return EvalResult(complex(v), float(e))


def sharp(f: FunctionExpr) -> FunctionExpr:
    return f.sharp()


def derivative(f: FunctionExpr, z, order: int = 1, *, radius: float | None = None,
               nodes: int | None = None, **opts) -> EvalResult:
    """Derivative of order 1 or 2 via a Cauchy-integral mean.

    Trapezoid rule on a circle of radius ``radius`` (default
    ``1e-3*(1+|z|)``) with ``nodes`` points; spectrally accurate for
    entire integrands.  The error estimate compares the full-node result
    with the half-node result and adds propagated evaluation error.
    """
    if order not in (1, 2):
        raise ConfigError("derivative order must be 1 or 2")
    z = complex(z)
    r = radius if radius is not None else DEFAULTS["derivative_radius_scale"] * (1.0 + abs(z))
    m = nodes if nodes is not None else DEFAULTS["derivative_nodes"]
    theta = 2.0 * np.pi * np.arange(m) / m
    ring = z + r * np.exp(1j * theta)
    try:
        vals, errs = f.eval_array(ring, **opts)
    except PoleHit as exc:
        raise RadiusTooLarge(f"derivative circle of radius {r} at z={z}: {exc}") from exc
    fact = math.factorial(order)
    phase = np.exp(-1j * order * theta)
    d_full = fact / (m * r ** order) * np.sum(vals * phase)
    d_half = fact / ((m // 2) * r ** order) * np.sum(vals[::2] * phase[::2])
    err = abs(d_full - d_half) + fact / r ** order * float(np.mean(errs))
    return EvalResult(complex(d_full), float(err))


def derivative_values(f: FunctionExpr, zs: np.ndarray, order: int = 1, **kw) -> np.ndarray:
    """Vectorized derivative values over an array of points."""
    zs = np.atleast_1d(np.asarray(zs, dtype=complex))
    out = np.empty(zs.shape, dtype=complex)
    for i, zi in enumerate(zs.ravel()):
        out.ravel()[i] = derivative(f, zi, order, **kw).value
    return out


# ---------------------------------------------------------------------------
# JSON codec
# ---------------------------------------------------------------------------

def expr_to_json(f: FunctionExpr) -> dict:
    return f.to_json()


def expr_from_json(d: dict) -> FunctionExpr:
    if not isinstance(d, dict) or "kind" not in d:
        raise ConfigError(f"expression spec must be an object with a 'kind': {d!r}")
    k = d["kind"]
    try:
        if k == "const":
            return Const(_pair2c(d["value"]))
        if k == "z":
            return Z()
        if k == "exp":
            return ExpCZ(_pair2c(d["coeff"]))
        if k == "sin":
            return Sin()
        if k == "cos":
            return Cos()
        if k == "sinc":
            return Sinc()
        if k == "poly":
            return Poly([_pair2c(c) for c in d["coeffs"]])
        if k == "affine":
            return Affine(expr_from_json(d["child"]), _pair2c(d["scale"]),
                          _pair2c(d.get("shift", [0.0, 0.0])))
        if k == "sum":
            return Sum([expr_from_json(c) for c in d["children"]])
        if k == "product":
            return Product([expr_from_json(c) for c in d["children"]])
        if k == "quotient":
            return Quotient(expr_from_json(d["num"]), expr_from_json(d["den"]))
        if k == "power":
            return Power(expr_from_json(d["child"]), int(d["exponent"]))
        if k in ("sharp", "sharp-conjugate"):
            return expr_from_json(d["child"]).sharp()
        if k == "canonical-product":
            return CanonicalProduct(zero_sequence_from_spec(d["zeros"]))
        if k == "partial-fractions":
            return PartialFractions(pole_sequence_from_spec(d["poles"]))
    except KeyError as exc:
        raise ConfigError(f"expression spec {k!r} missing field {exc}") from exc
    raise ConfigError(f"unknown expression kind {k!r}")
