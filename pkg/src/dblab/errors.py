"""Exception taxonomy shared by all dblab modules.

Every computational failure mode gets its own class so the CLI can map it
to a structured ``{kind, detail}`` error object and exit code 1.  The
``kind`` string is stable; tests and downstream tooling match on it.
"""

from __future__ import annotations


class DblabError(Exception):
    """Base class for all computation errors."""

    kind = "error"

    def payload(self) -> dict:
        return {"kind": self.kind, "detail": str(self)}


class PoleHit(DblabError):
    """Evaluation point inside the exclusion radius of a pole."""

    kind = "pole-hit"


class TruncationBudgetExceeded(DblabError):
    """A series/product node asked for more terms than the configured cap."""

    kind = "truncation-budget-exceeded"


class RadiusTooLarge(DblabError):
    """Derivative circle intersects an excluded pole."""

    kind = "radius-too-large"


class NonConvergentTail(DblabError):
    """Integrand envelope decays slower than 1/t**1.05; integral not certified."""

    kind = "non-convergent-tail"


class AllPointsDiscarded(DblabError):
    """Mean-type fit lost every sample to the tiny-modulus cutoff."""

    kind = "all-points-discarded"


class AllPointsExcluded(DblabError):
    """Every majorization sample fell inside a zero-divisor exclusion ball."""

    kind = "all-points-excluded"


class ZeroOnAxis(DblabError):
    """Structure function vanishes at the requested real point."""

    kind = "zero-of-E-on-axis"


class MissingZeroData(DblabError):
    """Zero-sum phase-derivative route requested without a zero set."""

    kind = "missing-zero-data"


class NegativeRadicand(DblabError):
    """Kernel-norm radicand significantly negative: input is not Hermite-Biehler."""

    kind = "negative-radicand"


class DegenerateInner(DblabError):
    """Cayley transform denominator vanishes identically."""

    kind = "degenerate-inner"


class NegativeRealPart(DblabError):
    """Herglotz extraction fed a function without nonnegative real part."""

    kind = "negative-real-part"


class EnvelopeNotDecaying(DblabError):
    """Superlevel set cannot be certified bounded from the decay envelope."""

    kind = "envelope-not-decaying"


class UnknownInstance(DblabError):
    """Theorem verification asked for an example configuration that is not shipped."""

    kind = "unknown-instance"


class ConfigError(Exception):
    """Malformed run configuration; maps to CLI exit code 2."""
