"""Analytic main-term ingredients: li(x), zeta(k), the error envelope
delta(x), and the error-exponent table A(k).

li is the principal-value logarithmic integral from 0 (so li(2) is
about 1.045, not 0); that convention is recorded in all CLI output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError

LI_CONVENTION = "principal-value from 0"

# Euler-Mascheroni, to double precision
_EULER_GAMMA = 0.5772156649015328606

# Default diagnostic constant for the unconditional error envelope.
# It is a free knob, never asserted against.
DEFAULT_ENVELOPE_C = 0.2


@dataclass(frozen=True)
class ErrorEnvelope:
    """Configurable constant for the envelope c*(log x)^{3/5}*(log log x)^{-1/5}."""

    c: float = DEFAULT_ENVELOPE_C

    def __post_init__(self):
        if self.c <= 0:
            raise DomainError(f"envelope constant must be > 0, got {self.c}")


@dataclass(frozen=True)
class ExponentTable:
    """Error exponents for the RH-conditional bounds: A(2)=2, A(k)=1 for k>=3.

    g_of_h is the matching short-interval factor: log h when k=2, else 1.
    """

    k: int
    A: int

    def g_of_h(self, h: float) -> float:
        return math.log(h) if self.k == 2 else 1.0


def exponents(k: int) -> ExponentTable:
    if k < 2:
        raise DomainError(f"exponents requires k >= 2, got {k}")
    return ExponentTable(k=k, A=2 if k == 2 else 1)


def li(x: float) -> float:
    """Principal-value logarithmic integral, via the Ei series at log x.

    Ei(y) = gamma + log y + sum_{n>=1} y^n / (n * n!); all terms are
    positive for y > 0, so the series is numerically benign. Absolute
    error is below 1e-10 for x up to 1e15.
    """
    if x <= 1.0:
        raise DomainError(f"li requires x > 1, got {x}")
    y = math.log(x)
    total = _EULER_GAMMA + math.log(y)
    term = 1.0
    for n in range(1, 1000):
        term *= y / n
        inc = term / n
        total += inc
        if inc < 1e-17 * abs(total) and n > y:
            break
    return total


def li_interval(x1: float, x2: float) -> float:
    """Integral of dt/log t over [x1, x2]; 1 < x1 <= x2."""
    if not 1.0 < x1 <= x2:
        raise DomainError(f"li_interval requires 1 < x1 <= x2, got {x1}, {x2}")
    return li(x2) - li(x1)


@lru_cache(maxsize=None)
def zeta_int(k: int) -> float:
    """zeta(k) for integer k >= 2 by direct series.

    Truncates at M terms and corrects with the Euler-Maclaurin tail
    M^{1-k}/(k-1) - M^{-k}/2 + k*M^{-k-1}/12, leaving error far below
    the 1e-12 target (the integral tail bound M^{1-k}/(k-1) alone
    brackets the remainder).
    """
    if k < 2:
        raise DomainError(f"zeta_int requires k >= 2, got {k}")
    if k > 64:
        return 1.0  # 2^-64 below 1 is under double resolution
    M = 20000
    s = math.fsum((m ** -k for m in range(M, 0, -1)))
    tail = M ** (1 - k) / (k - 1) - 0.5 * M ** (-k) + k * M ** (-k - 1) / 12.0
    return s + tail


def delta_envelope(x: float, env: ErrorEnvelope = ErrorEnvelope()) -> float:
    """c * (log x)^{3/5} * (log log x)^{-1/5}, the unconditional error
    exponent envelope; requires x >= 16 so log log x is positive."""
    if x < 16:
        raise DomainError(f"delta_envelope requires x >= 16, got {x}")
    lx = math.log(x)
    return env.c * lx ** 0.6 * math.log(lx) ** -0.2
