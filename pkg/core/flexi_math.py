"""
Exact threshold arithmetic for Flexi-cliques
All thresholds are computed from a rational exponent tau = p/q with integer
comparisons; floats only ever serve as a first estimate.
"""

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from core.errors import TauError
from core.graph_core import Graph, induced_degrees, is_connected_within

UNBOUNDED = math.inf

_DECIMAL_RE = re.compile(r"^\s*(\d+)(?:\.(\d{1,6}))?\s*$")
_RATIO_RE = re.compile(r"^\s*(\d+)\s*/\s*(\d+)\s*$")

# log-space comparisons closer than this (relative) are settled with big integers
_LOG_MARGIN = 1e-9


@dataclass(frozen=True)
class Tau:
    """Exponent tau = p/q with 0 <= p < q, stored in lowest terms"""
    p: int
    q: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not isinstance(self.q, int):
            raise TauError(f"tau needs integer numerator/denominator, got {self.p!r}/{self.q!r}")
        if self.q <= 0:
            raise TauError(f"tau denominator must be positive, got {self.q}")
        if not 0 <= self.p < self.q:
            raise TauError(f"tau must lie in [0, 1), got {self.p}/{self.q}")
        g = math.gcd(self.p, self.q)
        if g > 1:
            object.__setattr__(self, "p", self.p // g)
            object.__setattr__(self, "q", self.q // g)

    @classmethod
    def from_fraction(cls, value: Fraction) -> "Tau":
        return cls(value.numerator, value.denominator)

    @property
    def is_zero(self) -> bool:
        return self.p == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.p, self.q)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


def parse_tau(text: Union[str, "Tau", Fraction]) -> Tau:
    """Parse '0.9' (at most 6 fraction digits) or '9/10' into an exact Tau"""
    if isinstance(text, Tau):
        return text
    if isinstance(text, Fraction):
        return Tau.from_fraction(text)
    if not isinstance(text, str):
        raise TauError(f"tau must be given as text like '0.9' or '9/10', got {text!r}")

    ratio = _RATIO_RE.match(text)
    if ratio:
        q = int(ratio.group(2))
        if q == 0:
            raise TauError(f"tau denominator must be positive: {text!r}")
        return Tau.from_fraction(Fraction(int(ratio.group(1)), q))

    decimal = _DECIMAL_RE.match(text)
    if decimal:
        return Tau.from_fraction(Fraction(text.strip()))

    raise TauError(f"cannot parse tau {text!r}: use a decimal with at most 6 fraction digits or 'p/q'")


def tau_sweep(text: str) -> list:
    """Expand 'START:STOP:STEP' (inclusive stop) into a list of exact Tau values"""
    parts = text.split(":")
    if len(parts) != 3:
        raise TauError(f"tau sweep must look like START:STOP:STEP, got {text!r}")
    start, stop, step = (parse_tau(part).as_fraction() for part in parts)
    if step <= 0:
        raise TauError(f"tau sweep step must be positive, got {text!r}")
    values = []
    current = start
    while current <= stop:
        values.append(Tau.from_fraction(current))
        current += step
    return values


def _pow_le(a: int, x: int, b: int, y: int) -> bool:
    """Exact test a**x <= b**y for a, b >= 1 and x, y >= 0"""
    if x == 0 or a == 1:
        return True
    if y == 0 or b == 1:
        return False
    lhs = x * math.log(a)
    rhs = y * math.log(b)
    if abs(lhs - rhs) > _LOG_MARGIN * max(1.0, abs(lhs), abs(rhs)):
        return lhs < rhs
    return a ** x <= b ** y


def _integer_root(value: int, k: int) -> int:
    """Largest t with t**k <= value (Newton iteration on integers)"""
    if value < 2 or k == 1:
        return value
    t = 1 << -(-value.bit_length() // k)
    while True:
        nxt = ((k - 1) * t + value // t ** (k - 1)) // k
        if nxt >= t:
            break
        t = nxt
    while t ** k > value:
        t -= 1
    while (t + 1) ** k <= value:
        t += 1
    return t


@lru_cache(maxsize=65536)
def floor_pow(s: int, tau: Tau) -> int:
    """floor(s ** tau): the largest t with t**q <= s**p"""
    if s < 1:
        raise ValueError(f"floor_pow needs s >= 1, got {s}")
    if tau.p == 0 or s == 1:
        return 1
    p, q = tau.p, tau.q
    t = int(math.exp(p / q * math.log(s)))
    t = min(max(t, 1), s)
    while t > 1 and not _pow_le(t, q, s, p):
        t -= 1
    while t < s and _pow_le(t + 1, q, s, p):
        t += 1
    return t


@lru_cache(maxsize=65536)
def floor_invpow(x: int, tau: Tau, cap: int = None) -> Union[int, float]:
    """
    floor(x ** (1/tau)): the largest t with t**p <= x**q.
    Returns UNBOUNDED (math.inf) when tau = 0. With `cap`, any bound >= cap
    is reported as cap.
    """
    if x < 1:
        raise ValueError(f"floor_invpow needs x >= 1, got {x}")
    if tau.p == 0:
        return UNBOUNDED
    if x == 1:
        return 1
    p, q = tau.p, tau.q
    if cap is not None and _pow_le(cap, p, x, q):
        return cap

    log_estimate = q / p * math.log(x)
    if log_estimate > 30:
        return _integer_root(x ** q, p)

    t = max(int(math.exp(log_estimate)), 1)
    while t > 1 and not _pow_le(t, p, x, q):
        t -= 1
    while _pow_le(t + 1, p, x, q):
        t += 1
    return t


def theta(best_size: int, tau: Tau) -> int:
    """Minimum degree for membership in any Flexi-clique larger than best_size"""
    if best_size < 0:
        raise ValueError(f"best_size must be non-negative, got {best_size}")
    return floor_pow(best_size + 1, tau)


def degree_diameter_bound(k: int, L: int) -> int:
    """Fewest nodes of a connected graph with minimum degree k and diameter L"""
    if k < 1 or L < 1:
        raise ValueError(f"degree_diameter_bound needs k >= 1 and L >= 1, got k={k}, L={L}")
    if L <= 2 or k == 1:
        return k + L
    return k + L + 1 + (L // 3) * (k - 2)


def is_flexi(graph: Graph, candidate: Iterable[int], tau: Tau) -> bool:
    """Connected, and every member has at least floor(|H|**tau) neighbours inside H"""
    members = candidate if isinstance(candidate, (set, frozenset)) else set(candidate)
    if not members:
        return False
    threshold = floor_pow(len(members), tau)
    degrees = induced_degrees(graph, members)
    if min(degrees.values()) < threshold:
        return False
    return is_connected_within(graph, members)
