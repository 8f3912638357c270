"""Construction parameters: grid side C, dimension d, ground set size n = C^d,
shell half-width epsilon, and progression length k."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParamError

MAX_N = 2**48


def parse_epsilon(text: str | Fraction | float) -> Fraction:
    """Parse epsilon exactly: 'p/q' stays a rational, a decimal string gets
    denominator 10^digits. Floats are accepted but converted via str()."""
    if isinstance(text, Fraction):
        eps = text
    elif isinstance(text, float):
        eps = Fraction(str(text))
    else:
        try:
            eps = Fraction(str(text).strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParamError(f"cannot parse epsilon {text!r}: {exc}") from None
    if not 0 < eps < 1:
        raise ParamError(f"epsilon must lie strictly between 0 and 1, got {eps}")
    return eps


@dataclass(frozen=True)
class Params:
    """Validated configuration with derived exact quantities.

    r_squared is the mean squared norm of a uniform grid point,
    d(C-1)(2C-1)/6, kept as an exact rational so that shell membership
    never involves floating point.
    """

    C: int
    d: int
    epsilon: Fraction
    k: int = 3
    n: int = field(init=False)
    r_squared: Fraction = field(init=False)

    def __post_init__(self):
        if not isinstance(self.C, int) or self.C < 3:
            raise ParamError(f"grid side C must be an integer >= 3, got {self.C}")
        if not isinstance(self.d, int) or self.d < 1:
            raise ParamError(f"dimension d must be an integer >= 1, got {self.d}")
        if not isinstance(self.k, int) or self.k < 3:
            raise ParamError(f"progression length k must be an integer >= 3, got {self.k}")
        eps = parse_epsilon(self.epsilon)
        object.__setattr__(self, "epsilon", eps)
        n = self.C**self.d
        if n > MAX_N:
            raise ParamError(f"n = {self.C}^{self.d} = {n} exceeds the supported {MAX_N}")
        object.__setattr__(self, "n", n)
        object.__setattr__(
            self, "r_squared", Fraction(self.d * (self.C - 1) * (2 * self.C - 1), 6)
        )

    @classmethod
    def create(cls, C: int, d: int, epsilon=None, k: int = 3) -> "Params":
        """Convenience constructor; epsilon defaults to 1/C^3."""
        if epsilon is None:
            epsilon = Fraction(1, int(C) ** 3)
        return cls(C=C, d=d, epsilon=parse_epsilon(epsilon), k=k)


def power_decompositions(n: int, min_side: int = 3) -> list[tuple[int, int]]:
    """All (C, d) with C^d == n and C >= min_side, largest d first."""
    out = []
    d = 1
    while True:
        C = round(n ** (1.0 / d)) if d > 1 else n
        # float guess, then fix by exact search in a tiny neighborhood
        hit = None
        for cand in (C - 1, C, C + 1):
            if cand >= 2 and cand**d == n:
                hit = cand
        if hit is not None and hit >= min_side:
            out.append((hit, d))
        if 2**d > n:
            break
        d += 1
    out.sort(key=lambda cd: -cd[1])
    return out


def nearby_power_choices(n: int, count: int = 6) -> list[tuple[int, int, int]]:
    """Diagnostic helper: (C, d, C^d) triples with C^d close to n."""
    sugg = set()
    for d in range(1, 17):
        base = round(n ** (1.0 / d))
        for C in (base - 1, base, base + 1):
            if C >= 3 and C**d <= MAX_N:
                sugg.add((C, d, C**d))
    ranked = sorted(sugg, key=lambda t: (abs(t[2] - n), t[1]))
    return ranked[:count]
