"""Exception types shared across the package."""


class RainbowError(Exception):
    """Base class for all package errors."""


class ParamError(RainbowError, ValueError):
    """Invalid construction parameters or arguments (CLI exit 2)."""


class PointError(RainbowError, ValueError):
    """Grid point or integer value outside its legal range."""


class ClosureError(ParamError):
    """The label classes of this configuration do not keep all needed
    progression companions inside the grid; building would void the
    correctness argument, so the configuration is refused."""

    def __init__(self, C: int, k: int, u: int, v: int, p_num: int, q_den: int):
        self.C, self.k, self.u, self.v, self.p_num, self.q_den = C, k, u, v, p_num, q_den
        super().__init__(
            f"label closure fails for C={C}, k={k}: coordinates {u},{v} share a "
            f"label but ({p_num}*{u} + {q_den - p_num}*{v})/{q_den} is not a "
            f"grid coordinate"
        )


class ResourceError(RainbowError, RuntimeError):
    """Requested instance exceeds the configured memory budget (CLI exit 3)."""


class FormatError(RainbowError, ValueError):
    """Malformed or truncated input file (CLI exit 2)."""
