"""Probability values that remember whether they are exact.

Exact results are fractions.Fraction; approximate results are Decimals
computed under an explicit significant-digit budget. Rendering is the only
place values get rounded: percent strings use banker's rounding at a
caller-chosen number of decimals (default 3).
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, ROUND_HALF_EVEN, localcontext
from fractions import Fraction

from .errors import DomainError

#: Significant digits carried by approximate evaluations; far above the 12
#: decimal places the renderer accepts, so formatting never exposes noise.
APPROX_DIGITS = 40

#: Working precision for exact -> Decimal conversion at render time.
_RENDER_DIGITS = 60

#: Widest fixed-point percent rendering the CLI accepts.
MAX_DECIMALS = 12


@dataclass(frozen=True)
class Probability:
    """A probability in [0, 1]; exact Fraction or Decimal with stated precision."""

    value: Fraction | Decimal
    digits: int | None = None       # None marks an exact value

    def __post_init__(self):
        if isinstance(self.value, Fraction):
            if self.digits is not None:
                raise DomainError("exact probabilities do not carry a digit budget")
        elif isinstance(self.value, Decimal):
            if self.digits is None or self.digits < 1:
                raise DomainError("approximate probabilities must state their digits")
        else:
            raise DomainError(f"unsupported probability payload {type(self.value).__name__}")
        if not 0 <= self.value <= 1:
            raise DomainError(f"probability {self.value} is outside [0, 1]")

    @classmethod
    def exact(cls, value: Fraction | int) -> "Probability":
        return cls(Fraction(value))

    @classmethod
    def approximate(cls, value: Decimal, digits: int = APPROX_DIGITS) -> "Probability":
        return cls(value, digits)

    @property
    def is_exact(self) -> bool:
        return self.digits is None

    def as_fraction(self) -> Fraction:
        if not self.is_exact:
            raise DomainError("approximate probability has no exact rational form")
        return self.value

    def as_decimal(self, digits: int = _RENDER_DIGITS) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = digits
            if self.is_exact:
                return Decimal(self.value.numerator) / Decimal(self.value.denominator)
            return +self.value

    def __float__(self) -> float:
        return float(self.value)

    def percent(self, decimals: int = 3) -> str:
        """Fixed-point percent string (no % sign), banker's rounding."""
        if not 0 <= decimals <= MAX_DECIMALS:
            raise DomainError(f"decimals must be in 0..{MAX_DECIMALS}, got {decimals}")
        q = self._percent_quantized(decimals)
        return f"{q:.{decimals}f}"

    def percent_adaptive(self, min_decimals: int = 3, significant: int = 2) -> str:
        """Percent string widened past min_decimals only when it would print as zero.

        A tiny non-zero value keeps at least `significant` leading digits,
        e.g. 1/13,983,816 renders as 0.0000072 rather than 0.000.
        """
        q = self._percent_quantized(min_decimals)
        if q != 0 or self.value == 0:
            return f"{q:.{min_decimals}f}"
        with localcontext() as ctx:
            ctx.prec = _RENDER_DIGITS
            d = self.as_decimal() * 100
        decimals = min(MAX_DECIMALS, -d.adjusted() + significant - 1)
        decimals = max(decimals, min_decimals)
        q = self._percent_quantized(decimals)
        return f"{q:.{decimals}f}"

    def _percent_quantized(self, decimals: int) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = _RENDER_DIGITS
            d = self.as_decimal() * 100
            return d.quantize(Decimal(1).scaleb(-decimals), rounding=ROUND_HALF_EVEN)

    def json_dict(self, decimals: int = 3) -> dict:
        """JSON-safe rendering; exact values ship numerator/denominator strings."""
        out: dict = {"percent": self.percent(decimals)}
        if self.is_exact:
            out["exact"] = True
            out["numerator"] = str(self.value.numerator)
            out["denominator"] = str(self.value.denominator)
            out["decimal"] = str(self.as_decimal(30))
        else:
            out["exact"] = False
            out["digits"] = self.digits
            out["decimal"] = str(self.value)
        return out
