"""Monomials ``c * t**d`` in H*_S(pt) = Z[t] with c >= 0.

Every restriction of a Peterson Schubert class and every structure constant is
a single monomial, so this is the only coefficient type in the package.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["TMonomial", "ZERO", "ONE", "InternalConsistencyError"]


class InternalConsistencyError(ArithmeticError):
    """Raised when an identity the theory guarantees fails at runtime, such as
    a sum of monomials with different t-powers."""


@dataclass(frozen=True)
class TMonomial:
    coeff: int = 0
    power: int = 0

    def __post_init__(self):
        if self.coeff < 0:
            raise InternalConsistencyError(f"negative coefficient {self.coeff}")
        if self.power < 0:
            raise InternalConsistencyError(f"negative t-power {self.power}")
        if self.coeff == 0 and self.power != 0:
            object.__setattr__(self, "power", 0)

    def __bool__(self) -> bool:
        return self.coeff != 0

    def __add__(self, other: "TMonomial") -> "TMonomial":
        if not isinstance(other, TMonomial):
            return NotImplemented
        if not other:
            return self
        if not self:
            return other
        if self.power != other.power:
            raise InternalConsistencyError(f"cannot add {self} and {other}: t-powers differ")
        return TMonomial(self.coeff + other.coeff, self.power)

    def __sub__(self, other: "TMonomial") -> "TMonomial":
        if not isinstance(other, TMonomial):
            return NotImplemented
        if not other:
            return self
        if self and self.power != other.power:
            raise InternalConsistencyError(f"cannot subtract {other} from {self}: t-powers differ")
        # coeff < 0 is rejected by __post_init__
        return TMonomial(self.coeff - other.coeff, other.power)

    def __mul__(self, other) -> "TMonomial":
        if isinstance(other, TMonomial):
            return TMonomial(self.coeff * other.coeff, self.power + other.power)
        if isinstance(other, int):
            return TMonomial(self.coeff * other, self.power)
        return NotImplemented

    __rmul__ = __mul__

    def exact_div(self, other: "TMonomial") -> "TMonomial":
        """Divide, insisting the quotient is again a monomial with integer coefficient."""
        if not other:
            raise ZeroDivisionError("division by the zero monomial")
        if not self:
            return self
        q, r = divmod(self.coeff, other.coeff)
        if r or self.power < other.power:
            raise InternalConsistencyError(f"{self} is not divisible by {other}")
        return TMonomial(q, self.power - other.power)

    def __str__(self) -> str:
        if self.coeff == 0:
            return "0"
        if self.power == 0:
            return str(self.coeff)
        return f"{self.coeff}*t^{self.power}"

    @classmethod
    def parse(cls, text: str) -> "TMonomial":
        text = text.strip()
        if "*t^" in text:
            c, d = text.split("*t^")
            return cls(int(c), int(d))
        return cls(int(text), 0)


ZERO = TMonomial(0, 0)
ONE = TMonomial(1, 0)

