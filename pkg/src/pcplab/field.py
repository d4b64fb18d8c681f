"""Prime-field arithmetic.

Everything downstream works over a fixed odd prime field F_q.  Elements are
canonical residues in [0, q), stored as plain ints.  ``Field`` bundles the
modulus with the arithmetic; hot paths (polynomial evaluation, elimination)
call its int-level methods directly, while ``FieldElement`` is a thin
operator-overloading wrapper used where infix notation reads better.
"""

from __future__ import annotations

import random


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """Arithmetic context for F_q, q an odd prime >= 3.

    All methods take and return canonical residues (ints in [0, q)).
    Instances are immutable and hashable; two fields are equal iff their
    moduli are.
    """

    __slots__ = ("q",)

    def __init__(self, q: int):
        if not isinstance(q, int) or not _is_prime(q):
            raise ValueError(f"modulus must be prime, got {q!r}")
        if q % 2 == 0 or q < 3:
            raise ValueError(f"modulus must be an odd prime >= 3, got {q}")
        object.__setattr__(self, "q", q)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("Field is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("Field", self.q))

    def __repr__(self) -> str:
        return f"Field({self.q})"

    # -- residue arithmetic -------------------------------------------------

    def reduce(self, x: int) -> int:
        return x % self.q

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.q

    def sub(self, x: int, y: int) -> int:
        return (x - y) % self.q

    def mul(self, x: int, y: int) -> int:
        return (x * y) % self.q

    def neg(self, x: int) -> int:
        return (-x) % self.q

    def inv(self, x: int) -> int:
        x %= self.q
        if x == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.q}")
        # Fermat: x^(q-2) is the inverse in a prime field.
        return pow(x, self.q - 2, self.q)

    def pow(self, x: int, k: int) -> int:
        if k < 0:
            return pow(self.inv(x), -k, self.q)
        return pow(x, k, self.q)

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    # -- element construction ----------------------------------------------

    def element(self, value: int) -> "FieldElement":
        return FieldElement(value % self.q, self)

    def elements(self) -> range:
        """All residues, 0..q-1."""
        return range(self.q)

    def sample(self, rng: random.Random, nonzero: bool = False) -> int:
        """Uniform residue from the given generator; F_q^x when ``nonzero``."""
        if nonzero:
            return 1 + rng.randrange(self.q - 1)
        return rng.randrange(self.q)

    def sample_point(self, rng: random.Random, s: int) -> tuple[int, ...]:
        return tuple(rng.randrange(self.q) for _ in range(s))


class FieldElement:
    """A residue with operator sugar.  ``value`` is always in [0, q)."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: Field):
        object.__setattr__(self, "value", value % field.q)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("mixed-field arithmetic")
            return other.value
        if isinstance(other, int):
            return other % self.field.q
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.value + v, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.value - v, self.field)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(v - self.value, self.field)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.value * v, self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.value * self.field.inv(v), self.field)

    def __pow__(self, k: int):
        return FieldElement(self.field.pow(self.value, k), self.field)

    def __neg__(self):
        return FieldElement(-self.value, self.field)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field.inv(self.value), self.field)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.q
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.field.q))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.field.q})"
