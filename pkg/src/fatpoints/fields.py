"""Exact field arithmetic: prime fields GF(p) and arbitrary-precision rationals.

Scalars are plain Python values: canonical residues (int in [0, p)) for the
prime backend, fractions.Fraction (always reduced, positive denominator) for
the rationals backend.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction

DEFAULT_PRIME = 2**31 - 1
# Largest prime p with p**2 < 2**63, so single products of residues still fit
# in int64; used for re-checking probe counterexamples under a second prime.
RECHECK_PRIME = 3037000493

_MASK64 = (1 << 64) - 1


class FieldError(ValueError):
    """Invalid field configuration or operand mismatch."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3e24."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """GF(p) with canonical residues in [0, p)."""

    kind = "prime"

    def __init__(self, p: int = DEFAULT_PRIME):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.zero = 0
        self.one = 1

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in GF(p)")
        return pow(a, self.p - 2, self.p)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.p

    def is_zero(self, a: int) -> bool:
        return a % self.p == 0

    def format(self, a: int) -> str:
        return str(a % self.p)

    def parse(self, text: str) -> int:
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return self.div(self.from_int(int(num)), self.from_int(int(den)))
        return self.from_int(int(text))

    def config(self) -> dict:
        return {"kind": "prime", "p": self.p}

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("prime", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


class RationalField:
    """Field of rationals backed by fractions.Fraction (always canonical)."""

    kind = "rationals"

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def sub(self, a: Fraction, b: Fraction) -> Fraction:
        return a - b

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a: Fraction, b: Fraction) -> Fraction:
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b

    def is_zero(self, a: Fraction) -> bool:
        return a == 0

    def format(self, a: Fraction) -> str:
        return str(a)

    def parse(self, text: str) -> Fraction:
        return Fraction(text.strip())

    def config(self) -> dict:
        return {"kind": "rationals"}

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("rationals")

    def __repr__(self) -> str:
        return "RationalField()"


Field = PrimeField | RationalField


def field_from_config(config: dict) -> Field:
    """Build a field from {"kind": "prime", "p": ...} or {"kind": "rationals"}."""
    kind = config.get("kind")
    if kind == "prime":
        return PrimeField(int(config["p"]))
    if kind == "rationals":
        return RationalField()
    raise FieldError(f"unknown field kind {kind!r}")


def scalar_arith(field: Field, a, b, op: str):
    """Exact field arithmetic on canonical scalars; op in add/sub/mul/div."""
    expected = int if field.kind == "prime" else Fraction
    for operand in (a, b):
        if not isinstance(operand, expected):
            raise FieldError(
                f"mixed-field operands: {operand!r} is not a {field.kind} scalar"
            )
    try:
        fn = {"add": field.add, "sub": field.sub, "mul": field.mul, "div": field.div}[op]
    except KeyError:
        raise FieldError(f"unknown op {op!r}") from None
    return fn(a, b)


class SeedStream:
    """Deterministic 64-bit stream (splitmix64), stable across platforms.

    A stream is owned by a single consumer; never share one across
    concurrent tasks.
    """

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform draw in [0, n) by rejection sampling."""
        if n <= 0:
            raise ValueError("bound must be positive")
        limit = _MASK64 - (_MASK64 + 1) % n
        while True:
            v = self.next_u64()
            if v <= limit:
                return v % n


def random_scalar(field: Field, stream: SeedStream):
    """Uniform residue in GF(p); undefined (error) for rationals."""
    if field.kind != "prime":
        raise FieldError("random scalars are defined only for prime fields")
    return stream.below(field.p)


def stable_seed(*parts) -> int:
    """Derive a 64-bit seed from strings/ints, stable across runs."""
    import hashlib

    h = hashlib.sha256("\x1f".join(str(p) for p in parts).encode()).digest()
    return int.from_bytes(h[:8], "big")
