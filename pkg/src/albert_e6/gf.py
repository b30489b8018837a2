"""Finite fields GF(p^k) with exact arithmetic.

Elements are encoded as integers ``c0 + c1*p + ... + c_{k-1}*p^(k-1)`` where
``c_i`` is the coefficient of ``x^i`` in the polynomial basis.  The raw
arithmetic methods of :class:`GF` act on these codes and accept either Python
ints or integer numpy arrays (broadcasting as numpy does), which is what the
vectorised algebra in the rest of the package relies on.  :class:`FieldElement`
is the small immutable value type for scalar work.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_Q = 256

# One fixed monic irreducible per supported extension, constant term first.
# Conway polynomials where known; each is re-checked at construction.
DEFAULT_MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
    (11, 2): (2, 7, 1),
    (13, 2): (2, 12, 1),
}


class FieldError(ValueError):
    pass


class NotInvertibleError(ArithmeticError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q == p**k``; raise FieldError otherwise."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power >= 2")
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1 or not is_prime(p):
                raise FieldError(f"{q} is not a prime power")
            return p, k
    raise FieldError(f"{q} is not a prime power")


def _poly_mod(a: list[int], m: tuple[int, ...], p: int) -> list[int]:
    a = [c % p for c in a]
    d = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(d + 1):
                a[i - d + j] = (a[i - d + j] - c * m[j]) % p
    return a[:d]


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Exhaustive check: no monic factor of degree 1..deg/2 divides."""
    d = len(modulus) - 1
    if d < 1 or modulus[-1] % p != 1:
        return False
    for e in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=e):
            f = tuple(low) + (1,)
            if not any(_poly_mod(list(modulus), f, p)):
                return False
    return True


class GF:
    """The field with ``q = p**k`` elements.

    Raw methods (``add``, ``mul``, ...) take element codes; use ``F(3)`` or
    ``F([1, 1])`` to build :class:`FieldElement` values.
    """

    def __init__(self, p: int, k: int = 1, modulus=None):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be >= 1")
        if p**k > MAX_Q:
            raise FieldError(f"q = {p}^{k} exceeds the supported bound {MAX_Q}")
        self.p, self.k, self.q = p, k, p**k
        if k == 1:
            if modulus is not None:
                raise FieldError("prime fields take no modulus")
            self.modulus = None
        else:
            if modulus is None:
                if (p, k) not in DEFAULT_MODULI:
                    raise FieldError(f"no built-in modulus for GF({p}^{k})")
                modulus = DEFAULT_MODULI[(p, k)]
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1:
                raise FieldError(f"modulus must have degree {k}")
            if not is_irreducible(modulus, p):
                raise FieldError(f"modulus {list(modulus)} is reducible over GF({p})")
            self.modulus = modulus
            self._build_tables()
        self._inv = np.zeros(self.q, dtype=np.int64)
        for x in range(1, self.q):
            self._inv[x] = self._slow_inv(x)

    @classmethod
    def from_q(cls, q: int, modulus=None) -> GF:
        p, k = prime_power(q)
        return cls(p, k, modulus)

    # -- tables ---------------------------------------------------------

    def _build_tables(self):
        q, p, k = self.q, self.p, self.k
        digits = np.array([self.coeffs(c) for c in range(q)], dtype=np.int64)
        weights = p ** np.arange(k)
        self._add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        self._neg = ((-digits) % p) @ weights
        self._sub = self._add[:, self._neg]
        mul = np.zeros((q, q), dtype=np.int64)
        for x in range(q):
            for y in range(x, q):
                prod = [0] * (2 * k - 1)
                for i, a in enumerate(digits[x]):
                    if a:
                        for j, b in enumerate(digits[y]):
                            prod[i + j] += int(a) * int(b)
                r = _poly_mod(prod, self.modulus, p)
                mul[x, y] = mul[y, x] = self.encode(r)
        self._mul = mul

    def _slow_inv(self, x: int) -> int:
        if self.k == 1:
            return pow(x, self.p - 2, self.p)
        hits = np.nonzero(self._mul[x] == 1)[0]
        return int(hits[0])

    # -- encoding -------------------------------------------------------

    def coeffs(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            out.append(int(code) % self.p)
            code = int(code) // self.p
        return tuple(out)

    def encode(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.k:
            raise FieldError(f"too many coefficients for GF({self.q})")
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs))

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            self.check(value)
            return value
        if isinstance(value, (list, tuple)):
            return FieldElement(self, self.encode(value))
        if isinstance(value, (int, np.integer)):
            # integers map through the prime subfield
            return FieldElement(self, int(value) % self.p)
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot convert {value!r} to a field element")

    def check(self, x: FieldElement):
        if x.field != self:
            raise FieldError(f"element of {x.field} used with {self}")

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def elements(self) -> list[FieldElement]:
        """All q elements; lexicographic on coefficients, constant term fastest."""
        return [FieldElement(self, c) for c in range(self.q)]

    def codes(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def random(self, rng: np.random.Generator, size=None, nonzero=False):
        lo = 1 if nonzero else 0
        return rng.integers(lo, self.q, size=size, dtype=np.int64)

    # -- raw arithmetic on codes ----------------------------------------

    def add(self, x, y):
        if self.k == 1:
            return (x + y) % self.p
        return self._add[x, y]

    def sub(self, x, y):
        if self.k == 1:
            return (x - y) % self.p
        return self._sub[x, y]

    def neg(self, x):
        if self.k == 1:
            return (-x) % self.p
        return self._neg[x]

    def mul(self, x, y):
        if self.k == 1:
            return (x * y) % self.p
        return self._mul[x, y]

    def inv(self, x):
        if np.any(np.asarray(x) == 0):
            raise NotInvertibleError("zero has no inverse")
        return self._inv[x]

    def pow(self, x, n: int):
        result = np.ones_like(np.asarray(x)) if isinstance(x, np.ndarray) else 1
        base = x
        if n < 0:
            base, n = self.inv(x), -n
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def zeros_like(self, x):
        return np.zeros_like(x) if isinstance(x, np.ndarray) else 0

    def ones_like(self, x):
        return np.ones_like(x) if isinstance(x, np.ndarray) else 1

    def is_zero(self, x):
        return np.asarray(x) == 0

    # -- text -----------------------------------------------------------

    def format(self, code) -> str:
        if self.k == 1:
            return str(int(code))
        return "[" + ",".join(str(c) for c in self.coeffs(code)) + "]"

    def parse(self, text: str) -> FieldElement:
        """Read an integer code 0..q-1 or a coefficient list [c0,...,c_{k-1}] with 0 <= c_i < p."""
        s = text.strip()
        if re.fullmatch(r"\d+", s):
            if int(s) >= self.q:
                raise FieldError(f"field literal {s} is out of range 0..{self.q - 1}")
            return self(int(s))
        m = re.fullmatch(r"\[\s*(\d+(?:\s*,\s*\d+)*)\s*\]", s)
        if m:
            coeffs = [int(t) for t in m.group(1).split(",")]
            if len(coeffs) != self.k or max(coeffs) >= self.p:
                raise FieldError(f"{s} is not a list of {self.k} coefficients in 0..{self.p - 1}")
            return FieldElement(self, self.encode(coeffs))
        raise FieldError(f"cannot parse field element {text!r}")

    def spec_string(self) -> str:
        s = f"q={self.p}^{self.k}"
        if self.modulus is not None:
            s += " modulus=[" + ",".join(map(str, self.modulus)) + "]"
        return s

    def __eq__(self, other):
        return (
            isinstance(other, GF)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k}, modulus={list(self.modulus)})"


@lru_cache(maxsize=None)
def field(q: int, modulus: tuple[int, ...] | None = None) -> GF:
    """Cached field constructor keyed by q (and an optional modulus)."""
    return GF.from_q(q, modulus)


def parse_field_spec(text: str, modulus: str | None = None) -> GF:
    """Parse ``"q=p^k"`` / ``"p^k"`` / ``"9"`` plus an optional ``"[c0,...,ck]"`` modulus."""
    s = text.strip().replace(" ", "")
    if s.startswith("q="):
        s = s[2:]
    m = re.fullmatch(r"(\d+)(?:\^(\d+))?", s)
    if not m:
        raise FieldError(f"cannot parse field description {text!r}")
    base, exp = int(m.group(1)), int(m.group(2) or 1)
    q = base**exp
    mod = None
    if modulus:
        mm = re.fullmatch(r"\[\s*(\d+(?:\s*,\s*\d+)*)\s*\]", modulus.strip().removeprefix("modulus="))
        if not mm:
            raise FieldError(f"cannot parse modulus {modulus!r}")
        mod = tuple(int(t) for t in mm.group(1).split(","))
    return field(q, mod)


@dataclass(frozen=True)
class FieldElement:
    field: GF
    code: int

    def __post_init__(self):
        object.__setattr__(self, "code", int(self.code))
        if not 0 <= self.code < self.field.q:
            raise FieldError(f"code {self.code} out of range for {self.field}")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.code)

    def _other(self, y):
        if isinstance(y, FieldElement):
            if y.field != self.field:
                raise FieldError(f"mismatched fields {self.field} and {y.field}")
            return y.code
        if isinstance(y, (int, np.integer)):
            return int(y) % self.field.p
        return NotImplemented

    def __add__(self, y):
        c = self._other(y)
        return c if c is NotImplemented else FieldElement(self.field, self.field.add(self.code, c))

    __radd__ = __add__

    def __sub__(self, y):
        c = self._other(y)
        return c if c is NotImplemented else FieldElement(self.field, self.field.sub(self.code, c))

    def __rsub__(self, y):
        c = self._other(y)
        return c if c is NotImplemented else FieldElement(self.field, self.field.sub(c, self.code))

    def __mul__(self, y):
        c = self._other(y)
        return c if c is NotImplemented else FieldElement(self.field, self.field.mul(self.code, c))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def inverse(self) -> FieldElement:
        if self.code == 0:
            raise NotInvertibleError("zero has no inverse")
        return FieldElement(self.field, self.field.inv(self.code))

    def __truediv__(self, y):
        c = self._other(y)
        if c is NotImplemented:
            return c
        return self * FieldElement(self.field, c).inverse()

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.code, n))

    def __eq__(self, y):
        if isinstance(y, FieldElement):
            return self.field == y.field and self.code == y.code
        if isinstance(y, (int, np.integer)):
            return self.code == int(y) % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.code))

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        return self.code

    def __str__(self):
        return self.field.format(self.code)

    def __repr__(self):
        return f"{self.field!r}({self})"


def ff_arith(F: GF, op: str, x: FieldElement, y: FieldElement) -> FieldElement:
    F.check(x)
    F.check(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown op {op!r}")


def ff_inv(F: GF, x: FieldElement) -> FieldElement:
    F.check(x)
    return x.inverse()


def ff_enumerate(F: GF) -> list[FieldElement]:
    return F.elements()
