"""The split octonion algebra over GF(q) in the basis e_i, i in +-{0, 1, w, wb}.

Coordinates are ordered ``[e-1, ewb, ew, e0, e-0, e-w, e-wb, e1]`` so that the
basis vectors at positions ``i`` and ``7 - i`` are the hyperbolic partners
pairing up in the norm.

The module-level functions (``mul``, ``conj``, ``norm``, ...) work on raw
coordinate sequences of length 8 whose entries are whatever the arithmetic
object ``F`` understands (codes, numpy arrays of codes, bit-planes).  They use
only ``F.add/sub/neg/mul`` so they stay valid for every scalar representation.
:class:`Octonion` wraps them for single values over a :class:`~albert_e6.gf.GF`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .gf import GF, FieldElement, FieldError, NotInvertibleError

BASIS_NAMES = ("e-1", "ewb", "ew", "e0", "e-0", "e-w", "e-wb", "e1")

# Product table e_row * e_col.  Entry s means sign(s) * e_{|s|-1}; 0 is a zero
# product.  Rows and columns follow BASIS_NAMES.
TABLE = (
    (0, 0, 0, 0, +1, +2, -3, -4),
    (0, 0, -1, +2, 0, 0, -5, +6),
    (0, +1, 0, +3, 0, -5, 0, -7),
    (+1, 0, 0, +4, 0, +6, +7, 0),
    (0, +2, +3, 0, +5, 0, 0, +8),
    (-2, 0, -4, 0, +6, 0, +8, 0),
    (+3, -4, 0, 0, +7, -8, 0, 0),
    (-5, -6, +7, +8, 0, 0, 0, 0),
)

# (i, j, sign) contributions to each output coordinate k
_TERMS: list[list[tuple[int, int, int]]] = [[] for _ in range(8)]
for _i, _row in enumerate(TABLE):
    for _j, _s in enumerate(_row):
        if _s:
            _TERMS[abs(_s) - 1].append((_i, _j, 1 if _s > 0 else -1))

PARTNER = tuple(7 - i for i in range(8))
IDX_ZERO, IDX_MZERO = 3, 4


def _acc(F, acc, term, sign):
    if acc is None:
        return term if sign > 0 else F.neg(term)
    return F.add(acc, term) if sign > 0 else F.sub(acc, term)


def mul(F, x, y) -> list:
    out = []
    for terms in _TERMS:
        acc = None
        for i, j, s in terms:
            acc = _acc(F, acc, F.mul(x[i], y[j]), s)
        out.append(acc)
    return out


def conj(F, x) -> list:
    return [F.neg(x[0]), F.neg(x[1]), F.neg(x[2]), x[4], x[3], F.neg(x[5]), F.neg(x[6]), F.neg(x[7])]


def norm(F, x):
    acc = F.mul(x[0], x[7])
    for i in (1, 2, 3):
        acc = F.add(acc, F.mul(x[i], x[7 - i]))
    return acc


def trace(F, x):
    return F.add(x[IDX_ZERO], x[IDX_MZERO])


def polar(F, x, y):
    """N(x+y) - N(x) - N(y), written out coordinatewise."""
    acc = None
    for i in range(8):
        acc = _acc(F, acc, F.mul(x[i], y[7 - i]), 1)
    return acc


def add(F, x, y) -> list:
    return [F.add(a, b) for a, b in zip(x, y)]


def sub(F, x, y) -> list:
    return [F.sub(a, b) for a, b in zip(x, y)]


def neg(F, x) -> list:
    return [F.neg(a) for a in x]


def scale(F, s, x) -> list:
    return [F.mul(s, a) for a in x]


def trace3(F, x, y, z):
    """T((xy)z), equal to T(x(yz)) by trace 3-associativity."""
    return trace(F, mul(F, mul(F, x, y), z))


def from_scalar(F, s, like=None) -> list:
    z = F.zeros_like(s if like is None else like)
    out = [z] * 8
    out[IDX_ZERO] = s
    out[IDX_MZERO] = s
    return out


def left_matrix(F: GF, x) -> np.ndarray:
    """8x8 matrix of ``y -> x*y`` acting on row vectors."""
    rows = []
    for j in range(8):
        e = [0] * 8
        e[j] = 1
        rows.append([int(c) for c in mul(F, x, e)])
    return np.array(rows, dtype=np.int64)


def right_matrix(F: GF, x) -> np.ndarray:
    """8x8 matrix of ``y -> y*x`` acting on row vectors."""
    rows = []
    for j in range(8):
        e = [0] * 8
        e[j] = 1
        rows.append([int(c) for c in mul(F, e, x)])
    return np.array(rows, dtype=np.int64)


@dataclass(frozen=True)
class Octonion:
    field: GF
    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if len(coords) != 8:
            raise FieldError("an octonion has exactly 8 coordinates")
        if any(not 0 <= c < self.field.q for c in coords):
            raise FieldError("coordinate out of range")
        object.__setattr__(self, "coords", coords)

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, F: GF) -> Octonion:
        return cls(F, (0,) * 8)

    @classmethod
    def one(cls, F: GF) -> Octonion:
        return cls(F, (0, 0, 0, 1, 1, 0, 0, 0))

    @classmethod
    def basis(cls, F: GF, name) -> Octonion:
        i = BASIS_NAMES.index(name) if isinstance(name, str) else int(name)
        c = [0] * 8
        c[i] = 1
        return cls(F, c)

    @classmethod
    def scalar(cls, F: GF, s) -> Octonion:
        s = F(s).code
        return cls(F, (0, 0, 0, s, s, 0, 0, 0))

    @classmethod
    def random(cls, F: GF, rng: np.random.Generator) -> Octonion:
        return cls(F, F.random(rng, 8))

    @classmethod
    def all(cls, F: GF):
        """Every octonion over F, in lexicographic coordinate order (first fastest)."""
        codes = np.indices((F.q,) * 8).reshape(8, -1)[::-1].T
        for row in codes:
            yield cls(F, row[::-1])

    # -- algebra --------------------------------------------------------

    def _check(self, y: Octonion):
        if not isinstance(y, Octonion):
            return NotImplemented
        if y.field != self.field:
            raise FieldError(f"mismatched fields {self.field} and {y.field}")
        return y

    def __add__(self, y):
        y = self._check(y)
        return y if y is NotImplemented else Octonion(self.field, add(self.field, self.coords, y.coords))

    def __sub__(self, y):
        y = self._check(y)
        return y if y is NotImplemented else Octonion(self.field, sub(self.field, self.coords, y.coords))

    def __neg__(self):
        return Octonion(self.field, neg(self.field, self.coords))

    def __mul__(self, y):
        if isinstance(y, (FieldElement, int, np.integer)):
            return Octonion(self.field, scale(self.field, self.field(y).code, self.coords))
        y = self._check(y)
        return y if y is NotImplemented else Octonion(self.field, mul(self.field, self.coords, y.coords))

    def __rmul__(self, s):
        if isinstance(s, (FieldElement, int, np.integer)):
            return Octonion(self.field, scale(self.field, self.field(s).code, self.coords))
        return NotImplemented

    def conj(self) -> Octonion:
        return Octonion(self.field, conj(self.field, self.coords))

    def norm(self) -> FieldElement:
        return FieldElement(self.field, norm(self.field, self.coords))

    def trace(self) -> FieldElement:
        return FieldElement(self.field, trace(self.field, self.coords))

    def polar(self, y: Octonion) -> FieldElement:
        y = self._check(y)
        return FieldElement(self.field, polar(self.field, self.coords, y.coords))

    def inverse(self) -> Octonion:
        n = self.norm()
        if not n:
            raise NotInvertibleError(f"{self} is isotropic (norm 0) and has no inverse")
        return n.inverse() * self.conj()

    def is_zero(self) -> bool:
        return not any(self.coords)

    def as_scalar(self) -> FieldElement:
        c = self.coords
        if c[IDX_ZERO] != c[IDX_MZERO] or any(c[i] for i in (0, 1, 2, 5, 6, 7)):
            raise FieldError(f"{self} is not a scalar multiple of 1")
        return FieldElement(self.field, c[IDX_ZERO])

    # -- text -----------------------------------------------------------

    def __str__(self):
        return "[" + ",".join(self.field.format(c) for c in self.coords) + "]"

    def __repr__(self):
        return f"Octonion({self})"

    @classmethod
    def parse(cls, F: GF, text: str) -> Octonion:
        s = text.strip()
        if s == "0":
            return cls.zero(F)
        name = s.lstrip("-")
        if name in BASIS_NAMES:
            e = cls.basis(F, name)
            return -e if s.startswith("-") else e
        if not (s.startswith("[") and s.endswith("]")):
            raise FieldError(f"cannot parse octonion {text!r}")
        parts = _split_top(s[1:-1])
        if len(parts) != 8:
            raise FieldError(f"octonion needs 8 coordinates, got {len(parts)} in {text!r}")
        return cls(F, [F.parse(t).code for t in parts])


def _split_top(s: str) -> list[str]:
    """Split on commas that are not nested inside brackets."""
    parts, depth, cur = [], 0, ""
    for ch in s:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [p.strip() for p in parts if p.strip() != ""] if s.strip() else []


# -- operations -------------------------------------------------------------


def oct_mul(x: Octonion, y: Octonion) -> Octonion:
    return x * y


def oct_conj(x: Octonion) -> Octonion:
    return x.conj()


def oct_norm(x: Octonion) -> FieldElement:
    return x.norm()


def oct_trace(x: Octonion) -> FieldElement:
    return x.trace()


def oct_polar(x: Octonion, y: Octonion) -> FieldElement:
    return x.polar(y)


def oct_inverse(x: Octonion) -> Octonion:
    return x.inverse()


def oct_annihilators(x: Octonion) -> tuple[list[Octonion], list[Octonion]]:
    """Bases of ``{y : conj(x) y = 0}`` and ``{y : y conj(x) = 0}``.

    Both are 4-dimensional for nonzero isotropic ``x``.  Bases come back in
    reduced row-echelon form.
    """
    F = x.field
    if x.is_zero():
        raise ValueError("the zero octonion annihilates everything")
    if x.norm():
        raise ValueError(f"{x} is invertible; its annihilators are trivial")
    xb = x.conj().coords
    left = linalg.left_nullspace(F, left_matrix(F, xb))
    right = linalg.left_nullspace(F, right_matrix(F, xb))
    return [Octonion(F, r) for r in left], [Octonion(F, r) for r in right]


def oct_is_sociable_pair(x: Octonion, y: Octonion, trials: int | None = None) -> bool:
    """True iff (xy)z = x(yz) for every basis z (enough by linearity).

    ``trials`` is accepted for interface compatibility; the basis check is
    already exhaustive.
    """
    F = x.field
    xy = x * y
    for k in range(8):
        z = Octonion.basis(F, k)
        if xy * z != x * (y * z):
            return False
    return True


def centre_basis(F: GF) -> list[Octonion]:
    """Basis of ``{c : cx = xc for all x}``, from the stacked commutator maps."""
    blocks = []
    for j in range(8):
        e = Octonion.basis(F, j).coords
        # c -> c e_j - e_j c as a map on c
        blocks.append(F.sub(right_matrix(F, e), left_matrix(F, e)))
    M = np.concatenate(blocks, axis=1)
    return [Octonion(F, r) for r in linalg.left_nullspace(F, M)]


# -- consistency with the generating rules of the table ---------------------

# subscripts: (negated?, base) with base in {"0", "1", "w", "wb"}
_SUB_INDEX = {
    (True, "1"): 0,
    (False, "wb"): 1,
    (False, "w"): 2,
    (False, "0"): 3,
    (True, "0"): 4,
    (True, "w"): 5,
    (True, "wb"): 6,
    (False, "1"): 7,
}
_TIMES_W = {"0": "0", "1": "w", "w": "wb", "wb": "1"}

# x * y = sign * z as ((neg, base), (neg, base), sign, (neg, base))
_RULES = (
    ((False, "1"), (False, "w"), +1, (True, "wb")),
    ((False, "w"), (False, "1"), -1, (True, "wb")),
    ((False, "1"), (False, "0"), +1, (False, "1")),
    # printed as "-e_{-0} e_1 = e_1"; the table (and unitality) give +e_1
    ((True, "0"), (False, "1"), +1, (False, "1")),
    ((True, "1"), (False, "1"), -1, (False, "0")),
    ((False, "0"), (False, "0"), +1, (False, "0")),
)


def rule_table() -> tuple[tuple[int, ...], ...]:
    """Rebuild the product table from the itemised rules and their images.

    Images are taken under negating every subscript (0 <-> -0 included) and
    under multiplying subscripts by w (1 -> w -> wb -> 1, 0 fixed).  Products
    not reached are zero.
    """
    table = [[0] * 8 for _ in range(8)]

    def image(sub, negate, rot):
        neg_, base = sub
        for _ in range(rot):
            base = _TIMES_W[base]
        return (neg_ != negate, base)

    for x, y, s, z in _RULES:
        for negate in (False, True):
            for rot in range(3):
                i = _SUB_INDEX[image(x, negate, rot)]
                j = _SUB_INDEX[image(y, negate, rot)]
                k = _SUB_INDEX[image(z, negate, rot)]
                table[i][j] = s * (k + 1)
    return tuple(tuple(r) for r in table)
