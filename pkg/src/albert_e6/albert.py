"""The 27-dimensional Albert space J of vectors (a,b,c | A,B,C).

Coordinates are laid out as ``(a, b, c, A[0:8], B[0:8], C[0:8])``.  As with
:mod:`albert_e6.octonion`, the ``*_raw`` functions take a length-27 sequence of
scalars in any representation understood by ``F`` (single codes, numpy
columns of a batch, bit-planes), so one formula serves every evaluation path.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

import numpy as np

from . import linalg
from . import octonion as oc
from .gf import GF, FieldElement, FieldError
from .octonion import Octonion

DIM = 27
SLICE_A = slice(3, 11)
SLICE_B = slice(11, 19)
SLICE_C = slice(19, 27)

# coordinate support of each named component
_SUPPORT = {
    "a": [0],
    "b": [1],
    "c": [2],
    "A": list(range(3, 11)),
    "B": list(range(11, 19)),
    "C": list(range(19, 27)),
}


class Color(enum.Enum):
    WHITE = "white"
    GREY = "grey"
    BLACK = "black"

    def __str__(self):
        return self.value


class ParseError(FieldError):
    def __init__(self, text: str, pos: int, expected: str):
        self.text, self.pos, self.expected = text, pos, expected
        super().__init__(f"at position {pos} of {text!r}: expected {expected}")


# -- raw formulas ---------------------------------------------------------


def parts(v):
    return v[0], v[1], v[2], list(v[SLICE_A]), list(v[SLICE_B]), list(v[SLICE_C])


def delta_raw(F, v):
    """abc - aN(A) - bN(B) - cN(C) + T(ABC)."""
    a, b, c, A, B, C = parts(v)
    d = F.mul(F.mul(a, b), c)
    d = F.sub(d, F.mul(a, oc.norm(F, A)))
    d = F.sub(d, F.mul(b, oc.norm(F, B)))
    d = F.sub(d, F.mul(c, oc.norm(F, C)))
    return F.add(d, oc.trace3(F, A, B, C))


def mixed_form_raw(F, y, x):
    """M(Y,X), linear in Y and quadratic in X, term by term.

    The octonion terms d*A*conj(A) and a*(D*conj(A) + A*conj(D)) are scalar
    multiples of 1 and enter through N(A) and the polar form.
    """
    d, e, f, D, E, Fo = parts(y)
    a, b, c, A, B, C = parts(x)
    m = F.add(F.add(F.mul(F.mul(b, c), d), F.mul(F.mul(a, c), e)), F.mul(F.mul(a, b), f))
    m = F.sub(m, F.mul(d, oc.norm(F, A)))
    m = F.sub(m, F.mul(e, oc.norm(F, B)))
    m = F.sub(m, F.mul(f, oc.norm(F, C)))
    m = F.sub(m, F.mul(a, oc.polar(F, D, A)))
    m = F.sub(m, F.mul(b, oc.polar(F, E, B)))
    m = F.sub(m, F.mul(c, oc.polar(F, Fo, C)))
    t = oc.add(F, oc.add(F, oc.mul(F, oc.mul(F, D, B), C), oc.mul(F, oc.mul(F, E, C), A)),
               oc.mul(F, oc.mul(F, Fo, A), B))
    return F.add(m, oc.trace(F, t))


def mixed_coefficients_raw(F, x) -> list:
    """The 27 values M(e_i, X): the linear functional Y -> M(Y,X) in coordinates.

    Uses T(e_j Z) = conj(Z)_{7-j} and <e_j, Z> = Z_{7-j}.
    """
    a, b, c, A, B, C = parts(x)
    out = [
        F.sub(F.mul(b, c), oc.norm(F, A)),
        F.sub(F.mul(c, a), oc.norm(F, B)),
        F.sub(F.mul(a, b), oc.norm(F, C)),
    ]
    for s, Z, (P, Q) in ((a, A, (B, C)), (b, B, (C, A)), (c, C, (A, B))):
        w = oc.conj(F, oc.mul(F, P, Q))
        for j in range(8):
            out.append(F.sub(w[7 - j], F.mul(s, Z[7 - j])))
    return out


def white_residuals_raw(F, x) -> list:
    """N(A)-bc, N(B)-ca, N(C)-ab and the coordinates of AB-cC', BC-aA', CA-bB'.

    X is white iff every entry vanishes (A' is the conjugate of A).
    """
    a, b, c, A, B, C = parts(x)
    out = [
        F.sub(oc.norm(F, A), F.mul(b, c)),
        F.sub(oc.norm(F, B), F.mul(c, a)),
        F.sub(oc.norm(F, C), F.mul(a, b)),
    ]
    for P, Q, s, R in ((A, B, c, C), (B, C, a, A), (C, A, b, B)):
        out.extend(oc.sub(F, oc.mul(F, P, Q), oc.scale(F, s, oc.conj(F, R))))
    return out


# -- vectors ------------------------------------------------------------------


@dataclass(frozen=True)
class AlbertVector:
    field: GF
    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if len(coords) != DIM:
            raise FieldError(f"an Albert vector has {DIM} coordinates, got {len(coords)}")
        if any(not 0 <= c < self.field.q for c in coords):
            raise FieldError("coordinate out of range")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def from_parts(cls, F: GF, a=0, b=0, c=0, A=None, B=None, C=None) -> AlbertVector:
        def oct_codes(x):
            if x is None or (isinstance(x, int) and x == 0):
                return (0,) * 8
            if isinstance(x, Octonion):
                return x.coords
            return tuple(F(t).code for t in x)

        return cls(F, (F(a).code, F(b).code, F(c).code) + oct_codes(A) + oct_codes(B) + oct_codes(C))

    @classmethod
    def zero(cls, F: GF) -> AlbertVector:
        return cls(F, (0,) * DIM)

    @classmethod
    def basis(cls, F: GF, i: int) -> AlbertVector:
        c = [0] * DIM
        c[i] = 1
        return cls(F, c)

    @classmethod
    def random(cls, F: GF, rng: np.random.Generator, nonzero: bool = False) -> AlbertVector:
        while True:
            v = cls(F, F.random(rng, DIM))
            if not (nonzero and v.is_zero()):
                return v

    @property
    def a(self) -> FieldElement:
        return FieldElement(self.field, self.coords[0])

    @property
    def b(self) -> FieldElement:
        return FieldElement(self.field, self.coords[1])

    @property
    def c(self) -> FieldElement:
        return FieldElement(self.field, self.coords[2])

    @property
    def A(self) -> Octonion:
        return Octonion(self.field, self.coords[SLICE_A])

    @property
    def B(self) -> Octonion:
        return Octonion(self.field, self.coords[SLICE_B])

    @property
    def C(self) -> Octonion:
        return Octonion(self.field, self.coords[SLICE_C])

    def array(self) -> np.ndarray:
        return np.array(self.coords, dtype=np.int64)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _check(self, y):
        if not isinstance(y, AlbertVector):
            return NotImplemented
        if y.field != self.field:
            raise FieldError(f"mismatched fields {self.field} and {y.field}")
        return y

    def __add__(self, y):
        y = self._check(y)
        if y is NotImplemented:
            return y
        return AlbertVector(self.field, self.field.add(self.array(), y.array()))

    def __sub__(self, y):
        y = self._check(y)
        if y is NotImplemented:
            return y
        return AlbertVector(self.field, self.field.sub(self.array(), y.array()))

    def __neg__(self):
        return AlbertVector(self.field, self.field.neg(self.array()))

    def __rmul__(self, s):
        if isinstance(s, (FieldElement, int, np.integer)):
            return AlbertVector(self.field, self.field.mul(self.field(s).code, self.array()))
        return NotImplemented

    def __str__(self):
        F = self.field
        octs = []
        for sl in (SLICE_A, SLICE_B, SLICE_C):
            o = self.coords[sl]
            octs.append("0" if not any(o) else str(Octonion(F, o)))
        return "(" + ",".join(F.format(x) for x in self.coords[:3]) + "|" + ";".join(octs) + ")"

    def __repr__(self):
        return f"AlbertVector({self})"

    @classmethod
    def parse(cls, F: GF, text: str) -> AlbertVector:
        return cls(F, _VectorParser(F, text).parse())


_GRAMMAR = '"(" a "," b "," c "|" O ";" O ";" O ")" with O = 0 | [f,f,f,f,f,f,f,f]'


class _VectorParser:
    _ws = re.compile(r"\s*")
    _field_lit = re.compile(r"\d+|\[\s*\d+(?:\s*,\s*\d+)*\s*\]")
    _oct_name = re.compile(r"-?(?:e-1|ewb|ew|e0|e-0|e-w|e-wb|e1)(?![\w-])")

    def __init__(self, F: GF, text: str):
        self.F, self.text, self.pos = F, text, 0

    def fail(self, expected: str):
        raise ParseError(self.text, self.pos, f"{expected}; grammar {_GRAMMAR}")

    def skip(self):
        self.pos = self._ws.match(self.text, self.pos).end()

    def expect(self, ch: str):
        self.skip()
        if not self.text.startswith(ch, self.pos):
            self.fail(repr(ch))
        self.pos += len(ch)

    def scalar(self) -> int:
        self.skip()
        m = self._field_lit.match(self.text, self.pos)
        if not m:
            self.fail("a field element literal")
        try:
            code = self.F.parse(m.group()).code
        except FieldError:
            self.fail(f"a literal of {self.F}")
        self.pos = m.end()
        return code

    def octonion(self) -> tuple[int, ...]:
        self.skip()
        # longest basis name first so "e-1" is not read as "e-" and so on
        for name in sorted(oc.BASIS_NAMES, key=len, reverse=True):
            for sign in ("-", ""):
                tok = sign + name
                if self.text.startswith(tok, self.pos):
                    end = self.pos + len(tok)
                    if end == len(self.text) or self.text[end] in " ;)":
                        self.pos = end
                        return Octonion.parse(self.F, tok).coords
        if self.text.startswith("[", self.pos):
            coords = []
            self.pos += 1
            for k in range(8):
                if k:
                    self.expect(",")
                coords.append(self.scalar())
            self.expect("]")
            return tuple(coords)
        m = re.compile(r"0(?![\d,\]])").match(self.text, self.pos)
        if m:
            self.pos = m.end()
            return (0,) * 8
        self.fail("an octonion (0, a basis name, or [f,f,f,f,f,f,f,f])")

    def parse(self) -> list[int]:
        self.expect("(")
        out = [self.scalar()]
        for _ in range(2):
            self.expect(",")
            out.append(self.scalar())
        self.expect("|")
        out.extend(self.octonion())
        for _ in range(2):
            self.expect(";")
            out.extend(self.octonion())
        self.expect(")")
        self.skip()
        if self.pos != len(self.text):
            self.fail("end of input")
        return out


# -- forms and classification ---------------------------------------------


def delta(X: AlbertVector) -> FieldElement:
    return FieldElement(X.field, delta_raw(X.field, X.coords))


def mixed_form(Y: AlbertVector, X: AlbertVector) -> FieldElement:
    if Y.field != X.field:
        raise FieldError(f"mismatched fields {Y.field} and {X.field}")
    return FieldElement(X.field, mixed_form_raw(X.field, Y.coords, X.coords))


def mixed_coefficients(X: AlbertVector) -> np.ndarray:
    F = X.field
    return np.array([int(v) for v in mixed_coefficients_raw(F, X.coords)], dtype=np.int64)


def is_white_by_definition(X: AlbertVector) -> bool:
    """M(e_i, X) = 0 on all 27 basis vectors, each evaluated with mixed_form."""
    F = X.field
    return all(not mixed_form(AlbertVector.basis(F, i), X) for i in range(DIM))


def whiteness_conditions(X: AlbertVector) -> bool:
    if X.is_zero():
        raise ValueError("the zero vector has no colour")
    return not any(int(r) for r in white_residuals_raw(X.field, X.coords))


def classify(X: AlbertVector) -> Color:
    if X.is_zero():
        raise ValueError("the zero vector has no colour")
    if delta(X):
        return Color.BLACK
    if any(mixed_coefficients(X)):
        return Color.GREY
    return Color.WHITE


def classify_many(F: GF, X: np.ndarray) -> np.ndarray:
    """Colour codes for the rows of ``X``: 0 white, 1 grey, 2 black (zero rows give 0)."""
    cols = list(np.asarray(X, dtype=np.int64).T)
    d = delta_raw(F, cols) != 0
    nonwhite = np.zeros(len(X), dtype=bool)
    for r in mixed_coefficients_raw(F, cols):
        nonwhite |= r != 0
    return np.where(d, 2, np.where(nonwhite, 1, 0))


COLOR_CODES = (Color.WHITE, Color.GREY, Color.BLACK)


def q10(X: AlbertVector) -> FieldElement:
    """ab - N(C) on J_10^{abC}."""
    if not in_subspace(X, "abC"):
        raise FieldError(f"{X} is not in J_10^abC")
    return X.a * X.b - X.C.norm()


def q8(C: Octonion) -> FieldElement:
    return C.norm()


def polarization_check(X: AlbertVector, Y: AlbertVector, alpha) -> bool:
    """Compare M(X,Y) with the combination of four determinants at X + alpha*Y etc."""
    F = X.field
    if F.q == 2:
        raise FieldError("the polarization identity needs a field with an element outside {0,1}")
    al = F(alpha)
    if al.code in (0, 1):
        raise FieldError("alpha must avoid 0 and 1")
    one = F.one
    lhs = (
        (al * (al - one)).inverse() * delta(X + al * Y)
        - (al - one).inverse() * delta(X + Y)
        + al.inverse() * delta(X)
        - (al + one) * delta(Y)
    )
    return lhs == mixed_form(X, Y)


def polarization_many(F: GF, X, Y, alpha) -> np.ndarray:
    """Row-wise version of :func:`polarization_check`; ``alpha`` is one code per row."""
    if F.q == 2:
        raise FieldError("the polarization identity needs a field with an element outside {0,1}")
    al_ = np.asarray(alpha, dtype=np.int64)
    if np.any((al_ == 0) | (al_ == 1)):
        raise FieldError("alpha must avoid 0 and 1")
    X, Y = np.asarray(X, dtype=np.int64), np.asarray(Y, dtype=np.int64)
    d = lambda Z: delta_raw(F, _columns(Z))  # noqa: E731
    am1 = F.sub(al_, 1)
    lhs = F.mul(F.inv(F.mul(al_, am1)), d(F.add(X, F.mul(al_[:, None], Y))))
    lhs = F.sub(lhs, F.mul(F.inv(am1), d(F.add(X, Y))))
    lhs = F.add(lhs, F.mul(F.inv(al_), d(X)))
    lhs = F.sub(lhs, F.mul(F.add(al_, 1), d(Y)))
    return lhs == mixed_form_raw(F, _columns(X), _columns(Y))


# -- subspaces and radicals -----------------------------------------------


def subspace_mask(support: str) -> np.ndarray:
    """Boolean coordinate mask for a superscript like ``"abC"`` or ``"cAB"``."""
    mask = np.zeros(DIM, dtype=bool)
    for ch in support:
        if ch not in _SUPPORT:
            raise ValueError(f"unknown component {ch!r} in {support!r}")
        mask[_SUPPORT[ch]] = True
    return mask


def subspace_basis(F: GF, support: str) -> np.ndarray:
    return np.eye(DIM, dtype=np.int64)[subspace_mask(support)]


def in_subspace(X: AlbertVector, support: str) -> bool:
    return not any(X.array()[~subspace_mask(support)])


J10_abC = "abC"
J17_cAB = "cAB"
J26_abABC = "abABC"
J8_C = "C"


def quadratic_radical(F: GF, Q, n: int) -> np.ndarray:
    """Basis (rows, RREF) of the radical of a quadratic form on F^n.

    ``Q`` maps an (m, n) array of row vectors to their m values.  The polar
    form is read off from Q on e_i and e_i + e_j.  In odd characteristic the
    radical is the kernel of the polar Gram matrix.  In characteristic 2, Q
    restricted to that kernel R satisfies Q(sum l_i r_i) = sum l_i^2 Q(r_i),
    so x -> Q(x)^(q/2) is linear on R and its kernel is the radical.
    """
    eye = np.eye(n, dtype=np.int64)
    i, j = np.triu_indices(n, 1)
    diag = np.asarray(Q(eye), dtype=np.int64)
    pairs = np.asarray(Q(F.add(eye[i], eye[j])), dtype=np.int64)
    G = np.zeros((n, n), dtype=np.int64)
    G[i, j] = G[j, i] = F.sub(F.sub(pairs, diag[i]), diag[j])
    G[np.arange(n), np.arange(n)] = F.add(diag, diag)
    R = linalg.left_nullspace(F, G)
    if F.p != 2 or len(R) == 0:
        return R
    vals = F.pow(np.asarray(Q(R), dtype=np.int64), F.q // 2)[:, None]
    K = linalg.left_nullspace(F, vals)
    if len(K) == 0:
        return np.zeros((0, n), dtype=np.int64)
    return linalg.row_space(F, linalg.matmul(F, K, R))


def _columns(X):
    return list(np.asarray(X, dtype=np.int64).T)


def radical_17(W: AlbertVector) -> list[AlbertVector]:
    """Basis of the radical of X -> M(W, X) for a white vector W."""
    if W.is_zero() or not whiteness_conditions(W):
        raise ValueError(f"{W} is not white")
    F = W.field
    w = W.array()[:, None]
    R = quadratic_radical(F, lambda X: mixed_form_raw(F, list(w), _columns(X)), DIM)
    if len(R) != 17:
        raise ArithmeticError(f"radical of a white point has dimension {len(R)}, not 17")
    return [AlbertVector(F, r) for r in R]


def shift_radical(W: AlbertVector) -> np.ndarray:
    """Radical of X -> Delta(X + W) - Delta(X), as a quadratic form over GF(2).

    Over GF(2) every polynomial of degree at most 2 vanishing at 0 is a
    quadratic form, since x = x^2 on the field.
    """
    F = W.field
    if F.q != 2:
        raise FieldError("this separation test is specific to GF(2)")
    if delta(W):
        raise ValueError("Delta(W) must vanish so that the form is zero at 0")

    def Q(X):
        return F.sub(delta_raw(F, _columns(F.add(X, W.array()))), delta_raw(F, _columns(X)))

    return quadratic_radical(F, Q, DIM)


def octonion_constraint_radical(F: GF, D: Octonion) -> np.ndarray:
    """Span of {(a,b,0|A,B,C) : DA = BD = T(D C') = 0}, solved as a linear system."""
    Lm = oc.left_matrix(F, D.coords)  # A -> D A
    Rm = oc.right_matrix(F, D.coords)  # B -> B D
    # T(D C') = <D, C> = sum_j D_j C_{7-j}
    t = np.array([[D.coords[7 - j]] for j in range(8)], dtype=np.int64)
    M = np.zeros((DIM, 1 + 8 + 8 + 1), dtype=np.int64)
    M[2, 0] = 1  # c = 0
    M[SLICE_A, 1:9] = Lm
    M[SLICE_B, 9:17] = Rm
    M[SLICE_C, 17:18] = t
    return linalg.left_nullspace(F, M)


def white_point_id(X: AlbertVector) -> AlbertVector:
    """Scale X so its first nonzero coordinate is 1."""
    arr = X.array()
    nz = np.flatnonzero(arr)
    if len(nz) == 0:
        raise ValueError("the zero vector spans no point")
    F = X.field
    return AlbertVector(F, F.mul(arr, F.inv(int(arr[nz[0]]))))
