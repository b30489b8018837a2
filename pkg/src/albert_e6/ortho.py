"""Quadratic spaces over GF(q): reflections, the quasideterminant, stabiliser elements of an isotropic vector."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from . import octonion as oc
from .gf import GF, FieldError


@dataclass(frozen=True, eq=False)
class QuadSpace:
    """F^dim with Q(x) = sum x_i^2 qdiag_i + sum_{i<j} x_i x_j gram_ij.

    ``gram`` is the polar form f(x,y) = Q(x+y) - Q(x) - Q(y).  The diagonal
    values are stored separately because in characteristic 2 the Gram
    matrix does not determine Q.
    """

    field: GF
    gram: np.ndarray
    qdiag: np.ndarray

    def __post_init__(self):
        F = self.field
        G = np.asarray(self.gram, dtype=np.int64) % F.q
        d = np.asarray(self.qdiag, dtype=np.int64) % F.q
        n = len(d)
        if G.shape != (n, n) or not np.array_equal(G, G.T):
            raise FieldError("the polar form must be a symmetric dim x dim matrix")
        if not np.array_equal(np.diag(G), F.add(d, d)):
            raise FieldError("the polar form must satisfy f(x,x) = 2Q(x)")
        if linalg.rank(F, G) != n:
            raise FieldError("the polar form is degenerate")
        object.__setattr__(self, "gram", G)
        object.__setattr__(self, "qdiag", d)

    @property
    def dim(self) -> int:
        return len(self.qdiag)

    @classmethod
    def octonions(cls, F: GF) -> QuadSpace:
        """The norm form N on the split octonions."""
        G = np.zeros((8, 8), dtype=np.int64)
        for i in range(8):
            G[i, 7 - i] = 1
        return cls(F, G, np.zeros(8, dtype=np.int64))

    @classmethod
    def hyperbolic_extension(cls, W: QuadSpace) -> QuadSpace:
        """W with a hyperbolic pair (v1, v2) added, basis order (v1, w..., v2)."""
        n = W.dim + 2
        G = np.zeros((n, n), dtype=np.int64)
        G[1:-1, 1:-1] = W.gram
        G[0, -1] = G[-1, 0] = 1
        d = np.concatenate([[0], W.qdiag, [0]])
        return cls(W.field, G, d)

    def f(self, x, y):
        F = self.field
        return int(linalg.matmul(F, linalg.matmul(F, np.asarray(x)[None], self.gram), np.asarray(y)[:, None])[0, 0])

    def Q(self, x) -> int:
        F = self.field
        x = np.asarray(x, dtype=np.int64)
        acc = 0
        for i in range(self.dim):
            acc = F.add(acc, F.mul(F.mul(int(x[i]), int(x[i])), int(self.qdiag[i])))
            for j in range(i + 1, self.dim):
                acc = F.add(acc, F.mul(F.mul(int(x[i]), int(x[j])), int(self.gram[i, j])))
        return int(acc)

    def preserved_by(self, g) -> bool:
        """Q(e_i g) = Q(e_i) on the basis and f(e_i g, e_j g) = f(e_i, e_j) on all pairs."""
        F = self.field
        g = np.asarray(g, dtype=np.int64)
        if any(self.Q(g[i]) != int(self.qdiag[i]) for i in range(self.dim)):
            return False
        return np.array_equal(linalg.matmul(F, linalg.matmul(F, g, self.gram), g.T), self.gram)


@dataclass(frozen=True, eq=False)
class OrthoElement:
    space: QuadSpace
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.int64)
        if m.shape != (self.space.dim, self.space.dim):
            raise ValueError("matrix does not match the space")
        if not self.space.preserved_by(m):
            raise ValueError("matrix does not preserve the quadratic form")
        object.__setattr__(self, "matrix", m)

    def __eq__(self, other):
        return isinstance(other, OrthoElement) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())

    def then(self, other: OrthoElement) -> OrthoElement:
        """Apply self, then other (row vectors)."""
        return OrthoElement(self.space, linalg.matmul(self.space.field, self.matrix, other.matrix))

    def apply(self, x) -> np.ndarray:
        return linalg.matmul(self.space.field, np.asarray(x)[None], self.matrix)[0]

    @classmethod
    def identity(cls, space: QuadSpace) -> OrthoElement:
        return cls(space, linalg.identity(space.dim))


def reflection(space: QuadSpace, v) -> OrthoElement:
    """x -> x - f(x,v)/Q(v) v."""
    F = space.field
    v = np.asarray(v, dtype=np.int64)
    qv = space.Q(v)
    if qv == 0:
        raise ValueError("cannot reflect in an isotropic vector")
    fx = linalg.matmul(F, space.gram, v[:, None])[:, 0]  # f(e_i, v)
    coef = F.mul(fx, F.inv(qv))
    m = F.sub(linalg.identity(space.dim), F.mul(coef[:, None], v[None, :]))
    return OrthoElement(space, m)


def octonion_reflection(F: GF, v, x) -> list:
    """r_v(x) = x - T(x v')/N(v) v, with v' the conjugate."""
    s = F.mul(oc.trace(F, oc.mul(F, x, oc.conj(F, v))), F.inv(oc.norm(F, v)))
    return oc.sub(F, x, oc.scale(F, s, v))


def qdet(space: QuadSpace, g: OrthoElement) -> int:
    """dim Im(I - g) mod 2, defined in characteristic 2."""
    F = space.field
    if F.p != 2:
        raise FieldError("the quasideterminant is defined in characteristic 2")
    return linalg.rank(F, F.sub(linalg.identity(space.dim), g.matrix)) % 2


def hat_element(W: QuadSpace, A, u1) -> OrthoElement:
    """The element of the stabiliser of v1 acting as A on W and sending v2 to (-Q_W(u1) | u1 | 1).

    Rows are the images of v1, w_1..w_2m, v2.  The w-rows start with the
    column -A B u1^T (B the Gram matrix of W), forced by preserving f.
    """
    F = W.field
    A = np.asarray(A, dtype=np.int64)
    u1 = np.asarray(u1, dtype=np.int64)
    if not W.preserved_by(A):
        raise ValueError("A does not preserve Q_W")
    n = W.dim
    V = QuadSpace.hyperbolic_extension(W)
    m = np.zeros((n + 2, n + 2), dtype=np.int64)
    m[0, 0] = 1
    m[1:-1, 1:-1] = A
    m[1:-1, 0] = F.neg(linalg.matmul(F, linalg.matmul(F, A, W.gram), u1[:, None])[:, 0])
    m[-1, 0] = F.neg(W.Q(u1))
    m[-1, 1:-1] = u1
    m[-1, -1] = 1
    return OrthoElement(V, m)
