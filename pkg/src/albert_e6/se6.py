"""Generators of SE6(F) acting on the Albert space, and 27x27 matrices for them.

Every action is a closed-form coordinate formula.  They come from writing an
Albert vector as the octonion-Hermitian matrix

    X = [[a, C, B'], [C', b, A], [B, A', c]]      (primes denote conjugates)

and expanding X -> conj(M)^T X M for the 3x3 matrices below (I + xE_ij has a
single off-diagonal octonion entry x in row i, column j):

    M_x = I + xE01    Mp_x = I + xE12    Mpp_x = I + xE20
    L_x = I + xE10    Lp_x = I + xE21    Lpp_x = I + xE02
    Pu = diag(u, u', 1)   Pup = diag(1, u, u')   Pupp = diag(u', 1, u)
    PScale(u) = diag(1, u^-1, u)

The primed families are the tau-conjugates of the unprimed ones and L_x is the
delta-conjugate of M_x; the test-suite checks each formula against a literal
evaluation of the matrix product and the conjugation relations as words.

Maps act on row vectors: X -> X @ matrix.  A word [g1, g2, ...] applies g1
first, so its matrix is the product g1 @ g2 @ ... in that order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import albert as al
from . import linalg
from . import octonion as oc
from .gf import GF, FieldError, NotInvertibleError
from .octonion import Octonion
from .ortho import octonion_reflection

KINDS = ("M", "Mp", "Mpp", "L", "Lp", "Lpp", "Pu", "Pup", "Pupp", "PScale", "Delta", "Tau")
UNIPOTENT_KINDS = KINDS[:6]
_CANONICAL = {k.lower(): k for k in KINDS}
_PARAM_NAME = {k: "x" for k in UNIPOTENT_KINDS} | {k: "u" for k in ("Pu", "Pup", "Pupp", "PScale")}


# -- closed forms ------------------------------------------------------------


def _T(F, x, y):
    return oc.trace(F, oc.mul(F, x, y))


def act(F, kind: str, v, x=None) -> list:
    """Image of the vector with coordinates ``v`` (27 items) under one generator.

    ``x`` is the parameter as 8 items; items broadcast, so ``v`` may hold
    columns of a batch and ``x`` columns of a batch of parameters.
    """
    a, b, c, A, B, C = al.parts(v)
    cj = lambda z: oc.conj(F, z)  # noqa: E731
    mul = lambda y, z: oc.mul(F, y, z)  # noqa: E731
    add = lambda y, z: oc.add(F, y, z)  # noqa: E731
    sc = lambda s, z: oc.scale(F, s, z)  # noqa: E731
    if kind == "Delta":
        return [b, a, c, *cj(B), *cj(A), *cj(C)]
    if kind == "Tau":
        return [c, a, b, *C, *A, *B]
    if kind in UNIPOTENT_KINDS:
        n = oc.norm(F, x)
        xb = cj(x)
    if kind == "M":
        return [a, F.add(F.add(b, F.mul(a, n)), _T(F, xb, C)), c,
                *add(A, mul(xb, cj(B))), *B, *add(C, sc(a, x))]
    if kind == "Mp":
        return [a, b, F.add(F.add(c, F.mul(b, n)), _T(F, xb, A)),
                *add(A, sc(b, x)), *add(B, mul(xb, cj(C))), *C]
    if kind == "Mpp":
        return [F.add(F.add(a, F.mul(c, n)), _T(F, xb, B)), b, c,
                *A, *add(B, sc(c, x)), *add(C, mul(xb, cj(A)))]
    if kind == "L":
        return [F.add(F.add(a, F.mul(b, n)), _T(F, C, x)), b, c,
                *A, *add(B, mul(cj(A), x)), *add(C, sc(b, xb))]
    if kind == "Lp":
        return [a, F.add(F.add(b, F.mul(c, n)), _T(F, A, x)), c,
                *add(A, sc(c, xb)), *B, *add(C, mul(cj(B), x))]
    if kind == "Lpp":
        return [a, b, F.add(F.add(c, F.mul(a, n)), _T(F, B, x)),
                *add(A, mul(cj(C), x)), *add(B, sc(a, xb)), *C]
    u = x
    ub = cj(u)
    if kind == "Pu":
        return [a, b, c, *mul(u, A), *mul(B, u), *mul(mul(ub, C), ub)]
    if kind == "Pup":
        return [a, b, c, *mul(mul(ub, A), ub), *mul(u, B), *mul(C, u)]
    if kind == "Pupp":
        return [a, b, c, *mul(A, u), *mul(mul(ub, B), ub), *mul(u, C)]
    if kind == "PScale":
        # diag(1, u^-1, u) with n = N(u) != 0 and u^-1 = u'/n
        n = oc.norm(F, u)
        ni = F.inv(n)
        return [a, F.mul(b, ni), F.mul(c, n),
                *sc(ni, mul(mul(u, A), u)), *mul(ub, B), *sc(ni, mul(C, ub))]
    raise ValueError(f"unknown generator kind {kind!r}")


# -- generator specifications ------------------------------------------------


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    param: Octonion | None = None

    def __post_init__(self):
        kind = _CANONICAL.get(str(self.kind).lower())
        if kind is None:
            raise ValueError(f"unknown generator kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        object.__setattr__(self, "kind", kind)
        if kind in ("Delta", "Tau"):
            if self.param is not None:
                raise ValueError(f"{kind} takes no parameter")
            return
        if not isinstance(self.param, Octonion):
            raise ValueError(f"{kind} needs an octonion parameter")
        n = self.param.norm()
        if kind in ("Pu", "Pup", "Pupp") and n != 1:
            raise ValueError(f"{kind} needs a parameter of norm 1, got norm {n}")
        if kind == "PScale" and not n:
            raise ValueError("PScale needs a parameter of nonzero norm")

    @property
    def field(self) -> GF | None:
        return None if self.param is None else self.param.field

    def __str__(self):
        if self.param is None:
            return self.kind.lower()
        return f"{self.kind}:{_PARAM_NAME[self.kind]}={self.param}"

    @classmethod
    def parse(cls, F: GF, text: str) -> GeneratorSpec:
        s = text.strip()
        if ":" not in s:
            return cls(s)
        kind, rest = s.split(":", 1)
        kind = kind.strip()
        if "=" not in rest:
            raise ValueError(f"generator literal {text!r} lacks 'x=' or 'u='")
        _, lit = rest.split("=", 1)
        return cls(kind, Octonion.parse(F, lit))


def M(x):
    return GeneratorSpec("M", x)


def Mp(x):
    return GeneratorSpec("Mp", x)


def Mpp(x):
    return GeneratorSpec("Mpp", x)


def L(x):
    return GeneratorSpec("L", x)


def Lp(x):
    return GeneratorSpec("Lp", x)


def Lpp(x):
    return GeneratorSpec("Lpp", x)


def Pu(u):
    return GeneratorSpec("Pu", u)


def Pup(u):
    return GeneratorSpec("Pup", u)


def Pupp(u):
    return GeneratorSpec("Pupp", u)


def PScale(u):
    return GeneratorSpec("PScale", u)


DELTA = GeneratorSpec("Delta")
TAU = GeneratorSpec("Tau")


def apply_generator(g: GeneratorSpec, X: al.AlbertVector) -> al.AlbertVector:
    F = X.field
    if g.field is not None and g.field != F:
        raise FieldError(f"generator over {g.field} applied to a vector over {F}")
    x = None if g.param is None else list(g.param.coords)
    return al.AlbertVector(F, [int(t) for t in act(F, g.kind, list(X.coords), x)])


# -- maps ---------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class AlbertMap:
    field: GF
    matrix: np.ndarray = dc_field(repr=False)

    def __post_init__(self):
        m = np.ascontiguousarray(self.matrix, dtype=np.int64)
        if m.shape != (al.DIM, al.DIM):
            raise ValueError(f"an Albert map is {al.DIM}x{al.DIM}, got {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls, F: GF) -> AlbertMap:
        return cls(F, linalg.identity(al.DIM))

    def __eq__(self, other):
        return (
            isinstance(other, AlbertMap)
            and other.field == self.field
            and np.array_equal(other.matrix, self.matrix)
        )

    def __hash__(self):
        return hash((self.field, self.matrix.tobytes()))

    def then(self, other: AlbertMap) -> AlbertMap:
        """Apply self, then other."""
        return compose(self, other)

    def inverse(self) -> AlbertMap:
        return invert(self)

    def apply(self, X: al.AlbertVector) -> al.AlbertVector:
        return al.AlbertVector(self.field, linalg.apply_many(self.field, X.array()[None], self.matrix)[0])

    def apply_many(self, X) -> np.ndarray:
        return linalg.apply_many(self.field, X, self.matrix)

    def is_identity(self) -> bool:
        return np.array_equal(self.matrix, linalg.identity(al.DIM))


def compose(f: AlbertMap, g: AlbertMap) -> AlbertMap:
    """The map that applies f first and then g."""
    if f.field != g.field:
        raise FieldError(f"mismatched fields {f.field} and {g.field}")
    return AlbertMap(f.field, linalg.matmul(f.field, f.matrix, g.matrix))


def invert(f: AlbertMap) -> AlbertMap:
    try:
        return AlbertMap(f.field, linalg.inverse(f.field, f.matrix))
    except NotInvertibleError:
        raise NotInvertibleError("singular Albert map; generator words never produce one") from None


def _basis_columns():
    eye = linalg.identity(al.DIM)
    return [eye[:, k] for k in range(al.DIM)]


def generator_matrices(F: GF, kind: str, params=None) -> np.ndarray:
    """Matrices of one generator family for a batch of parameters.

    ``params`` is an (n, 8) array of octonion coordinates (ignored for delta
    and tau); the result has shape (n, 27, 27), or (27, 27) without params.
    Norm constraints are not validated here.
    """
    kind = _CANONICAL[kind.lower()]
    cols = _basis_columns()
    if params is None or kind in ("Delta", "Tau"):
        out = act(F, kind, cols)
        return np.stack([np.broadcast_to(np.asarray(t), (al.DIM,)) for t in out], axis=-1).astype(np.int64)
    P = np.asarray(params, dtype=np.int64)
    x = [P[:, j, None] for j in range(8)]
    out = act(F, kind, cols, x)
    shape = (len(P), al.DIM)
    return np.stack([np.broadcast_to(np.asarray(t), shape) for t in out], axis=-1).astype(np.int64)


def generator_matrix(g: GeneratorSpec, F: GF | None = None) -> AlbertMap:
    F = g.field if g.field is not None else F
    if F is None:
        raise ValueError(f"{g} has no parameter; pass the field explicitly")
    if g.param is None:
        return AlbertMap(F, generator_matrices(F, g.kind))
    return AlbertMap(F, generator_matrices(F, g.kind, np.array([g.param.coords]))[0])


@dataclass(frozen=True)
class GeneratorWord:
    factors: tuple[GeneratorSpec, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    def __len__(self):
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __add__(self, other: GeneratorWord) -> GeneratorWord:
        return GeneratorWord(self.factors + tuple(other))

    def __str__(self):
        return ";".join(str(g) for g in self.factors)

    @classmethod
    def parse(cls, F: GF, text: str) -> GeneratorWord:
        return cls(tuple(GeneratorSpec.parse(F, t) for t in text.split(";") if t.strip()))

    def apply(self, X: al.AlbertVector) -> al.AlbertVector:
        for g in self.factors:
            X = apply_generator(g, X)
        return X


def word_to_map(w, F: GF) -> AlbertMap:
    """Matrix of a word (left-to-right application); the empty word is the identity."""
    m = AlbertMap.identity(F)
    for g in w:
        m = compose(m, generator_matrix(g, F))
    return m


# -- determinant preservation -----------------------------------------------

EXHAUSTIVE_BUDGET = 2**27


def preserves_delta(
    f: AlbertMap,
    mode: str = "sampled",
    n: int = 10**4,
    rng: np.random.Generator | None = None,
    threads: int = 1,
    chunk: int = 100_000,
) -> bool:
    """Check Delta(X f) = Delta(X): over all of J (``"exhaustive"``) or n random X."""
    F = f.field
    if mode == "exhaustive":
        if F.q**al.DIM > EXHAUSTIVE_BUDGET:
            raise OverflowError(f"q^27 = {F.q}^27 exceeds the exhaustive budget of {EXHAUSTIVE_BUDGET}")
        from .bitslice import delta_preserved_gf2

        return delta_preserved_gf2(f.matrix, threads=threads)
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    rng = rng if rng is not None else np.random.default_rng(0)
    done = 0
    while done < n:
        m = min(chunk, n - done)
        X = F.random(rng, (m, al.DIM))
        Y = linalg.apply_many(F, X, f.matrix)
        if not np.array_equal(al.delta_raw(F, list(X.T)), al.delta_raw(F, list(Y.T))):
            return False
        done += m
    return True


# -- identities ------------------------------------------------------------

# (A, B, C): A^-1 B(x) A B(x)^-1 acts as C(x), with A's parameter -1
COMMUTATOR_IDENTITIES = (
    ("Lpp", "Lp", "M"),
    ("L", "Lpp", "Mp"),
    ("Lp", "L", "Mpp"),
    ("Mp", "Mpp", "L"),
    ("Mpp", "M", "Lp"),
    ("M", "Mp", "Lpp"),
)


def commutator_identities_check(x: Octonion) -> bool:
    """All six identities for one parameter, each side built as an AlbertMap."""
    F = x.field
    m1 = -Octonion.one(F)
    for ka, kb, kc in COMMUTATOR_IDENTITIES:
        A = generator_matrix(GeneratorSpec(ka, m1))
        B = generator_matrix(GeneratorSpec(kb, x))
        lhs = compose(compose(compose(invert(A), B), A), invert(B))
        if lhs != generator_matrix(GeneratorSpec(kc, x)):
            return False
    return True


def commutator_identities_many(F: GF, params) -> np.ndarray:
    """Per-parameter verdicts for a batch, via the equivalent B A = A C B."""
    P = np.asarray(params, dtype=np.int64)
    m1 = np.array([Octonion.one(F).__neg__().coords])
    ok = np.ones(len(P), dtype=bool)
    for ka, kb, kc in COMMUTATOR_IDENTITIES:
        A = generator_matrices(F, ka, m1)[0]
        B = generator_matrices(F, kb, P)
        C = generator_matrices(F, kc, P)
        lhs = linalg.matmul(F, B, A)
        rhs = linalg.matmul(F, linalg.matmul(F, A, C), B)
        ok &= np.all(lhs == rhs, axis=(1, 2))
    return ok


def q8_reflection_check(u: Octonion) -> bool:
    """P_u on the C coordinate (C -> u'Cu') against r_u followed by r_1, on a basis.

    Applying r_1 first instead gives C -> uCu, which differs whenever u' != u.
    """
    F = u.field
    if u.norm() != 1:
        raise ValueError(f"{u} does not have norm 1")
    one = Octonion.one(F).coords
    P = generator_matrix(Pu(u)).matrix[al.SLICE_C, al.SLICE_C]
    for j in range(8):
        e = [0] * 8
        e[j] = 1
        r = octonion_reflection(F, one, octonion_reflection(F, u.coords, e))
        if [int(t) for t in r] != [int(t) for t in P[j]]:
            return False
    return True


# -- the F^16 subgroup ---------------------------------------------------------


def all_octonion_coords(F: GF) -> np.ndarray:
    """All q^8 coordinate vectors; row i has digits of i in base q, last coordinate fastest."""
    return np.indices((F.q,) * 8).reshape(8, -1).T.copy()


def f16_checks(F: GF, threads: int = 1) -> dict:
    """Distinctness, commutation and additivity for the Mp/Lpp families over all pairs."""
    X = all_octonion_coords(F)
    Mps = generator_matrices(F, "Mp", X)
    Lpps = generator_matrices(F, "Lpp", X)
    n = len(X)
    products = set()
    commute = additive_mp = additive_lpp = True
    # index of x+y for each pair, from the coordinate encoding
    weights = F.q ** np.arange(8)[::-1]

    def row(i):
        prods = linalg.matmul(F, Mps[i], Lpps)
        comm = np.array_equal(prods, linalg.matmul(F, Lpps, Mps[i]))
        s = F.add(X[i], X) @ weights
        add_m = np.array_equal(linalg.matmul(F, Mps[i], Mps), Mps[s])
        add_l = np.array_equal(linalg.matmul(F, Lpps[i], Lpps), Lpps[s])
        return prods.reshape(n, -1), comm, add_m, add_l

    with ThreadPoolExecutor(max_workers=max(1, threads)) as ex:
        for prods, comm, add_m, add_l in ex.map(row, range(n)):
            products.update(p.astype(np.uint8).tobytes() if F.q <= 256 else p.tobytes() for p in prods)
            commute &= comm
            additive_mp &= add_m
            additive_lpp &= add_l
    return {
        "distinct": len(products),
        "expected": F.q**16,
        "commute": bool(commute),
        "additive_mp": bool(additive_mp),
        "additive_lpp": bool(additive_lpp),
    }
