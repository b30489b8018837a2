"""White-vector counts, orbit search on white points, reduction to canonical form, group orders."""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import albert as al
from . import linalg
from . import octonion as oc
from .gf import GF, FieldElement, FieldError, prime_power
from .octonion import Octonion
from .se6 import GeneratorSpec, GeneratorWord, all_octonion_coords, act, generator_matrices

MAX_CLOSED_FORM_Q = 16


def _check_q(q: int) -> int:
    q = int(q)
    prime_power(q)  # raises for anything that is not a prime power >= 2
    return q


# -- closed forms -------------------------------------------------------------


def count_white_formula(q: int) -> int:
    q = _check_q(q)
    num = (q**12 - 1) * (q**9 - 1)
    assert num % (q**4 - 1) == 0
    return num // (q**4 - 1)


def count_white_stratified(q: int) -> tuple[int, int, int, int]:
    """(J_10^{abC}, J_26^{abABC} minus J_10^{abC}, outside J_26^{abABC}, total)."""
    q = _check_q(q)
    n10 = (q**5 - 1) * (q**4 + 1)
    n26 = q**5 * (q**8 - 1) * (q**3 + 1)
    nout = q**16 * (q - 1)
    return n10, n26, nout, n10 + n26 + nout


def count_white_points(q: int) -> int:
    q = _check_q(q)
    num = (q**12 - 1) * (q**9 - 1)
    den = (q**4 - 1) * (q - 1)
    assert num % den == 0
    return num // den


def order_se6(q: int) -> int:
    q = _check_q(q)
    return q**36 * math.prod(q**k - 1 for k in (12, 9, 8, 6, 5, 2))


def order_e6(q: int) -> int:
    return order_se6(q) // math.gcd(3, _check_q(q) - 1)


def spin10_factor(q: int) -> int:
    q = _check_q(q)
    return q**20 * math.prod(q**k - 1 for k in (8, 6, 5, 4, 2))


def stabilizer_order_consistency(q: int) -> bool:
    """|SE6(q)| = (white points) * q^16 * S(q) * (q-1), with S(q) by exact division."""
    q = _check_q(q)
    rest = count_white_points(q) * q**16 * (q - 1)
    s, r = divmod(order_se6(q), rest)
    return r == 0 and s == spin10_factor(q)


def prime_powers(limit: int) -> list[int]:
    out = []
    for q in range(2, limit + 1):
        try:
            prime_power(q)
        except FieldError:
            continue
        out.append(q)
    return out


# -- enumeration ------------------------------------------------------------

ENUMERATION_BUDGET = 2**27


def count_white_enumerate(q: int, threads: int = 1, stratified: bool = False):
    """Brute-force count of white vectors among all nonzero vectors of J."""
    q = _check_q(q)
    if q**al.DIM > ENUMERATION_BUDGET:
        raise OverflowError(f"{q}^27 vectors exceed the enumeration budget of {ENUMERATION_BUDGET}")
    from .bitslice import count_white_gf2

    res = count_white_gf2(threads=threads)
    if stratified:
        return res["J10"], res["J26_minus_J10"], res["outside_J26"], res["total"]
    return res["total"]


def enumerate_subspace(F: GF, support: str) -> np.ndarray:
    """Every vector supported on the named coordinates, as rows."""
    idx = np.flatnonzero(al.subspace_mask(support))
    digits = np.indices((F.q,) * len(idx)).reshape(len(idx), -1).T
    X = np.zeros((len(digits), al.DIM), dtype=np.int64)
    X[:, idx] = digits
    return X


def white_mask(F: GF, X) -> np.ndarray:
    """Rows of X that are white (zero rows included; callers drop them)."""
    res = al.white_residuals_raw(F, list(np.asarray(X, dtype=np.int64).T))
    bad = np.zeros(len(X), dtype=bool)
    for r in res:
        bad |= np.asarray(r) != 0
    return ~bad


def count_white_in_subspace(F: GF, support: str, budget: int = 2**22) -> int:
    if F.q ** int(al.subspace_mask(support).sum()) > budget:
        raise OverflowError("subspace too large to enumerate")
    X = enumerate_subspace(F, support)
    X = X[np.any(X != 0, axis=1)]
    return int(white_mask(F, X).sum())


# -- projective points -----------------------------------------------------


def normalize_rows(F: GF, X) -> np.ndarray:
    """Scale each nonzero row so its first nonzero coordinate is 1."""
    X = np.asarray(X, dtype=np.int64)
    first = np.argmax(X != 0, axis=1)
    lead = X[np.arange(len(X)), first]
    lead = np.where(lead == 0, 1, lead)
    return F.mul(X, F.inv(lead)[:, None])


def encode_rows(F: GF, X) -> np.ndarray:
    """Integer code sum x_i q^i of each row (coordinate 0 lowest)."""
    if F.q**al.DIM >= 2**63:
        raise OverflowError(f"vectors over GF({F.q}) do not fit a 64-bit code")
    w = F.q ** np.arange(al.DIM, dtype=np.int64)
    return np.asarray(X, dtype=np.int64) @ w


def decode_codes(F: GF, codes) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    return (codes[:, None] // (F.q ** np.arange(al.DIM, dtype=np.int64))) % F.q


white_point_id = al.white_point_id


@dataclass(frozen=True, eq=False)
class Orbit:
    """A set of projective points, stored as sorted integer codes of normalized vectors."""

    field: GF
    codes: np.ndarray

    def __len__(self):
        return len(self.codes)

    def __contains__(self, X: al.AlbertVector) -> bool:
        c = int(encode_rows(self.field, normalize_rows(self.field, X.array()[None]))[0])
        i = np.searchsorted(self.codes, c)
        return i < len(self.codes) and self.codes[i] == c

    def __eq__(self, other):
        return isinstance(other, Orbit) and other.field == self.field and np.array_equal(other.codes, self.codes)

    def points(self):
        for row in decode_codes(self.field, self.codes):
            yield al.AlbertVector(self.field, row)

    def ids(self) -> set[al.AlbertVector]:
        return set(self.points())


def _as_matrices(F: GF, gens) -> np.ndarray:
    if isinstance(gens, np.ndarray):
        return gens.reshape(-1, al.DIM, al.DIM)
    mats = [generator_matrices(F, g.kind, None if g.param is None else np.array([g.param.coords])).reshape(al.DIM, al.DIM)
            for g in gens]
    return np.array(mats, dtype=np.int64).reshape(-1, al.DIM, al.DIM)


def family_matrices(F: GF, kinds, params=None) -> np.ndarray:
    """Stacked matrices of whole generator families, all parameters at once."""
    P = all_octonion_coords(F) if params is None else params
    out = []
    for k in kinds:
        if k.lower() in ("delta", "tau"):
            out.append(generator_matrices(F, k)[None])
        else:
            out.append(generator_matrices(F, k, P))
    return np.concatenate(out)


def standard_generators(F: GF) -> np.ndarray:
    """M, L and their primed forms over every octonion, plus delta and tau."""
    return family_matrices(F, ("M", "L", "Mp", "Lp", "Mpp", "Lpp", "Delta", "Tau"))


def norm_one_coords(F: GF) -> np.ndarray:
    X = all_octonion_coords(F)
    return X[oc.norm(F, list(X.T)) == 1]


def stabiliser_generators(F: GF) -> np.ndarray:
    """Generators fixing (0,0,1|0,0,0): M, L, Mp, Lpp over every octonion and Pupp over norm 1."""
    mats = family_matrices(F, ("M", "L", "Mp", "Lpp"))
    return np.concatenate([mats, generator_matrices(F, "Pupp", norm_one_coords(F))])


def _gf2_tables(mats: np.ndarray) -> np.ndarray:
    """Per generator, three 512-entry XOR tables indexed by 9-bit chunks of a vector code."""
    w = (1 << np.arange(al.DIM, dtype=np.int64))
    rows = (mats % 2) @ w  # (g, 27): code of each image row
    s = np.arange(512, dtype=np.int64)
    bits = (s[:, None] >> np.arange(9)) & 1  # (512, 9)
    tables = np.zeros((len(mats), 3, 512), dtype=np.int64)
    for k in range(3):
        chunk = rows[:, 9 * k: 9 * k + 9]  # (g, 9)
        tables[:, k] = np.bitwise_xor.reduce(np.where(bits[None] == 1, chunk[:, None, :], 0), axis=2)
    return tables


def _bfs_gf2(start_code: int, mats: np.ndarray, threads: int, max_points: int) -> np.ndarray:
    tables = _gf2_tables(mats)
    seen = np.zeros(1 << (al.DIM - 3), dtype=np.uint8)

    def test_and_set(codes):
        byte, bit = codes >> 3, (codes & 7).astype(np.uint8)
        fresh = (seen[byte] >> bit) & 1 == 0
        codes = codes[fresh]
        np.bitwise_or.at(seen, codes >> 3, (np.uint8(1) << (codes & 7).astype(np.uint8)))
        return codes

    frontier = test_and_set(np.array([start_code], dtype=np.int64))
    found = [frontier]
    total = 1

    def images(t, f):
        return t[0][f & 511] ^ t[1][(f >> 9) & 511] ^ t[2][f >> 18]

    while len(frontier):
        new = []
        with ThreadPoolExecutor(max_workers=max(1, threads)) as ex:
            # images in parallel, marking in generator order keeps the run deterministic
            for img in ex.map(lambda t: images(t, frontier), tables):
                fresh = test_and_set(img)
                if len(fresh):
                    new.append(fresh)
                    total += len(fresh)
        if total > max_points:
            raise OverflowError(f"orbit exceeds {max_points} points")
        frontier = np.concatenate(new) if new else np.zeros(0, dtype=np.int64)
        found.append(frontier)
    return np.sort(np.concatenate(found))


def _bfs_generic(F: GF, start: np.ndarray, mats: np.ndarray, max_points: int) -> np.ndarray:
    frontier = normalize_rows(F, start[None])
    seen = encode_rows(F, frontier)
    while len(frontier):
        imgs = []
        for m in mats:
            imgs.append(linalg.apply_many(F, frontier, m))
        imgs = normalize_rows(F, np.concatenate(imgs))
        codes, idx = np.unique(encode_rows(F, imgs), return_index=True)
        fresh = ~np.isin(codes, seen)
        frontier = imgs[idx[fresh]]
        seen = np.concatenate([seen, codes[fresh]])
        if len(seen) > max_points:
            raise OverflowError(f"orbit exceeds {max_points} points")
    return np.sort(seen)


def white_point_orbit_bfs(
    F: GF, start: al.AlbertVector, gens, threads: int = 1, max_points: int = 2_000_000
) -> Orbit:
    """Closure of the point spanned by ``start`` under the generators.

    ``gens`` is a list of :class:`GeneratorSpec` or a stacked (g, 27, 27)
    array of matrices.
    """
    if start.is_zero() or not al.whiteness_conditions(start):
        raise ValueError(f"{start} is not white")
    mats = _as_matrices(F, gens) if len(gens) else np.zeros((0, al.DIM, al.DIM), dtype=np.int64)
    if F.q == 2:
        code = int(encode_rows(F, start.array()[None])[0])
        return Orbit(F, _bfs_gf2(code, mats, threads, max_points))
    return Orbit(F, _bfs_generic(F, start.array(), mats, max_points))


def white_points_in_subspace(F: GF, support: str) -> Orbit:
    X = enumerate_subspace(F, support)
    X = X[np.any(X != 0, axis=1)]
    X = normalize_rows(F, X[white_mask(F, X)])
    return Orbit(F, np.unique(encode_rows(F, X)))


# -- reduction to canonical form ---------------------------------------------


class RepKind(enum.Enum):
    WHITE = "WhiteRep"
    GREY = "GreyRep"
    BLACK = "BlackRep"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class CanonicalForm:
    kind: RepKind
    word: GeneratorWord
    representative: al.AlbertVector
    lam: FieldElement | None = None

    def __str__(self):
        if self.kind is RepKind.BLACK:
            return f"BlackRep({self.lam})"
        return str(self.kind)


def _identity_param(kind: str) -> np.ndarray:
    """Parameter making a generator act trivially: 1 for the P families, 0 otherwise."""
    if kind in ("PScale", "Pu", "Pup", "Pupp"):
        return np.array([0, 0, 0, 1, 1, 0, 0, 0])
    return np.zeros(8, dtype=np.int64)


@dataclass
class Step:
    kind: str
    params: np.ndarray | None  # (n, 8) or None for tau
    mask: np.ndarray  # rows the step applies to


class BatchReduction:
    """Run the reduction on the rows of X at once, recording masked steps.

    Each step applies one generator family with a per-row parameter to the
    rows selected by its mask; row i's word is the subsequence of steps whose
    mask includes i.
    """

    def __init__(self, F: GF, X):
        self.F = F
        self.X0 = np.array(X, dtype=np.int64)
        if np.any(np.all(self.X0 == 0, axis=1)):
            raise ValueError("the zero vector has no canonical form")
        self.V = self.X0.copy()
        self.steps: list[Step] = []
        self.deltas = [al.delta_raw(F, list(self.V.T))]
        self._run()

    # helpers ------------------------------------------------------------

    def _apply(self, kind: str, mask: np.ndarray, params=None):
        if not mask.any():
            return
        F, n = self.F, len(self.V)
        cols = list(self.V.T)
        if kind == "Tau":
            out = act(F, kind, cols)
            new = np.stack([np.broadcast_to(o, (n,)) for o in out], axis=1)
            self.V = np.where(mask[:, None], new, self.V)
            self.steps.append(Step(kind, None, mask.copy()))
        else:
            P = np.where(mask[:, None], params, _identity_param(kind)[None])
            out = act(F, kind, cols, [P[:, j] for j in range(8)])
            self.V = np.stack([np.broadcast_to(o, (n,)) for o in out], axis=1).astype(np.int64)
            self.steps.append(Step(kind, P, mask.copy()))
        self.deltas.append(al.delta_raw(F, list(self.V.T)))

    def _trace_witness(self, Z: np.ndarray) -> np.ndarray:
        """Per row, the first basis octonion e_j with T(Z e_j) != 0 (zeros if none)."""
        F = self.F
        out = np.zeros((len(Z), 8), dtype=np.int64)
        todo = np.ones(len(Z), dtype=bool)
        for j in range(8):
            e = [0] * 8
            e[j] = 1
            t = oc.trace(F, oc.mul(F, list(Z.T), e)) != 0
            hit = todo & t
            out[hit, j] = 1
            todo &= ~hit
        return out

    def _scal(self, s, Z):
        return self.F.mul(np.asarray(s)[:, None], Z)

    def _inv(self, s, mask):
        return self.F.inv(np.where(mask, s, 1))

    # algorithm ----------------------------------------------------------

    def _run(self):
        F = self.F
        V = lambda: self.V  # noqa: E731
        nz = lambda Z: np.any(Z != 0, axis=1)  # noqa: E731

        # 1. no diagonal: bring a nonzero octonion to C, then L_x makes a != 0
        diag0 = ~nz(V()[:, :3])
        for _ in range(2):
            self._apply("Tau", diag0 & ~nz(V()[:, al.SLICE_C]))
        self._apply("L", diag0, self._trace_witness(V()[:, al.SLICE_C]))

        # 2. rotate a nonzero diagonal entry to c
        for _ in range(2):
            self._apply("Tau", V()[:, 2] == 0)

        # 3. Mpp_x sends B to B + c x: kill B with x = -B/c
        c = V()[:, 2]
        m = nz(V()[:, al.SLICE_B])
        self._apply("Mpp", m, F.neg(self._scal(self._inv(c, m), V()[:, al.SLICE_B])))

        # 4. Lp_x sends A to A + c x': kill A with x = -conj(A)/c
        c = V()[:, 2]
        m = nz(V()[:, al.SLICE_A])
        Ab = np.stack(oc.conj(F, list(V()[:, al.SLICE_A].T)), axis=1)
        self._apply("Lp", m, F.neg(self._scal(self._inv(c, m), Ab)))

        # 5. kill C using a (via M) or b (via L); if both vanish make a != 0 first
        m = nz(V()[:, al.SLICE_C])
        both0 = m & (V()[:, 0] == 0) & (V()[:, 1] == 0)
        self._apply("L", both0, self._trace_witness(V()[:, al.SLICE_C]))
        a, b = V()[:, 0], V()[:, 1]
        use_m = m & (a != 0)
        self._apply("M", use_m, F.neg(self._scal(self._inv(a, use_m), V()[:, al.SLICE_C])))
        m = nz(V()[:, al.SLICE_C])
        b = V()[:, 1]
        use_l = m & (b != 0)
        Cb = np.stack(oc.conj(F, list(V()[:, al.SLICE_C].T)), axis=1)
        self._apply("L", use_l, F.neg(self._scal(self._inv(b, use_l), Cb)))
        assert not np.any(V()[:, 3:]), "octonion parts survived the reduction"

        # 6. standardise the diagonal with tau and PScale
        count = np.sum(V()[:, :3] != 0, axis=1)
        white, grey, black = count == 1, count == 2, count == 3
        # white: move the single entry to c (step 2 already did), then c -> 1
        # grey: move the zero to a
        for _ in range(2):
            self._apply("Tau", grey & (V()[:, 0] != 0))
        # c -> 1 via PScale(u), N(u) = 1/c, which scales the diagonal by (1, 1/N, N)
        c = V()[:, 2]
        m = (white | grey | black) & (c != 1)
        self._apply("PScale", m, self._scale_param(self._inv(c, m)))
        # b -> 1 via tau; PScale(u); tau; tau, which scales the diagonal by (1/N, N, 1)
        b = V()[:, 1]
        m = (grey | black) & (b != 1)
        mb = self._inv(b, m)
        self._apply("Tau", m)
        self._apply("PScale", m, self._scale_param(mb))
        self._apply("Tau", m)
        self._apply("Tau", m)
        self.count = count

    def _scale_param(self, n) -> np.ndarray:
        """u = n e_0 + e_-0, so N(u) = n."""
        P = np.zeros((len(n), 8), dtype=np.int64)
        P[:, oc.IDX_ZERO] = n
        P[:, oc.IDX_MZERO] = 1
        return P

    # results -----------------------------------------------------------

    @property
    def representatives(self) -> np.ndarray:
        return self.V

    def kinds(self) -> np.ndarray:
        """0 white, 1 grey, 2 black (the colour codes of :func:`albert.classify_many`)."""
        return self.count - 1

    def word(self, i: int) -> GeneratorWord:
        F = self.F
        out = []
        for s in self.steps:
            if s.mask[i]:
                out.append(GeneratorSpec(s.kind, None if s.params is None else Octonion(F, s.params[i])))
        return GeneratorWord(tuple(out))

    def replay_with_matrices(self, chunk: int = 8192) -> np.ndarray:
        """Apply each row's word to its input through generator matrices."""
        F = self.F
        Y = self.X0.copy()
        for s in self.steps:
            rows = np.flatnonzero(s.mask)
            for lo in range(0, len(rows), chunk):
                r = rows[lo: lo + chunk]
                if s.params is None:
                    mats = np.broadcast_to(generator_matrices(F, s.kind), (len(r), al.DIM, al.DIM))
                else:
                    mats = generator_matrices(F, s.kind, s.params[r])
                Y[r] = linalg.matmul(F, Y[r][:, None, :], mats)[:, 0, :]
        return Y


def reduce_to_canonical(X: al.AlbertVector) -> CanonicalForm:
    if X.is_zero():
        raise ValueError("the zero vector has no canonical form")
    F = X.field
    red = BatchReduction(F, X.array()[None])
    rep = al.AlbertVector(F, red.representatives[0])
    kind = (RepKind.WHITE, RepKind.GREY, RepKind.BLACK)[int(red.kinds()[0])]
    lam = rep.a if kind is RepKind.BLACK else None
    return CanonicalForm(kind, red.word(0), rep, lam)
