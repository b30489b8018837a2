"""Exhaustive evaluation over all of GF(2)^27 with bit-sliced polynomials.

Each coordinate of J becomes a *plane*: a uint64 array holding that
coordinate's value for 64 * len(plane) vectors at once.  Over GF(2) addition
is XOR and multiplication is AND, so the generic formulas in
:mod:`albert_e6.albert` run unchanged on planes through :class:`Planes`.

Vector number ``n`` (0 <= n < 2^27) has coordinate i equal to bit i of n, so
coordinate 0 varies fastest.  Bits 0-5 select the bit inside a word, bits
6-21 the word inside a block and bits 22-26 one of 32 blocks.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import albert as al

WORD_BITS = 6
BLOCK_BITS = 16
WORDS = 1 << BLOCK_BITS
N_BLOCKS = 1 << (al.DIM - WORD_BITS - BLOCK_BITS)
ALL = np.uint64(0xFFFFFFFFFFFFFFFF)

# bit t of word pattern i is bit i of t, for the six intra-word coordinates
_WORD_PATTERNS = [
    np.uint64(sum(1 << t for t in range(64) if (t >> i) & 1)) for i in range(WORD_BITS)
]


class Planes:
    """GF(2) arithmetic on bit-planes, shaped like :class:`~albert_e6.gf.GF`."""

    p = 2
    q = 2

    @staticmethod
    def add(x, y):
        return x ^ y

    sub = add

    @staticmethod
    def neg(x):
        return x

    @staticmethod
    def mul(x, y):
        return x & y

    @staticmethod
    def zeros_like(x):
        return np.zeros_like(x)

    @staticmethod
    def ones_like(x):
        return np.full_like(x, ALL)


PLANES = Planes()


def block_planes(block: int) -> list[np.ndarray]:
    """The 27 input planes for one block of 2^22 consecutive vectors."""
    w = np.arange(WORDS, dtype=np.uint64)
    planes = [np.full(WORDS, pat, dtype=np.uint64) for pat in _WORD_PATTERNS]
    for j in range(BLOCK_BITS):
        planes.append(np.where((w >> np.uint64(j)) & np.uint64(1), ALL, np.uint64(0)))
    for j in range(al.DIM - WORD_BITS - BLOCK_BITS):
        planes.append(np.full(WORDS, ALL if (block >> j) & 1 else 0, dtype=np.uint64))
    return planes


def transform(planes: list[np.ndarray], matrix) -> list[np.ndarray]:
    """Planes of X @ matrix over GF(2)."""
    m = np.asarray(matrix) % 2
    out = []
    for j in range(m.shape[1]):
        acc = np.zeros_like(planes[0])
        for i in np.flatnonzero(m[:, j]):
            acc ^= planes[i]
        out.append(acc)
    return out


def _any(planes) -> np.ndarray:
    acc = np.zeros_like(planes[0])
    for p in planes:
        acc |= p
    return acc


def popcount(x: np.ndarray) -> int:
    return int(np.bitwise_count(x).sum(dtype=np.int64))


def _map_blocks(fn, threads: int):
    # results come back in block order whatever the thread count
    if threads <= 1:
        return [fn(b) for b in range(N_BLOCKS)]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, range(N_BLOCKS)))


def delta_preserved_gf2(matrix, threads: int = 1) -> bool:
    """Delta(X @ matrix) == Delta(X) for every X in GF(2)^27."""

    def block(b):
        X = block_planes(b)
        d0 = al.delta_raw(PLANES, X)
        d1 = al.delta_raw(PLANES, transform(X, matrix))
        return not np.any(d0 ^ d1)

    return all(_map_blocks(block, threads))


def count_white_gf2(threads: int = 1) -> dict:
    """White vectors of GF(2)^27 by stratum, through the six whiteness conditions.

    Strata: J_10^{abC} (c = 0, A = B = 0), the rest of J_26^{abABC}
    (c = 0, (A,B) != 0) and everything with c != 0.
    """

    def block(b):
        X = block_planes(b)
        white = ~_any(al.white_residuals_raw(PLANES, X))
        c_zero = ~X[2]
        ab_zero = ~_any(X[al.SLICE_A] + X[al.SLICE_B])
        return (
            popcount(white & c_zero & ab_zero),
            popcount(white & c_zero & ~ab_zero),
            popcount(white & X[2]),
        )

    n10, n26, nout = (sum(col) for col in zip(*_map_blocks(block, threads)))
    n10 -= 1  # the zero vector satisfies every condition but has no colour
    return {"J10": n10, "J26_minus_J10": n26, "outside_J26": nout, "total": n10 + n26 + nout}


def colour_census_gf2(threads: int = 1) -> dict:
    """Cross-check the two whiteness tests and White => Delta = 0 over all of GF(2)^27.

    Counts vectors where the six conditions and the 27 mixed-form
    coefficients disagree, and white vectors with nonzero determinant.
    """

    def block(b):
        X = block_planes(b)
        by_conditions = ~_any(al.white_residuals_raw(PLANES, X))
        by_definition = ~_any(al.mixed_coefficients_raw(PLANES, X))
        d = al.delta_raw(PLANES, X)
        return (
            popcount(by_conditions ^ by_definition),
            popcount(by_definition & d),
            popcount(~by_definition & ~d),
            popcount(d),
        )

    dis, wd, grey, black = (sum(col) for col in zip(*_map_blocks(block, threads)))
    return {
        "disagreements": dis,
        "white_with_nonzero_delta": wd,
        "grey": grey,
        "black": black,
    }
