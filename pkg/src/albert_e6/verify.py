"""Verification suites: each runs a group of exact checks and reports pass/fail per check."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import albert as al
from . import octonion as oc
from . import orbits as ob
from .gf import GF
from .octonion import Octonion
from .se6 import (
    KINDS,
    GeneratorSpec,
    all_octonion_coords,
    commutator_identities_many,
    f16_checks,
    generator_matrices,
    generator_matrix,
    preserves_delta,
    q8_reflection_check,
    word_to_map,
)

SUITES = ("moufang", "conjugation", "generators", "commutators", "f16", "reflections", "counts", "orders")


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict = dc_field(default_factory=dict)


# -- octonion identities on batches --------------------------------------------


def _cols(X):
    return [X[:, j] for j in range(8)]


def _eq(a, b):
    return np.all(np.stack([np.asarray(s) for s in a]) == np.stack([np.asarray(t) for t in b]), axis=0)


def octonion_identities(F: GF, X, Y, Z) -> dict[str, np.ndarray]:
    """Per-triple truth values of the octonion identities (rows of X, Y, Z are octonions)."""
    x, y, z = _cols(X), _cols(Y), _cols(Z)
    m = lambda s, t: oc.mul(F, s, t)  # noqa: E731
    c = lambda s: oc.conj(F, s)  # noqa: E731
    N = lambda s: oc.norm(F, s)  # noqa: E731
    T = lambda s: oc.trace(F, s)  # noqa: E731
    sc = lambda k, s: oc.scale(F, k, s)  # noqa: E731
    add, sub = (lambda s, t: oc.add(F, s, t)), (lambda s, t: oc.sub(F, s, t))
    one = oc.from_scalar(F, F.ones_like(x[0]))
    xy = m(x, y)
    return {
        "composition": N(xy) == F.mul(N(x), N(y)),
        "quadratic": _eq(add(sub(m(x, x), sc(T(x), x)), sc(N(x), one)), [F.zeros_like(x[0])] * 8),
        "x_conj_x": _eq(m(x, c(x)), sc(N(x), one)),
        "conj_product": _eq(c(xy), m(c(y), c(x))),
        "conj_involution": _eq(c(c(x)), x),
        "conj_norm": N(c(x)) == N(x),
        "kirmse_left": _eq(m(x, m(c(x), y)), sc(N(x), y)),
        "kirmse_right": _eq(m(m(x, c(y)), y), sc(N(y), x)),
        "kirmse_polar": _eq(add(m(x, m(c(y), z)), m(y, m(c(x), z))), sc(oc.polar(F, x, y), z)),
        "left_alternative": _eq(m(m(x, x), y), m(x, xy)),
        "right_alternative": _eq(m(m(y, x), x), m(y, m(x, x))),
        "flexible": _eq(m(xy, x), m(x, m(y, x))),
        "moufang_1": _eq(m(m(z, x), m(y, z)), m(m(z, m(x, y)), z)),
        "moufang_2": _eq(m(z, m(x, m(z, y))), m(m(m(z, x), z), y)),
        "moufang_3": _eq(m(m(m(x, z), y), z), m(x, m(z, m(y, z)))),
        "trace_commutative": T(xy) == T(m(y, x)),
        "trace_associative": T(m(xy, z)) == T(m(x, m(y, z))),
        "polar_is_trace": oc.polar(F, x, y) == T(m(x, c(y))),
    }


MOUFANG_GROUP = (
    "kirmse_left", "kirmse_right", "kirmse_polar", "left_alternative", "right_alternative",
    "flexible", "moufang_1", "moufang_2", "moufang_3",
)
CONJUGATION_GROUP = (
    "composition", "quadratic", "x_conj_x", "conj_product", "conj_involution", "conj_norm",
    "trace_commutative", "trace_associative", "polar_is_trace",
)


def basis_triples() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    idx = np.indices((8, 8, 8)).reshape(3, -1)
    eye = np.eye(8, dtype=np.int64)
    return eye[idx[0]], eye[idx[1]], eye[idx[2]]


def _identity_checks(F: GF, names, samples: int, rng) -> list[Check]:
    X, Y, Z = basis_triples()
    on_basis = octonion_identities(F, X, Y, Z)
    R = F.random(rng, (3, samples, 8))
    on_random = octonion_identities(F, *R)
    out = []
    for n in names:
        out.append(Check(f"{n} (512 basis triples)", bool(np.all(on_basis[n]))))
        out.append(Check(f"{n} ({samples} random triples)", bool(np.all(on_random[n]))))
    if F.q == 2:
        # every pair, with z running through the basis
        P = all_octonion_coords(F)
        i, j = np.indices((len(P), len(P))).reshape(2, -1)
        eye = np.eye(8, dtype=np.int64)
        Zb = eye[np.arange(len(i)) % 8]
        every = octonion_identities(F, P[i], P[j], Zb)
        for n in names:
            out.append(Check(f"{n} (all 65536 pairs)", bool(np.all(every[n]))))
    return out


def suite_moufang(F, rng, samples):
    return _identity_checks(F, MOUFANG_GROUP, samples, rng)


def suite_conjugation(F, rng, samples):
    return _identity_checks(F, CONJUGATION_GROUP, samples, rng)


# -- generators ----------------------------------------------------------------


def representative_generators(F: GF) -> list[GeneratorSpec]:
    """One generator of each kind with a fixed nontrivial parameter."""
    x = Octonion(F, [1, 0, 1, 1, 0, 0, 1, 1]) if F.q > 2 else Octonion.basis(F, "e1") + Octonion.basis(F, "e0")
    # u = e0 + e-0 + e1 has norm 1 over every field
    u = Octonion.one(F) + Octonion.basis(F, "e1")
    # norm -1, so PScale really rescales when the characteristic is odd
    scale = Octonion.basis(F, "e0") - Octonion.basis(F, "e-0") + Octonion.basis(F, "e-1")
    out = []
    for k in KINDS:
        if k in ("Delta", "Tau"):
            out.append(GeneratorSpec(k))
        elif k in ("Pu", "Pup", "Pupp"):
            out.append(GeneratorSpec(k, u))
        elif k == "PScale":
            out.append(GeneratorSpec(k, scale))
        else:
            out.append(GeneratorSpec(k, x))
    return out


def factorization_holds(u: Octonion) -> tuple[bool, bool]:
    """P_u = M_{u-1} L_1 M_{u^-1 - 1} L_{-u}, and P_u P'_u P''_u = 1."""
    F = u.field
    one = Octonion.one(F)
    word = [GeneratorSpec("M", u - one), GeneratorSpec("L", one),
            GeneratorSpec("M", u.inverse() - one), GeneratorSpec("L", -u)]
    pu = generator_matrix(GeneratorSpec("Pu", u))
    triple = word_to_map([GeneratorSpec("Pu", u), GeneratorSpec("Pup", u), GeneratorSpec("Pupp", u)], F)
    return word_to_map(word, F) == pu, triple.is_identity()


def suite_generators(F, rng, samples, threads=1):
    out = []
    for g in representative_generators(F):
        f = generator_matrix(g, F)
        if F.q == 2:
            out.append(Check(f"Delta preserved by {g} (all 2^27 vectors)", preserves_delta(f, "exhaustive", threads=threads)))
        else:
            out.append(Check(f"Delta preserved by {g} ({samples} samples)", preserves_delta(f, "sampled", samples, rng)))
    us = ob.norm_one_coords(F)
    if len(us) > 200:
        us = us[rng.choice(len(us), 200, replace=False)]
    fact = [factorization_holds(Octonion(F, u)) for u in us]
    out.append(Check(f"P_u = M L M L ({len(us)} norm-1 u)", all(a for a, _ in fact)))
    out.append(Check(f"P_u P'_u P''_u = 1 ({len(us)} norm-1 u)", all(b for _, b in fact)))
    return out


def suite_commutators(F, rng, samples):
    if F.q**8 <= 6561:
        P, label = all_octonion_coords(F), f"all {F.q ** 8} parameters"
    else:
        P, label = F.random(rng, (min(samples, 2000), 8)), f"{min(samples, 2000)} random parameters"
    ok = np.concatenate([commutator_identities_many(F, P[i: i + 2048]) for i in range(0, len(P), 2048)])
    return [Check(f"six commutator identities ({label})", bool(ok.all()), {"failures": int((~ok).sum())})]


def suite_f16(F, rng, samples, threads=1):
    if F.q != 2:
        X = F.random(rng, (2, min(samples, 500), 8))
        Y = F.add(X[0], X[1])
        mp, mq = generator_matrices(F, "Mp", X[0]), generator_matrices(F, "Mp", X[1])
        lp, lq = generator_matrices(F, "Lpp", X[0]), generator_matrices(F, "Lpp", X[1])
        from .linalg import matmul

        return [
            Check("Mp and Lpp commute (sampled)", bool(np.array_equal(matmul(F, mp, lq), matmul(F, lq, mp)))),
            Check("Mp additive (sampled)", bool(np.array_equal(matmul(F, mp, mq), generator_matrices(F, "Mp", Y)))),
            Check("Lpp additive (sampled)", bool(np.array_equal(matmul(F, lp, lq), generator_matrices(F, "Lpp", Y)))),
        ]
    r = f16_checks(F, threads=threads)
    return [
        Check("65536 distinct Mp(x) Lpp(y) matrices", r["distinct"] == r["expected"], {"distinct": r["distinct"]}),
        Check("Mp(x) and Lpp(y) commute for all pairs", r["commute"]),
        Check("Mp(x) Mp(y) = Mp(x+y) for all pairs", r["additive_mp"]),
        Check("Lpp(x) Lpp(y) = Lpp(x+y) for all pairs", r["additive_lpp"]),
    ]


def suite_reflections(F, rng, samples):
    us = ob.norm_one_coords(F)
    label = f"all {len(us)} norm-1 u"
    if len(us) > samples:
        us = us[rng.choice(len(us), samples, replace=False)]
        label = f"{samples} sampled norm-1 u"
    ok = all(q8_reflection_check(Octonion(F, u)) for u in us)
    return [Check(f"P_u on C equals r_u then r_1 ({label})", ok)]


def suite_counts(F, rng, samples, threads=1):
    q = F.q
    n10, n26, nout, tot = ob.count_white_stratified(q)
    out = [
        Check("stratified sum equals closed form", tot == ob.count_white_formula(q), {"total": tot}),
        Check("white points times (q-1) equals white vectors", ob.count_white_points(q) * (q - 1) == tot),
    ]
    if q**10 <= 2**22:
        out.append(Check("white vectors in J10 by enumeration", ob.count_white_in_subspace(F, al.J10_abC) == n10))
    if q == 2:
        e = ob.count_white_enumerate(q, threads=threads, stratified=True)
        out.append(Check("brute force over 2^27 vectors", e == (n10, n26, nout, tot), {"enumerated": list(e)}))
    return out


def suite_orders(F, rng, samples):
    out = []
    for q in ob.prime_powers(ob.MAX_CLOSED_FORM_Q):
        ok = ob.stabilizer_order_consistency(q)
        ok &= ob.order_se6(q) == ob.order_e6(q) * math.gcd(3, q - 1)
        ok &= ob.order_se6(q) % ob.count_white_points(q) == 0
        out.append(Check(f"order identities at q={q}", bool(ok)))
    return out


def run_suite(name: str, F: GF, seed: int = 0, samples: int = 1000, threads: int = 1) -> list[Check]:
    rng = np.random.default_rng(seed)
    fn = {
        "moufang": lambda: suite_moufang(F, rng, samples),
        "conjugation": lambda: suite_conjugation(F, rng, samples),
        "generators": lambda: suite_generators(F, rng, samples, threads),
        "commutators": lambda: suite_commutators(F, rng, samples),
        "f16": lambda: suite_f16(F, rng, samples, threads),
        "reflections": lambda: suite_reflections(F, rng, samples),
        "counts": lambda: suite_counts(F, rng, samples, threads),
        "orders": lambda: suite_orders(F, rng, samples),
    }
    if name == "all":
        return [c for s in SUITES for c in run_suite(s, F, seed, samples, threads)]
    if name not in fn:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    return fn[name]()
