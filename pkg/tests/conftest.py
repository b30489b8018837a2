import numpy as np
import pytest

from albert_e6 import albert as al
from albert_e6 import se6
from albert_e6.gf import field
from albert_e6.octonion import Octonion

# 3x3 octonion matrices used as an independent oracle for the generator
# actions: each kind is the matrix g with X -> conj(g)^T X g.
_OFF_DIAGONAL = {
    "M": (0, 1), "Mp": (1, 2), "Mpp": (2, 0),
    "L": (1, 0), "Lp": (2, 1), "Lpp": (0, 2),
}


def oct_matrix(F, kind, x):
    one, zero = Octonion.one(F), Octonion.zero(F)
    g = [[one if i == j else zero for j in range(3)] for i in range(3)]
    if kind in _OFF_DIAGONAL:
        i, j = _OFF_DIAGONAL[kind]
        g[i][j] = x
        return g
    diag = {
        "Pu": (x, x.conj(), one),
        "Pup": (one, x, x.conj()),
        "Pupp": (x.conj(), one, x),
        "PScale": (one, x.inverse(), x),
    }[kind]
    for i in range(3):
        g[i][i] = diag[i]
    return g


def hermitian(X):
    s = lambda t: Octonion.scalar(X.field, t)  # noqa: E731
    A, B, C = X.A, X.B, X.C
    return [[s(X.a), C, B.conj()], [C.conj(), s(X.b), A], [B, A.conj(), s(X.c)]]


def from_hermitian(F, Y):
    return al.AlbertVector.from_parts(
        F, Y[0][0].as_scalar(), Y[1][1].as_scalar(), Y[2][2].as_scalar(), Y[1][2], Y[2][0], Y[0][1]
    )


def _matmul3(P, Q):
    F = P[0][0].field
    out = []
    for i in range(3):
        row = []
        for j in range(3):
            acc = Octonion.zero(F)
            for k in range(3):
                acc = acc + P[i][k] * Q[k][j]
            row.append(acc)
        out.append(row)
    return out


def conjugate_by(X, g):
    """conj(g)^T (X g), bracketed so that each entry is conj(g_ki) * (X_kl g_lj)."""
    gt = [[g[j][i].conj() for j in range(3)] for i in range(3)]
    return from_hermitian(X.field, _matmul3(gt, _matmul3(hermitian(X), g)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=[2, 3, 4, 5])
def F(request):
    return field(request.param)


@pytest.fixture
def F2():
    return field(2)


@pytest.fixture
def F3():
    return field(3)


def random_unit(F, rng):
    """A random octonion of norm 1."""
    while True:
        u = Octonion.random(F, rng)
        if u.norm() == 1:
            return u


def orbit_samples(F, rng, base, n, steps=12):
    """n images of the vector ``base`` under random words in the unipotent generators and tau."""
    X = np.tile(np.asarray(base, dtype=np.int64), (n, 1))
    kinds = se6.UNIPOTENT_KINDS + ("Tau",)
    for k in rng.integers(len(kinds), size=steps):
        params = None
        if kinds[k] != "Tau":
            P = F.random(rng, (n, 8))
            params = [P[:, j] for j in range(8)]
        out = se6.act(F, kinds[k], list(X.T), params)
        X = np.stack([np.broadcast_to(t, (n,)) for t in out], axis=1)
    return X.astype(np.int64)


# -- acceptance report ----------------------------------------------------------

CRITERIA: dict[int, tuple[bool, str]] = {}


def record_criterion(number, passed, detail):
    CRITERIA[number] = (bool(passed), detail)
    return bool(passed)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        passed, detail = CRITERIA[number]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} {number:>2}  {detail}")
