import numpy as np
import pytest

from albert_e6 import albert as al
from albert_e6 import se6
from albert_e6.albert import AlbertVector
from albert_e6.gf import FieldError, NotInvertibleError, field
from albert_e6.octonion import Octonion
from albert_e6.ortho import octonion_reflection
from albert_e6.se6 import (
    DELTA,
    TAU,
    AlbertMap,
    GeneratorSpec,
    GeneratorWord,
    apply_generator,
    compose,
    generator_matrix,
    invert,
    preserves_delta,
    word_to_map,
)
from albert_e6.verify import factorization_holds

from conftest import conjugate_by, oct_matrix, random_unit

PARAM_KINDS = ("M", "Mp", "Mpp", "L", "Lp", "Lpp", "Pu", "Pup", "Pupp", "PScale")


def random_param(F, kind, rng):
    if kind in ("Pu", "Pup", "Pupp"):
        return random_unit(F, rng)
    while True:
        x = Octonion.random(F, rng)
        if kind != "PScale" or x.norm():
            return x


def W(F, *gens):
    return word_to_map(list(gens), F)


@pytest.mark.parametrize("kind", PARAM_KINDS)
def test_closed_form_matches_matrix_conjugation(F, kind, rng):
    for _ in range(15):
        x = random_param(F, kind, rng)
        X = AlbertVector.random(F, rng)
        assert apply_generator(GeneratorSpec(kind, x), X) == conjugate_by(X, oct_matrix(F, kind, x))


def test_delta_and_tau_formulas(F, rng):
    X = AlbertVector.random(F, rng)
    assert apply_generator(DELTA, X) == AlbertVector.from_parts(F, X.b, X.a, X.c, X.B.conj(), X.A.conj(), X.C.conj())
    assert apply_generator(TAU, X) == AlbertVector.from_parts(F, X.c, X.a, X.b, X.C, X.A, X.B)


def test_action_examples(F, rng):
    e100 = AlbertVector.basis(F, 0)
    x = Octonion.random(F, rng)
    assert apply_generator(se6.M(x), e100) == AlbertVector.from_parts(F, 1, x.norm(), 0, C=x)
    assert apply_generator(DELTA, e100) == AlbertVector.basis(F, 1)
    X = AlbertVector.random(F, rng)
    assert apply_generator(TAU, apply_generator(TAU, apply_generator(TAU, X))) == X
    u = random_unit(F, rng)
    abc = AlbertVector.from_parts(F, 1, F.elements()[-1], 1)
    assert apply_generator(se6.Pu(u), abc) == abc


def test_matrix_rows_are_basis_images(F, rng):
    for kind in PARAM_KINDS:
        g = GeneratorSpec(kind, random_param(F, kind, rng))
        m = generator_matrix(g)
        for i in range(al.DIM):
            assert tuple(m.matrix[i]) == apply_generator(g, AlbertVector.basis(F, i)).coords
        X = AlbertVector.random(F, rng)
        assert m.apply(X) == apply_generator(g, X)


def test_involutions_and_identity(F):
    I = AlbertMap.identity(F)
    assert W(F, DELTA, DELTA) == I
    assert W(F, TAU, TAU, TAU) == I
    assert generator_matrix(se6.M(Octonion.zero(F))) == I
    assert W(F) == I
    t = generator_matrix(TAU, F)
    assert compose(t, invert(t)) == I


def test_kronecker_block_of_v4(F):
    idx = [0, 26, 19, 1]  # a, C_{e1}, C_{e-1}, b
    for lam in F.elements():
        m = generator_matrix(se6.M(lam * Octonion.basis(F, "e-1"))).matrix
        block = m[np.ix_(idx, idx)]
        rest = np.delete(m[idx], idx, axis=1)
        l = lam.code
        assert block.tolist() == [[1, 0, l, 0], [0, 1, 0, l], [0, 0, 1, 0], [0, 0, 0, 1]]
        assert not rest.any()


def test_conjugation_relations(F, rng):
    x = Octonion.random(F, rng)
    u = random_unit(F, rng)
    G = lambda kind, p: generator_matrix(GeneratorSpec(kind, p))  # noqa: E731
    assert G("Mp", x) == W(F, TAU, TAU, se6.M(x), TAU)
    assert G("Mpp", x) == W(F, TAU, se6.M(x), TAU, TAU)
    assert G("L", x) == W(F, DELTA, se6.M(x), DELTA)
    assert G("Lp", x) == W(F, TAU, TAU, se6.L(x), TAU)
    assert G("Lpp", x) == W(F, TAU, se6.L(x), TAU, TAU)
    assert G("Pup", u) == W(F, TAU, TAU, se6.Pu(u), TAU)
    assert G("Pupp", u) == W(F, TAU, se6.Pu(u), TAU, TAU)


def test_white_vector_stabilised(F, rng):
    W001 = AlbertVector.basis(F, 2)
    for _ in range(10):
        x = Octonion.random(F, rng)
        for g in (se6.M(x), se6.L(x), se6.Mp(x), se6.Lpp(x)):
            assert apply_generator(g, W001) == W001


def test_pscale(F, rng):
    for _ in range(5):
        u = random_param(F, "PScale", rng)
        assert apply_generator(se6.PScale(u), AlbertVector.basis(F, 2)) == AlbertVector.from_parts(F, 0, 0, u.norm())
        assert preserves_delta(generator_matrix(se6.PScale(u)), n=2000, rng=rng)


def test_pu_preserves_q8(F, rng):
    for _ in range(10):
        u = random_unit(F, rng)
        C = Octonion.random(F, rng)
        image = apply_generator(se6.Pu(u), AlbertVector.from_parts(F, C=C))
        assert al.q8(image.C) == al.q8(C)


def test_p_minus_one(F):
    g = generator_matrix(se6.Pu(-Octonion.one(F)))
    assert g.apply(AlbertVector.basis(F, 2)) == AlbertVector.basis(F, 2)
    assert g.is_identity() == (F.p == 2)


def test_additivity_and_commutation(F, rng):
    for _ in range(10):
        x, y = Octonion.random(F, rng), Octonion.random(F, rng)
        assert W(F, se6.Lpp(x), se6.Lpp(y)) == generator_matrix(se6.Lpp(x + y))
        assert W(F, se6.Mp(x), se6.Mp(y)) == generator_matrix(se6.Mp(x + y))
        assert W(F, se6.Mp(x), se6.Lpp(y)) == W(F, se6.Lpp(y), se6.Mp(x))


def test_factorization(F, rng):
    for _ in range(5):
        assert factorization_holds(random_unit(F, rng)) == (True, True)


def test_factorization_explicit_word():
    F = field(3)
    one = Octonion.one(F)
    for u in (one, Octonion.basis(F, "e1") + one, Octonion.basis(F, "e-w") + one):
        word = [se6.M(u - one), se6.L(one), se6.M(u.inverse() - one), se6.L(-u)]
        assert W(F, *word) == generator_matrix(se6.Pu(u))
        assert W(F, se6.Pu(u), se6.Pup(u), se6.Pupp(u)).is_identity()


@pytest.mark.slow
def test_preserves_delta_examples(rng):
    F2 = field(2)
    assert preserves_delta(generator_matrix(se6.M(Octonion.basis(F2, "e1"))), mode="exhaustive", threads=4)
    assert preserves_delta(AlbertMap.identity(F2), mode="exhaustive", threads=4)
    F5 = field(5)
    twice = AlbertMap(F5, 2 * np.eye(al.DIM, dtype=np.int64))
    assert not preserves_delta(twice, n=1000, rng=rng)
    assert preserves_delta(AlbertMap.identity(F5), n=1000, rng=rng)
    with pytest.raises(OverflowError):
        preserves_delta(AlbertMap.identity(field(3)), mode="exhaustive")


@pytest.mark.slow
def test_exhaustive_rejects_a_map_that_breaks_delta():
    F = field(2)
    m = np.eye(al.DIM, dtype=np.int64)
    m[0, 1] = 1  # a -> a + b alone is not an isometry
    assert not preserves_delta(AlbertMap(F, m), mode="exhaustive", threads=4)


def test_commutator_identities():
    F3 = field(3)
    assert se6.commutator_identities_check(Octonion.basis(F3, "e1"))
    assert se6.commutator_identities_check(Octonion.zero(F3))
    X = np.random.default_rng(0).integers(0, 3, (40, 8))
    batched = se6.commutator_identities_many(F3, X)
    assert batched.all()
    assert all(se6.commutator_identities_check(Octonion(F3, x)) for x in X[:5])


def test_reflection_decomposition(rng):
    for q in (3, 5):
        F = field(q)
        assert se6.q8_reflection_check(Octonion.one(F))
        assert se6.q8_reflection_check(Octonion.basis(F, "e0") + Octonion.basis(F, "e-0"))
        for _ in range(30):
            assert se6.q8_reflection_check(random_unit(F, rng))
    with pytest.raises(ValueError):
        se6.q8_reflection_check(Octonion.basis(field(3), "e1"))


def test_reflections_in_the_other_order_give_u_c_u():
    F = field(3)
    one = Octonion.one(F)
    u = Octonion.basis(F, "e1") + one
    C = Octonion.basis(F, "e-1")
    r = octonion_reflection(F, u.coords, octonion_reflection(F, one.coords, C.coords))
    assert Octonion(F, [int(t) for t in r]) == u * C * u
    assert u * C * u != u.conj() * C * u.conj()


def test_spec_validation():
    F = field(3)
    with pytest.raises(ValueError):
        se6.Pu(Octonion.basis(F, "e1"))
    with pytest.raises(ValueError):
        se6.PScale(Octonion.basis(F, "e1"))
    with pytest.raises(ValueError):
        GeneratorSpec("Q", Octonion.one(F))
    with pytest.raises(ValueError):
        GeneratorSpec("Delta", Octonion.one(F))
    with pytest.raises(ValueError):
        GeneratorSpec("M")
    assert GeneratorSpec("lpp", Octonion.one(F)).kind == "Lpp"


def test_spec_text_roundtrip(rng):
    F = field(4)
    for kind in PARAM_KINDS:
        g = GeneratorSpec(kind, random_param(F, kind, rng))
        assert GeneratorSpec.parse(F, str(g)) == g
    assert GeneratorSpec.parse(F, "tau") == TAU
    assert GeneratorSpec.parse(F, "pscale:u=[0,0,0,1,1,0,0,0]").kind == "PScale"
    with pytest.raises(ValueError):
        GeneratorSpec.parse(F, "M:e1")


def test_word_apply_matches_matrix(F, rng):
    word = GeneratorWord.parse(F, "M:x=e1; tau; Lp:x=ew; delta; Mpp:x=e-0")
    X = AlbertVector.random(F, rng)
    assert word.apply(X) == word_to_map(word, F).apply(X)
    assert GeneratorWord.parse(F, str(word)) == word


def test_mismatched_fields():
    with pytest.raises(FieldError):
        apply_generator(se6.M(Octonion.one(field(3))), AlbertVector.zero(field(5)))
    with pytest.raises(FieldError):
        compose(AlbertMap.identity(field(3)), AlbertMap.identity(field(5)))


def test_invert_singular():
    with pytest.raises(NotInvertibleError):
        invert(AlbertMap(field(3), np.zeros((al.DIM, al.DIM), dtype=np.int64)))


@pytest.mark.slow
def test_f16_structure_gf2():
    r = se6.f16_checks(field(2), threads=4)
    assert r["distinct"] == r["expected"] == 65536
    assert r["commute"] and r["additive_mp"] and r["additive_lpp"]
