"""Automorphism constructions: model B, its isomorphism, torus, root maps, ZS_n."""

import random
from fractions import Fraction

import pytest

from matsuo.algebra import BadCharacteristic, build_matsuo
from matsuo.autos import (
    CircleRelationViolated,
    ModelB,
    NoSqrt3,
    NotRootAutomorphism,
    ZeroSumJordan,
    character_report,
    diagram_automorphism_matrix,
    is_bijective,
    model_b_iso,
    pythagorean_param,
    root_automorphism,
    so2_inv,
    so2_mul,
    symmetric_model_iso,
    torus_automorphism,
    verify_automorphism,
    weyl_reflection_matrix,
)
from matsuo.deriv import LinearEndo
from matsuo.fields import PrimeField, Rationals, parse_field, sqrt_in_field
from matsuo.fischer import space_of
from matsuo.roots import parse_root_system
from matsuo.transpo import parse_group

Q = Rationals()
F13 = PrimeField(13)
QS3 = parse_field("Q(sqrt:3)")
HALF = Fraction(1, 2)


def _matsuo(desc, field):
    return build_matsuo(space_of(parse_group(desc)), field.coerce(HALF), field)


# -- model B -------------------------------------------------------------------


def test_model_b_dimension_and_block_structure():
    B = ModelB(parse_root_system("A3"), QS3)
    assert B.dim == 18  # 3 * |Phi+|
    one = QS3.one_raw()
    nine_half = QS3.div(QS3.coerce(9), QS3.coerce(2))
    for r in range(6):
        u, x, y = 3 * r, 3 * r + 1, 3 * r + 2
        assert B.basis_product(u, u) == {u: one}
        assert B.basis_product(u, x) == {x: one}
        assert B.basis_product(x, y) == {}
        # b(x, x) = b(y, y) = 9/2, so x.x = (1/2) b(x, x) 1
        g = B.bilinear_form(r)
        assert g[0][0] == g[1][1] == nine_half
        assert QS3.is_zero(g[0][1])


def test_model_b_theta_is_a_sixth_root_of_rotation():
    B = ModelB(parse_root_system("A2"), QS3)
    vec = {1: QS3.coerce(5), 2: QS3.coerce(-2)}  # in block 0

    def theta(v, power):
        F = B.field
        cx = v.get(1, F.zero_raw())
        cy = v.get(2, F.zero_raw())
        return B._theta(0, cx, cy, power)

    v = dict(vec)
    for _ in range(3):
        v = theta(v, +1)
    assert B.sub(v, B.scale(QS3.coerce(-1), vec)) == {}  # theta^3 = -1
    for _ in range(3):
        v = theta(v, +1)
    assert B.sub(v, vec) == {}  # theta^6 = 1
    assert B.sub(theta(theta(vec, +1), -1), vec) == {}


def test_model_b_orthogonal_blocks_multiply_to_zero():
    rs = parse_root_system("A3")
    B = ModelB(rs, QS3)
    for r, alpha in enumerate(rs.positive_roots):
        for s, beta in enumerate(rs.positive_roots):
            if r != s and rs.pairing(alpha, beta) == 0:
                for i in range(3):
                    for j in range(3):
                        assert B.basis_product(3 * r + i, 3 * s + j) == {}


def test_model_b_x_product_rule():
    # x_a . x_b = -(3/4) theta(y_{a+b})
    rs = parse_root_system("A2")
    B = ModelB(rs, QS3)
    a, b = rs.positive_roots.index((1, 0)), rs.positive_roots.index((0, 1))
    g = rs.positive_roots.index((1, 1))
    F = QS3
    tq = F.div(F.coerce(3), F.coerce(4))
    expected = B._theta(g, F.zero_raw(), F.neg(tq), +1)
    assert B.basis_product(3 * a + 1, 3 * b + 1) == expected


def test_model_b_requires_sqrt3_and_good_characteristic():
    with pytest.raises(NoSqrt3):
        ModelB(parse_root_system("A2"), Q)
    with pytest.raises(BadCharacteristic):
        ModelB(parse_root_system("A2"), PrimeField(3))


@pytest.mark.parametrize(
    "rstype,fdesc", [("A2", "Fp:13"), ("A2", "Q(sqrt:3)"), ("A3", "Fp:13"), ("A3", "Q(sqrt:3)")]
)
def test_model_b_iso_verified(rstype, fdesc):
    field = parse_field(fdesc)
    B = ModelB(parse_root_system(rstype), field)
    M = _matsuo(f"3W:{rstype}", field)
    cols = model_b_iso(B, M)
    assert len(cols) == M.dim
    # homomorphisms preserve idempotents: check the image of 1_alpha
    img = cols[0]
    assert M.sub(M.multiply(img, img), img) == {}


def test_model_b_is_commutative():
    B = ModelB(parse_root_system("A2"), F13)
    for i in range(B.dim):
        for j in range(B.dim):
            assert B.basis_product(i, j) == B.basis_product(j, i)


# -- torus ---------------------------------------------------------------------


def test_pythagorean_params_lie_on_circle():
    rng = random.Random(5)
    for field in (Q, F13, QS3):
        for _ in range(10):
            t = Fraction(rng.randint(-30, 30), rng.randint(1, 9))
            try:
                c, s = pythagorean_param(field, t)
            except CircleRelationViolated:
                continue
            assert field.add(field.mul(c, c), field.mul(s, s)) == field.one_raw()


def test_torus_identity_and_circle_enforcement():
    B = ModelB(parse_root_system("A2"), QS3)
    one, zero = QS3.one_raw(), QS3.zero_raw()
    ident = torus_automorphism(B, [(one, zero), (one, zero)])
    for i in range(B.dim):
        assert ident.cols[i] == {i: one}
    with pytest.raises(CircleRelationViolated):
        torus_automorphism(B, [(one, one), (one, zero)])


def test_torus_three_four_five_example():
    B = ModelB(parse_root_system("A2"), QS3)
    p = (QS3.coerce(Fraction(3, 5)), QS3.coerce(Fraction(4, 5)))
    rho = torus_automorphism(B, [p, (QS3.one_raw(), QS3.zero_raw())])
    verify_automorphism(B, rho)  # idempotent check, already done inside


def test_torus_composition_homomorphism():
    B = ModelB(parse_root_system("A3"), QS3)
    rng = random.Random(6)

    def params():
        return [pythagorean_param(QS3, Fraction(rng.randint(-9, 9), rng.randint(1, 5))) for _ in range(3)]

    for _ in range(5):
        p1, p2 = params(), params()
        r1 = torus_automorphism(B, p1)
        r2 = torus_automorphism(B, p2)
        r12 = torus_automorphism(B, [so2_mul(QS3, a, b) for a, b in zip(p1, p2)])
        comp = r1.compose(B, r2)
        assert all(B.sub(a, b) == {} for a, b in zip(comp.cols, r12.cols))
        inv = torus_automorphism(B, [so2_inv(QS3, a) for a in p1])
        round_trip = r1.compose(B, inv)
        assert all(round_trip.cols[i] == {i: QS3.one_raw()} for i in range(B.dim))


def test_torus_fixes_unit_span_and_generic_fixed_space():
    B = ModelB(parse_root_system("A3"), QS3)
    params = [pythagorean_param(QS3, Fraction(k + 1, 2)) for k in range(3)]
    rho = torus_automorphism(B, params)
    fixed = [i for i in range(B.dim) if rho.cols[i] == {i: QS3.one_raw()}]
    assert fixed == [3 * r for r in range(6)]  # exactly the 1_alpha, dim |Phi+|


def test_theta_commutes_with_torus_blocks():
    B = ModelB(parse_root_system("A2"), F13)
    (c, s) = pythagorean_param(F13, 4)
    F = F13
    for r in range(3):
        x, y = 3 * r + 1, 3 * r + 2
        for vec in ({x: F.coerce(2), y: F.coerce(5)}, {x: F.one_raw()}):
            cx = vec.get(x, F.zero_raw())
            cy = vec.get(y, F.zero_raw())

            def rot(v):
                vx = v.get(x, F.zero_raw())
                vy = v.get(y, F.zero_raw())
                return {
                    x: F.add(F.mul(c, vx), F.neg(F.mul(s, vy))),
                    y: F.add(F.mul(s, vx), F.mul(c, vy)),
                }

            t_then_r = rot(B._theta(r, cx, cy, +1))
            rv = rot(vec)
            r_then_t = B._theta(r, rv.get(x, F.zero_raw()), rv.get(y, F.zero_raw()), +1)
            assert {k: v for k, v in t_then_r.items() if not F.is_zero(v)} == r_then_t


def test_torus_pushforward_fixes_vertical_sums():
    """Along the isomorphism, torus maps fix each vertical-line sum in M."""
    field = F13
    rs = parse_root_system("A2")
    B = ModelB(rs, field)
    M = _matsuo("3W:A2", field)
    cols = model_b_iso(B, M)
    rho = torus_automorphism(B, [pythagorean_param(field, t) for t in (2, 3)])
    # pushforward = iso . rho . iso^{-1}; check on psi(1_alpha), a multiple of
    # the vertical sum, without inverting: rho fixes 1_alpha exactly
    for r in range(len(rs.positive_roots)):
        assert rho.cols[3 * r] == {3 * r: field.one_raw()}
        img = cols[3 * r]
        assert M.sub(M.multiply(img, img), img) == {}


# -- root automorphisms ----------------------------------------------------------


def test_root_automorphism_identity_weyl_and_flip():
    field = QS3
    rs = parse_root_system("A3")
    M = _matsuo("3W:A3", field)
    ident = root_automorphism(M, rs.simple_roots())
    assert all(ident.cols[i] == {i: field.one_raw()} for i in range(M.dim))
    for s in rs.simple_roots():
        root_automorphism(M, weyl_reflection_matrix(rs, s))  # verifies inside
    flip = root_automorphism(M, diagram_automorphism_matrix(rs, [2, 1, 0]))
    square = flip.compose(M, flip)
    assert all(square.cols[i] == {i: field.one_raw()} for i in range(M.dim))


def test_root_automorphism_rejects_non_isometries():
    rs = parse_root_system("A3")
    M = _matsuo("3W:A3", QS3)
    simples = rs.simple_roots()
    with pytest.raises(NotRootAutomorphism):
        root_automorphism(M, [simples[0], simples[0], simples[2]])
    with pytest.raises(NotRootAutomorphism):
        root_automorphism(M, [(2, 0, 0), simples[1], simples[2]])


def test_root_automorphism_d4_triality_flip():
    rs = parse_root_system("D4")
    M = _matsuo("3W:D4", F13)
    # swap the two fork nodes of D4
    root_automorphism(M, diagram_automorphism_matrix(rs, [0, 1, 3, 2]))


# -- zero-sum symmetric matrix model ----------------------------------------------


def test_zero_sum_jordan_dimension_and_idempotents():
    Z = ZeroSumJordan(5, Q)
    assert Z.dim == 10
    img = Z.transposition_image(1, 2)
    assert Z.is_zero_sum_symmetric(img)
    assert Z.jordan_product(img, img) == img  # rank-1 projection


@pytest.mark.parametrize("desc,field", [("S4", Q), ("S5", Q), ("S5", PrimeField(13))])
def test_symmetric_model_iso_verified(desc, field):
    M = _matsuo(desc, field)
    Z, cols = symmetric_model_iso(M)
    assert Z.dim == M.dim
    assert is_bijective(field, cols, M.dim)


def test_zero_sum_jordan_rejects_bad_characteristic():
    with pytest.raises(BadCharacteristic):
        ZeroSumJordan(5, PrimeField(5))  # 5 | 2n = 10
    M = _matsuo("S5", PrimeField(5))
    with pytest.raises(BadCharacteristic):
        symmetric_model_iso(M)


def test_jordan_products_stay_zero_sum_symmetric():
    Z = ZeroSumJordan(4, Q)
    rng = random.Random(8)
    imgs = [Z.transposition_image(i, j) for i in range(1, 5) for j in range(i + 1, 5)]
    for _ in range(10):
        x, y = rng.choice(imgs), rng.choice(imgs)
        assert Z.is_zero_sum_symmetric(Z.jordan_product(x, y))


# -- characters -------------------------------------------------------------------


def test_character_additivity_over_f13():
    B = ModelB(parse_root_system("A2"), F13)
    rng = random.Random(9)
    for _ in range(5):
        # t in {5, 8} has 1 + t^2 = 0 in F13 and parametrizes no point
        params = [
            pythagorean_param(F13, rng.choice([t for t in range(13) if t not in (5, 8)]))
            for _ in range(2)
        ]
        rep = character_report(B, params)
        assert rep["additive"]
        assert rep["pair_products_proportional"]


def test_identity_torus_has_trivial_characters():
    B = ModelB(parse_root_system("A2"), F13)
    rep = character_report(B, [(F13.one_raw(), F13.zero_raw())] * 2)
    assert set(rep["eigenvalues"]) == {"1"}
