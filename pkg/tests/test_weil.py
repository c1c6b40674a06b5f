import pytest

from superweil import QQ, make_space
from superweil.errors import ValidationError
from superweil.liesuper import make_lie
from superweil.oracles import symmetric_invariant_dims
from superweil.weil import (
    abelianization_map,
    basic_cohomology,
    build_weil,
    chern_weil,
    check_connection,
    class_product,
    full_cohomology,
    induced_map,
    perturbed_class_product,
    tensor_algebra_gds,
)


@pytest.fixture(scope="module")
def odd1():
    return make_lie(make_space([("q", 1, 0)]), {})


def canonical_connection(w):
    return check_connection(w, [w.algebra.letter_element(w.y_letter(a))
                                for a in range(w.n)])


def test_truncation_too_small(abelian1):
    with pytest.raises(ValidationError, match="at least 2"):
        build_weil(abelian1, "commutative", 1)


def test_commutative_dims_abelian1(abelian1):
    # monomials y^ε x^k with ε ∈ {0,1} (y odd), ε + 2k ≤ 4
    w = build_weil(abelian1, "commutative", 4)
    by_deg = w.space.degree_indices()
    assert [len(by_deg.get(k, [])) for k in range(5)] == [1, 1, 1, 1, 1]


def test_commutative_dims_odd_abelian1(odd1):
    # y even (polynomial), x odd with x² = 0: monomials y^k x^ε,
    # k + 2ε ≤ 4, so degree 4 holds y⁴ and y²x only
    w = build_weil(odd1, "commutative", 4)
    by_deg = w.space.degree_indices()
    assert [len(by_deg.get(k, [])) for k in range(5)] == [1, 1, 2, 2, 2]


def test_tensor_word_counts_sl2(sl2):
    # a(w) = 3a(w-1) + 3a(w-2): 1, 3, 12, 45
    w = build_weil(sl2, "tensor", 3)
    by_deg = w.space.degree_indices()
    assert [len(by_deg.get(k, [])) for k in range(4)] == [1, 3, 12, 45]


def test_build_validates_cartan_all_examples(sl2, abelian2, odd2, gl11):
    # construction runs the full Cartan validation; reaching here is the test
    for alg in (sl2, abelian2, odd2, gl11):
        build_weil(alg, "commutative", 4)
    build_weil(sl2, "tensor", 4)
    build_weil(gl11, "tensor", 3)


def test_basic_cohomology_sl2(sl2):
    w = build_weil(sl2, "commutative", 6)
    bc = basic_cohomology(w)
    assert bc.dims(range(6)) == [1, 0, 0, 0, 1, 0]
    assert bc.unreliable_degree == 5


def test_basic_cohomology_abelian1(abelian1):
    w = build_weil(abelian1, "commutative", 6)
    bc = basic_cohomology(w)
    assert bc.dims(range(6)) == [1, 0, 1, 0, 1, 0]


def test_basic_cohomology_matches_oracle(sl2, abelian2, odd2, gl11):
    for alg in (sl2, abelian2, odd2, gl11):
        w = build_weil(alg, "commutative", 6)
        bc = basic_cohomology(w, max_degree=4)
        oracle = symmetric_invariant_dims(alg, 2, side="dual")
        assert [bc.dim(2 * k) for k in range(3)] == oracle
        assert bc.dim(1) == bc.dim(3) == 0


def test_full_cohomology_koszul_acyclic(sl2, odd2):
    for alg in (sl2, odd2):
        for model in ("commutative", "tensor"):
            w = build_weil(alg, model, 4)
            h = full_cohomology(w, max_degree=2)
            assert h.dim(0) == 1
            assert h.dim(1) == 0 and h.dim(2) == 0


def test_canonical_connection_and_identity_chern_weil(sl2):
    w = build_weil(sl2, "commutative", 4)
    conn = canonical_connection(w)
    cw = chern_weil(conn, "commutative", source=w)
    for j in range(w.space.dim):
        assert cw.morphism.cols[j] == {j: QQ(1)}


def test_connection_rejects_curvature_assignment(sl2):
    w = build_weil(sl2, "commutative", 4)
    theta = [w.algebra.letter_element(w.x_letter(a)) for a in range(w.n)]
    with pytest.raises(ValidationError, match="degree 1"):
        check_connection(w, theta)


def test_tensor_product_connection_left_inclusion(sl2):
    w = build_weil(sl2, "commutative", 4)
    square = tensor_algebra_gds(w, w)
    alg = square.algebra
    theta = [alg.include_left(w.algebra.letter_element(w.y_letter(a)))
             for a in range(w.n)]
    conn = check_connection(square, theta)
    cw = chern_weil(conn, "commutative", source=w)
    # c_θ is the inclusion into the left factor
    for m in range(w.space.dim):
        expected = alg.include_left({m: QQ(1)})
        assert cw.morphism.cols[m] == expected


def test_abelianization_word_signs(sl2, odd2):
    a_l = build_weil(sl2, "tensor", 3)
    c_l = build_weil(sl2, "commutative", 3)
    ab = abelianization_map(a_l, c_l)
    # y_e y_h (word) ↦ y_e·y_h; y_h y_e ↦ -y_e·y_h (both odd letters)
    i_eh = a_l.algebra.index_of_word((0, 1))
    i_he = a_l.algebra.index_of_word((1, 0))
    target = c_l.algebra.index_of_word((0, 1))
    assert ab.cols[i_eh] == {target: QQ(1)}
    assert ab.cols[i_he] == {target: QQ(-1)}
    # odd generator square dies
    i_ee = a_l.algebra.index_of_word((0, 0))
    assert ab.cols[i_ee] == {}


def test_abelianization_induces_iso_on_basic(sl2):
    a_l = build_weil(sl2, "tensor", 6)
    c_l = build_weil(sl2, "commutative", 6)
    ab = abelianization_map(a_l, c_l)
    tau = induced_map(ab, a_l, c_l, max_degree=4)
    for k in range(5):
        assert tau.is_isomorphism(k), f"degree {k}"


def test_two_connections_same_induced_map(sl2):
    w = build_weil(sl2, "commutative", 6)
    square = tensor_algebra_gds(w, w)
    alg = square.algebra
    theta_left = [alg.include_left(w.algebra.letter_element(a)) for a in range(w.n)]
    theta_right = [alg.include_right(w.algebra.letter_element(a)) for a in range(w.n)]
    cw1 = chern_weil(check_connection(square, theta_left), "commutative", source=w)
    cw2 = chern_weil(check_connection(square, theta_right), "commutative", source=w)
    tau1 = induced_map(cw1.morphism, w, square, max_degree=4)
    tau2 = induced_map(cw2.morphism, w, square, max_degree=4)
    for k in range(5):
        assert tau1.matrix(k) == tau2.matrix(k), f"degree {k}"


def test_induced_map_identity_and_unit_coefficient(abelian1):
    w = build_weil(abelian1, "commutative", 6)
    from superweil.superlin import GradedMorphism

    ident = GradedMorphism.identity(w.space)
    tau = induced_map(ident, w, w, max_degree=4)
    for k in range(5):
        cols = tau.matrix(k)
        n = tau.source.dim(k)
        assert cols == [{i: QQ(1)} if True else None for i, _ in enumerate(cols)] or n == 0
        assert tau.target.dims([k]) == [n]


def test_class_product_well_defined(abelian2):
    w = build_weil(abelian2, "commutative", 6)
    bc = basic_cohomology(w, max_degree=4)
    # x1·x1 in degree 4: product of degree-2 classes, stable under
    # representative perturbation by boundaries
    assert bc.dim(2) == 2
    base = class_product(bc, w.algebra, (2, 0), (2, 1))
    for seed in range(3):
        assert perturbed_class_product(bc, w.algebra, (2, 0), (2, 1), seed) == base


def test_tau_functorial(sl2):
    # τ(g∘f) = τ(g)∘τ(f) with f the identity and g the abelianization
    a_l = build_weil(sl2, "tensor", 4)
    c_l = build_weil(sl2, "commutative", 4)
    ab = abelianization_map(a_l, c_l)
    tau_ab = induced_map(ab, a_l, c_l, max_degree=2)
    from superweil.superlin import GradedMorphism

    tau_comp = induced_map(ab @ GradedMorphism.identity(a_l.space), a_l, c_l,
                           max_degree=2)
    for k in range(3):
        assert tau_ab.matrix(k) == tau_comp.matrix(k)
