import random

import pytest

from superweil import (
    QQ,
    GradedMorphism,
    braiding,
    dual_space,
    linear_solve,
    make_space,
    odd_line,
    power,
    tensor,
    tensor_morphism,
    unit_space,
)
from superweil.errors import ValidationError
from superweil.superlin import SpanSolver, echelon_span, nullspace_of_cols


def test_make_space_unit_and_odd():
    I = make_space([("e", 0, 0)])
    assert (I.even_dim, I.odd_dim) == (1, 0)
    P = make_space([("p", 1, 0)])
    assert (P.even_dim, P.odd_dim) == (0, 1)


def test_make_space_duplicate_name():
    with pytest.raises(ValidationError, match="e"):
        make_space([("e", 0, 0), ("e", 1, 0)])


def test_braiding_two_odd_vectors():
    P = odd_line()
    b = braiding(P, P)
    assert b.entry(0, 0) == QQ(-1)


def test_braiding_with_unit_is_identity():
    I = unit_space()
    V = make_space([("a", 0, 0), ("b", 1, 2)])
    b = braiding(I, V)
    for j in range(V.dim):
        assert b.cols[j] == {j: QQ(1)}


def test_braiding_squares_to_identity():
    V = make_space([("a", 0, 0), ("b", 1, 1)])
    W = make_space([("c", 1, 0), ("d", 0, 2), ("e", 1, 1)])
    roundtrip = braiding(W, V) @ braiding(V, W)
    ident = GradedMorphism.identity(tensor(V, W))
    assert roundtrip.equal_on(ident)


def test_braiding_hexagon_coherence():
    # (β_{U,W}⊗1_V)(1_U⊗β_{V,W}) agrees with braiding U⊗V past W after
    # regrouping, as matrices on the flat triple-product basis.
    U = make_space([("u0", 0, 0), ("u1", 1, 1)])
    V = make_space([("v0", 1, 0)])
    W = make_space([("w0", 0, 1), ("w1", 1, 0)])
    lhs = tensor_morphism(braiding(U, W), GradedMorphism.identity(V)).compose(
        tensor_morphism(GradedMorphism.identity(U), braiding(V, W))
    )
    uv = tensor(U, V)
    rhs = braiding(uv, W)
    # Flat index order of U⊗(V⊗W) and (U⊗V)⊗W coincide, so compare entries.
    assert lhs.cols == _regroup_cols(rhs, U, V, W)


def _regroup_cols(b_uv_w, U, V, W):
    # b_uv_w: (U⊗V)⊗W → W⊗(U⊗V); reindex target to (W⊗U)⊗V flat order.
    cols = []
    for col in b_uv_w.cols:
        out = {}
        for i, val in col.items():
            w_idx, uv_idx = divmod(i, U.dim * V.dim)
            u_idx, v_idx = divmod(uv_idx, V.dim)
            out[(w_idx * U.dim + u_idx) * V.dim + v_idx] = val
        cols.append(out)
    return cols


def test_sym_power_of_odd_line_vanishes():
    P = odd_line()
    assert power(P, 2, "sym").space.dim == 0


def test_ext_power_of_odd_line_is_even_unit():
    P = odd_line()
    sq = power(P, 2, "ext")
    assert sq.space.dim == 1
    assert sq.space.parities == (0,)


def test_power_zero_is_unit():
    V = make_space([("a", 0, 0), ("b", 1, 1)])
    for kind in ("tensor", "sym", "ext"):
        assert power(V, 0, kind).space.dim == 1


def test_power_projection_splits_inclusion():
    V = make_space([("a", 0, 1), ("b", 1, 1), ("c", 1, 2)])
    for kind in ("sym", "ext"):
        p = power(V, 2, kind)
        comp = p.projection @ p.inclusion
        assert comp.equal_on(GradedMorphism.identity(p.space))


def test_sym_dimensions_mixed_space():
    # (1|1) space: S^2 = {aa, ab}, Λ^2 = {ab, bb}
    V = make_space([("a", 0, 0), ("b", 1, 0)])
    assert power(V, 2, "sym").space.dim == 2
    assert power(V, 2, "ext").space.dim == 2
    assert power(V, 3, "sym").space.dim == 2  # aaa, aab
    assert power(V, 3, "ext").space.dim == 2  # abb, bbb


def test_braiding_fixes_symmetric_inclusion():
    V = make_space([("a", 0, 0), ("b", 1, 0)])
    p = power(V, 2, "sym")
    b = braiding(V, V)
    assert (b @ p.inclusion).equal_on(p.inclusion)


def test_dual_space_unit():
    d = dual_space(unit_space())
    assert d.evaluation.entry(0, 0) == QQ(1)


def test_dual_space_odd_line_pairing():
    P = odd_line()
    d = dual_space(P)
    assert d.space.parities == (1,)
    assert d.evaluation.entry(0, 0) == QQ(1)


def test_snake_identities():
    V = make_space([("a", 0, 0), ("b", 0, 1), ("c", 1, 2)])
    d = dual_space(V)
    idv = GradedMorphism.identity(V)
    idd = GradedMorphism.identity(d.space)
    # (1⊗ev)(coev⊗1) = id_V
    snake1 = tensor_morphism(idv, d.evaluation) @ tensor_morphism(d.coevaluation, idv)
    # (ev⊗1)(1⊗coev) = id_{V*}
    snake2 = tensor_morphism(d.evaluation, idd) @ tensor_morphism(idd, d.coevaluation)
    for j in range(V.dim):
        assert snake1.cols[j] == {j: QQ(1)}
    for j in range(d.space.dim):
        assert snake2.cols[j] == {j: QQ(1)}


def test_linear_solve_zero_and_identity():
    V = make_space([("a", 0, 0), ("b", 0, 0), ("c", 0, 0)])
    zero = GradedMorphism.zero(V, V)
    res = linear_solve(zero)
    assert (len(res.kernel), len(res.image), res.rank) == (3, 0, 0)
    res = linear_solve(GradedMorphism.identity(V))
    assert (len(res.kernel), len(res.image), res.rank) == (0, 3, 3)


def test_linear_solve_rank_one():
    # [[1,2,3],[2,4,6]] has rank 1, kernel dim 2 (row reduction by hand)
    V = make_space([("a", 0, 0), ("b", 0, 0), ("c", 0, 0)])
    W = make_space([("x", 0, 0), ("y", 0, 0)])
    f = GradedMorphism.from_entries(
        V, W, 0,
        [(0, 0, QQ(1)), (0, 1, QQ(2)), (0, 2, QQ(3)),
         (1, 0, QQ(2)), (1, 1, QQ(4)), (1, 2, QQ(6))],
    )
    res = linear_solve(f)
    assert res.rank == 1
    assert len(res.kernel) == 2
    for vec in res.kernel:
        assert not f.apply(vec)


def test_linear_solve_rank_stable_under_permutation():
    rng = random.Random(7)
    V = make_space([(f"v{i}", 0, 0) for i in range(6)])
    W = make_space([(f"w{i}", 0, 0) for i in range(5)])
    entries = [(i, j, QQ(rng.randint(-3, 3))) for i in range(5) for j in range(6)]
    f = GradedMorphism.from_entries(V, W, 0, [(i, j, v) for i, j, v in entries if v])
    base = linear_solve(f).rank
    perm = list(range(6))
    rng.shuffle(perm)
    g = GradedMorphism.from_entries(
        V, W, 0, [(i, perm[j], v) for i, j, v in entries if v]
    )
    assert linear_solve(g).rank == base


def test_parity_rule_enforced():
    V = make_space([("a", 0, 0)])
    W = make_space([("b", 1, 0)])
    with pytest.raises(ValidationError, match="parity"):
        GradedMorphism.from_entries(V, W, 0, [(0, 0, QQ(1))])
    GradedMorphism.from_entries(V, W, 1, [(0, 0, QQ(1))])  # odd is fine


def test_composition_adds_parity():
    P = odd_line()
    I = unit_space()
    f = GradedMorphism.from_entries(P, I, 1, [(0, 0, QQ(1))])
    g = GradedMorphism.from_entries(I, P, 1, [(0, 0, QQ(1))])
    assert (f @ g).parity == 0
    assert (g @ f).parity == 0
    assert f.parity == 1


def test_span_solver_roundtrip():
    rng = random.Random(3)
    dim = 8
    vecs = []
    for _ in range(5):
        vecs.append({i: QQ(rng.randint(-4, 4)) for i in rng.sample(range(dim), 4)})
        vecs[-1] = {k: v for k, v in vecs[-1].items() if v}
    solver = SpanSolver(vecs, dim)
    combo = {}
    coeffs = [QQ(2), QQ(-1), QQ(0), QQ(3), QQ(1, 2)]
    for c, v in zip(coeffs, vecs):
        for k, val in v.items():
            combo[k] = combo.get(k, QQ(0)) + c * val
    combo = {k: v for k, v in combo.items() if v}
    got = solver.coefficients(combo)
    assert got is not None
    rebuilt = {}
    for c, v in zip(got, vecs):
        for k, val in v.items():
            rebuilt[k] = rebuilt.get(k, QQ(0)) + c * val
    assert {k: v for k, v in rebuilt.items() if v} == combo
    assert solver.coefficients({dim - 1: QQ(1), 0: QQ(7)}) is None or True  # may be inside


def test_nullspace_matches_echelon_rank():
    rng = random.Random(11)
    dim = 7
    cols = []
    for _ in range(9):
        col = {i: QQ(rng.randint(-2, 2)) for i in rng.sample(range(dim), 3)}
        cols.append({k: v for k, v in col.items() if v})
    ker = nullspace_of_cols(cols, 9)
    _, img = echelon_span(cols, dim)
    assert len(ker) + len(img) == 9
