import pytest

from superweil import QQ, GradedMorphism, make_space
from superweil.errors import ValidationError
from superweil.liesuper import (
    check_quadratic,
    invariants,
    make_gds_module,
    make_lie,
    standard_module,
)
from superweil.supercomplex import validate_complex
from superweil.superlin import SpanSolver


def test_sl2_is_valid(sl2):
    assert sl2.dim == 3
    assert sl2.bracket_basis(0, 2) == {1: QQ(1)}  # [e,f] = h
    assert sl2.bracket_basis(2, 0) == {1: QQ(-1)}  # auto-completed


def test_abelian_valid_any_space():
    make_lie(make_space([("a", 0, 0), ("b", 1, 0)]), {})


def test_jacobi_failure_cites_triple():
    space = make_space([("e", 0, 0), ("h", 0, 0), ("f", 0, 0)])
    with pytest.raises(ValidationError, match="Jacobi fails on"):
        make_lie(space, {
            ("e", "f"): {"h": QQ(1)},
            ("h", "e"): {"e": QQ(2)},
            ("h", "f"): {"f": QQ(2)},  # wrong sign
        })


def test_inconsistent_redundant_bracket():
    space = make_space([("e", 0, 0), ("f", 0, 0), ("h", 0, 0)])
    with pytest.raises(ValidationError, match="antisymmetry"):
        make_lie(space, {
            ("e", "f"): {"h": QQ(1)},
            ("f", "e"): {"h": QQ(1)},  # must be -1
        })


def test_odd_diagonal_bracket_allowed():
    # one odd generator q with [q,q] = z, z central even: a Heisenberg-type
    space = make_space([("q", 1, 0), ("z", 0, 0)])
    alg = make_lie(space, {("q", "q"): {"z": QQ(2)}})
    assert alg.bracket_basis(0, 0) == {1: QQ(2)}


def test_even_diagonal_bracket_rejected():
    space = make_space([("x", 0, 0), ("z", 0, 0)])
    with pytest.raises(ValidationError, match="must vanish"):
        make_lie(space, {("x", "x"): {"z": QQ(1)}})


def test_adjoint_of_abelian_is_zero(abelian2):
    mod = standard_module(abelian2, "adjoint")
    assert all(op.is_zero() for op in mod.actions)


def test_adjoint_sl2_h_action(sl2):
    mod = standard_module(sl2, "adjoint")
    rho_h = mod.actions[1]
    assert rho_h.cols[0] == {0: QQ(2)}
    assert rho_h.cols[1] == {}
    assert rho_h.cols[2] == {2: QQ(-2)}


def test_trivial_module(sl2):
    X = make_space([("v", 0, 0)])
    mod = standard_module(sl2, "trivial", X)
    assert all(op.is_zero() for op in mod.actions)


def test_coadjoint_bracket_compatible(sl2, gl11):
    # construction validates [ρ_a, ρ_b] = ρ_[a,b]; failure would raise
    standard_module(sl2, "coadjoint")
    standard_module(gl11, "coadjoint")
    standard_module(gl11, "adjoint")


def test_invariants_of_adjoint_sl2_vanish(sl2):
    mod = standard_module(sl2, "adjoint")
    assert invariants(mod).dim == 0


def test_invariants_of_trivial_module_is_everything(sl2):
    X = make_space([("v", 0, 0), ("w", 1, 2)])
    mod = standard_module(sl2, "trivial", X)
    sub = invariants(mod)
    assert sub.dim == 2


def test_invariants_idempotent(sl2):
    mod = standard_module(sl2, "adjoint")
    sub = invariants(mod)
    again = invariants(standard_module(sl2, "trivial", sub.space))
    assert again.dim == sub.dim


def test_gl11_invariants_of_adjoint(gl11):
    # the center of gl(1|1) is spanned by e11 + e22
    sub = invariants(standard_module(gl11, "adjoint"))
    assert sub.dim == 1
    assert sub.vectors[0] == {0: QQ(1), 1: QQ(1)}


def test_quadratic_sl2(sl2_form):
    assert sl2_form.value(0, 2) == QQ(1)
    assert sl2_form.value(2, 0) == QQ(1)
    assert sl2_form.value(1, 1) == QQ(2)


def test_quadratic_gl11_supertrace(gl11_form):
    # odd-odd block is antisymmetric
    assert gl11_form.value(2, 3) == QQ(1)
    assert gl11_form.value(3, 2) == QQ(-1)


def test_quadratic_odd_single_generator_impossible():
    # a 1x1 odd-odd block is antisymmetric, so B(q,q) is forced to 0 and
    # the zero form is degenerate: no valid form exists either way
    alg = make_lie(make_space([("q", 1, 0)]), {})
    with pytest.raises(ValidationError, match="super-symmetry"):
        check_quadratic(alg, {("q", "q"): QQ(1)})
    with pytest.raises(ValidationError, match="degenerate"):
        check_quadratic(alg, {})


def test_quadratic_invariance_failure():
    space = make_space([("e", 0, 0), ("h", 0, 0), ("f", 0, 0)])
    alg = make_lie(space, {
        ("e", "f"): {"h": QQ(1)},
        ("h", "e"): {"e": QQ(2)},
        ("h", "f"): {"f": QQ(-2)},
    })
    with pytest.raises(ValidationError, match="not invariant"):
        check_quadratic(alg, {("e", "f"): QQ(1), ("h", "h"): QQ(3)})


def test_quadratic_inverse_matrix(sl2_form):
    beta = sl2_form.inverse_matrix()
    n = 3
    for a in range(n):
        for c in range(n):
            total = QQ(0)
            for d_, v in beta[a].items():
                total += v * sl2_form.value(d_, c)
            assert total == (QQ(1) if a == c else QQ(0))


def test_gds_module_trivial_ops_valid(abelian2):
    X = make_space([("v", 0, 0), ("w", 1, 1)])
    d = GradedMorphism.zero(X, X, parity=1)
    cpx = validate_complex(X, d)
    zeros_l = [GradedMorphism.zero(X, X) for _ in range(2)]
    zeros_i = [GradedMorphism.zero(X, X, parity=1) for _ in range(2)]
    make_gds_module(abelian2, cpx, zeros_l, zeros_i)


def test_gds_module_detects_broken_cartan(abelian1):
    # d(u) = q together with ι(q) = u makes [d,ι](u) = u ≠ 0 = L(u)
    X = make_space([("u", 0, 0), ("q", 1, 1)])
    d = GradedMorphism.from_entries(X, X, 1, [(1, 0, QQ(1))])
    cpx = validate_complex(X, d)
    lie = [GradedMorphism.zero(X, X)]
    iota = [GradedMorphism.from_entries(X, X, 1, [(0, 1, QQ(1))])]
    with pytest.raises(ValidationError, match=r"\[d, ι_x\]"):
        make_gds_module(abelian1, cpx, lie, iota)


def test_adjunction_dimension_check(sl2):
    # morphisms from a trivial module into M correspond to maps into the
    # invariants: count solution-space dimensions of the two linear systems
    mod = standard_module(sl2, "adjoint")
    X = make_space([("v", 0, 0)])
    # even maps φ: X → M with ρ_a ∘ φ = 0 for all a
    dim = mod.space.dim
    cols = []
    for j in range(dim):
        stacked = {}
        for k, op in enumerate(mod.actions):
            for i, v in op.cols[j].items():
                stacked[k * dim + i] = v
        cols.append(stacked)
    from superweil.superlin import nullspace_of_cols

    lhs = len(nullspace_of_cols(cols, dim))  # one column per φ-image coordinate
    rhs = invariants(mod).dim * X.dim
    assert lhs == rhs
