"""Lie superalgebras, quadratic forms, modules, and Cartan-calculus modules.

Structure constants follow the super conventions throughout: brackets are
super-antisymmetric ([x,y] = -(-1)^{|x||y|}[y,x]), Jacobi is checked in
the adjoint-derivation form including the odd diagonal cases, and every
operator identity below is an exact matrix identity over Q.

A GDSModule packages a complex with Lie-derivative operators L_a and
contractions ι_a obeying the Cartan relations; it is the concrete form of
a module over the cone of the algebra (even part acting by the L_a, odd
part by the ι_a, plus the differential).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError
from .scalars import ONE, QQ
from .superlin import (
    GradedMorphism,
    SpanSolver,
    SuperVectorSpace,
    _dual_of,
    nullspace_of_cols,
)
from .supercomplex import SuperComplex


def _add_term(table, key, coeff):
    if not coeff:
        return
    cur = table.get(key)
    if cur is None:
        table[key] = coeff
    else:
        cur = cur + coeff
        if cur:
            table[key] = cur
        else:
            del table[key]


class LieSuperalgebra:
    """Finite-dimensional Lie superalgebra given by structure constants."""

    def __init__(self, space: SuperVectorSpace, table: dict):
        self.space = space
        self.table = table  # (a, b) -> {c: coefficient}, both orientations

    @property
    def dim(self) -> int:
        return self.space.dim

    def bracket_basis(self, a: int, b: int) -> dict:
        return self.table.get((a, b), {})

    def bracket(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for a, ca in u.items():
            for b, cb in v.items():
                c = ca * cb
                for t, f in self.bracket_basis(a, b).items():
                    _add_term(out, t, c * f)
        return out

    def is_abelian(self) -> bool:
        return not self.table

    def __repr__(self):
        p = self.space.parities
        return f"LieSuperalgebra(dim=({p.count(0)}|{p.count(1)}))"


def _normalize_key(space, key):
    a, b = key
    if isinstance(a, str):
        a = space.index(a)
    if isinstance(b, str):
        b = space.index(b)
    return a, b


def make_lie(space: SuperVectorSpace, structure_constants: dict) -> LieSuperalgebra:
    """Validate and complete a structure-constant table.

    Accepts brackets for either orientation (index- or name-keyed); the
    super-antisymmetric partner is filled in, and any redundant entries
    must agree with it.  Parity compatibility, super-antisymmetry and the
    full super-Jacobi identity (including [x,[x,x]] = 0 for odd x) are
    checked exactly; failures cite the offending triple.
    """
    par = space.parities
    names = space.names
    given: dict = {}
    for key, targets in structure_constants.items():
        a, b = _normalize_key(space, key)
        clean = {}
        for t, coeff in targets.items():
            ti = space.index(t) if isinstance(t, str) else t
            if coeff:
                if par[ti] != (par[a] + par[b]) % 2:
                    raise ValidationError(
                        f"bracket [{names[a]},{names[b]}] -> {names[ti]} violates parity"
                    )
                clean[ti] = clean.get(ti, QQ(0)) + coeff
        clean = {t: v for t, v in clean.items() if v}
        if (a, b) in given:
            if given[a, b] != clean:
                raise ValidationError(
                    f"inconsistent duplicate bracket [{names[a]},{names[b]}]"
                )
        else:
            given[a, b] = clean

    table: dict = {}
    for (a, b), targets in given.items():
        if a == b and par[a] == 0 and targets:
            raise ValidationError(
                f"[{names[a]},{names[a]}] must vanish for even {names[a]}"
            )
        sign = -ONE if (par[a] and par[b]) else ONE
        flipped = {t: -sign * v for t, v in targets.items()}
        if (b, a) in given and given[b, a] != flipped:
            raise ValidationError(
                f"brackets [{names[a]},{names[b]}] and [{names[b]},{names[a]}] "
                f"contradict super-antisymmetry"
            )
        if targets:
            table[a, b] = targets
            table[b, a] = flipped

    alg = LieSuperalgebra(space, table)
    _check_jacobi(alg)
    return alg


def _check_jacobi(alg: LieSuperalgebra):
    n = alg.dim
    par = alg.space.parities
    names = alg.space.names
    for a in range(n):
        ea = {a: ONE}
        for b in range(n):
            eb = {b: ONE}
            sign = -ONE if (par[a] and par[b]) else ONE
            for c in range(n):
                ec = {c: ONE}
                # [a,[b,c]] - [[a,b],c] - (-1)^{p_a p_b} [b,[a,c]]
                res = alg.bracket(ea, alg.bracket(eb, ec))
                for t, v in alg.bracket(alg.bracket(ea, eb), ec).items():
                    _add_term(res, t, -v)
                for t, v in alg.bracket(eb, alg.bracket(ea, ec)).items():
                    _add_term(res, t, -sign * v)
                if res:
                    residual = {names[t]: str(v) for t, v in sorted(res.items())}
                    raise ValidationError(
                        f"Jacobi fails on ({names[a]},{names[b]},{names[c]}): "
                        f"residual {residual}"
                    )
    # odd diagonal: [x,[x,x]] = 0 (implied in char 0, asserted anyway)
    for a in range(n):
        if par[a]:
            ea = {a: ONE}
            res = alg.bracket(ea, alg.bracket(ea, ea))
            if res:
                raise ValidationError(f"[{names[a]},[{names[a]},{names[a]}]] ≠ 0")


# ---------------------------------------------------------------------------
# quadratic structures


@dataclass
class QuadraticStructure:
    algebra: LieSuperalgebra
    entries: dict  # (a, b) -> coefficient, both orientations
    iso: GradedMorphism  # L0 -> L0*, e_a ↦ Σ_b B_{ab} ξ^b

    def value(self, a: int, b: int):
        return self.entries.get((a, b), QQ(0))

    def inverse_matrix(self) -> list:
        """beta with Σ_d beta[b][d]·B_{db} ... inverse of the Gram matrix:
        returns rows beta[a] as dicts with Σ_d beta[a][d]·B(d,c) = δ_ac."""
        n = self.algebra.dim
        from . import kernels

        rows = []
        for a in range(n):
            row = {c: self.entries[a, c] for c in range(n) if (a, c) in self.entries}
            row[n + a] = ONE
            rows.append(row)
        pivots, prows, _ = kernels.eliminate(rows, n)
        if len(pivots) != n:
            raise ValidationError("quadratic form is degenerate")
        beta = [None] * n
        for piv, row in zip(pivots, prows):
            beta[piv] = {k - n: v for k, v in row.items() if k >= n}
        return beta


def check_quadratic(alg: LieSuperalgebra, form: dict) -> QuadraticStructure:
    """Validate a super-symmetric invariant nondegenerate bilinear form.

    `form` maps (a, b) pairs (indices or names) to values; the
    super-symmetric partner of each entry is filled in automatically and
    explicit redundant entries must agree.  Each failed property is
    reported separately.
    """
    space = alg.space
    par = space.parities
    names = space.names
    n = alg.dim
    explicit: dict = {}
    for key, val in form.items():
        a, b = _normalize_key(space, key)
        if val and par[a] != par[b]:
            raise ValidationError(
                f"form entry ({names[a]},{names[b]}) violates parity blocks"
            )
        if (a, b) in explicit and explicit[a, b] != val:
            raise ValidationError(f"duplicate form entry ({names[a]},{names[b]})")
        explicit[a, b] = val
    entries: dict = {}
    for (a, b), val in explicit.items():
        sign = -ONE if (par[a] and par[b]) else ONE
        partner = sign * val
        if (b, a) in explicit and explicit[b, a] != partner:
            raise ValidationError(
                f"form entries ({names[a]},{names[b]}) / ({names[b]},{names[a]}) "
                f"contradict super-symmetry"
            )
        if val:
            entries[a, b] = val
            entries[b, a] = partner

    # invariance: B([a,b],c) + (-1)^{p_a p_b} B(b,[a,c]) = 0
    for a in range(n):
        for b in range(n):
            sign = -ONE if (par[a] and par[b]) else ONE
            for c in range(n):
                total = QQ(0)
                for t, f in alg.bracket_basis(a, b).items():
                    total += f * entries.get((t, c), QQ(0))
                for t, f in alg.bracket_basis(a, c).items():
                    total += sign * entries.get((b, t), QQ(0)) * f
                if total:
                    raise ValidationError(
                        f"form not invariant on ({names[a]},{names[b]},{names[c]}): "
                        f"residual {total}"
                    )

    cols = [dict() for _ in range(n)]
    for (a, b), v in entries.items():
        cols[a][b] = v
    nullity = len(nullspace_of_cols(cols, n))
    if nullity:
        raise ValidationError("quadratic form is degenerate")
    iso = GradedMorphism(space, _dual_of(space), 0, cols, validate=False)
    return QuadraticStructure(alg, entries, iso)


# ---------------------------------------------------------------------------
# modules


@dataclass
class LieModule:
    algebra: LieSuperalgebra
    space: SuperVectorSpace
    actions: list  # ρ_a as GradedMorphism of parity p_a


def _check_bracket_compat(alg, ops, what):
    names = alg.space.names
    for a, opa in enumerate(ops):
        for b, opb in enumerate(ops):
            lhs = opa.super_commutator(opb)
            rhs = None
            for c, f in alg.bracket_basis(a, b).items():
                term = ops[c].scaled(f)
                rhs = term if rhs is None else rhs + term
            if rhs is None:
                ok = lhs.is_zero(lhs.src_max_degree)
            else:
                ok = lhs.equal_on(rhs)
            if not ok:
                raise ValidationError(
                    f"[{what}_{names[a]}, {what}_{names[b]}] ≠ {what}_[{names[a]},{names[b]}]"
                )


def standard_module(alg: LieSuperalgebra, kind: str, space=None) -> LieModule:
    """Adjoint, coadjoint, or trivial module with validated actions."""
    n = alg.dim
    if kind == "adjoint":
        actions = []
        for a in range(n):
            entries = [(c, b, f) for b in range(n)
                       for c, f in alg.bracket_basis(a, b).items()]
            actions.append(
                GradedMorphism.from_entries(alg.space, alg.space,
                                            alg.space.parities[a], entries)
            )
        mod_space = alg.space
    elif kind == "coadjoint":
        adj = standard_module(alg, "adjoint")
        actions = [rho.super_transpose().scaled(-ONE) for rho in adj.actions]
        mod_space = actions[0].source if actions else alg.space
    elif kind == "trivial":
        if space is None:
            raise ValidationError("trivial module needs a space")
        actions = [GradedMorphism.zero(space, space, alg.space.parities[a])
                   for a in range(n)]
        mod_space = space
    else:
        raise ValidationError(f"unknown module kind {kind!r}")
    mod = LieModule(alg, mod_space, actions)
    _check_bracket_compat(alg, actions, "ρ")
    return mod


# ---------------------------------------------------------------------------
# Cartan-calculus modules


@dataclass
class GDSModule:
    algebra: LieSuperalgebra
    complex: SuperComplex
    lie_ops: list  # L_a, parity p_a, degree 0
    contraction_ops: list  # ι_a, parity p_a+1, degree -1

    @property
    def space(self):
        return self.complex.space


def check_cartan(alg: LieSuperalgebra, complex_: SuperComplex,
                 lie_ops, contraction_ops, src_limit=None):
    """All Cartan relations as exact matrix identities.

    On truncated models relations are compared wherever both sides are
    defined (and at least up to src_limit when given).  The first violated
    relation is reported with the basis indices involved.
    """
    names = alg.space.names
    d = complex_.d
    for a, (lop, iop) in enumerate(zip(lie_ops, contraction_ops)):
        if not d.super_commutator(lop).is_zero(_limit(d, lop, src_limit)):
            raise ValidationError(f"[d, L_{names[a]}] ≠ 0")
        di = d.super_commutator(iop)
        if not di.equal_on(lop, max_src_degree=src_limit):
            raise ValidationError(f"[d, ι_{names[a]}] ≠ L_{names[a]}")
    _check_bracket_compat(alg, lie_ops, "L")
    for a, lop in enumerate(lie_ops):
        for b, iop in enumerate(contraction_ops):
            lhs = lop.super_commutator(iop)
            rhs = None
            for c, f in alg.bracket_basis(a, b).items():
                term = contraction_ops[c].scaled(f)
                rhs = term if rhs is None else rhs + term
            ok = lhs.is_zero(lhs.src_max_degree) if rhs is None \
                else lhs.equal_on(rhs, max_src_degree=src_limit)
            if not ok:
                raise ValidationError(
                    f"[L_{names[a]}, ι_{names[b]}] ≠ ι_[{names[a]},{names[b]}]"
                )
    for a, iopa in enumerate(contraction_ops):
        for b, iopb in enumerate(contraction_ops):
            if not iopa.super_commutator(iopb).is_zero(src_limit):
                raise ValidationError(f"[ι_{names[a]}, ι_{names[b]}] ≠ 0")


def _limit(f, g, explicit):
    lims = [x for x in (f.src_max_degree, g.src_max_degree, explicit) if x is not None]
    return min(lims) if lims else None


def make_gds_module(alg: LieSuperalgebra, complex_: SuperComplex,
                    lie_ops, contraction_ops, src_limit=None) -> GDSModule:
    """Validate operator parities, degrees and all Cartan relations."""
    par = alg.space.parities
    if len(lie_ops) != alg.dim or len(contraction_ops) != alg.dim:
        raise ValidationError("one L and one ι operator per basis element required")
    for a, op in enumerate(lie_ops):
        if op.parity != par[a] % 2:
            raise ValidationError(f"L_{alg.space.names[a]} has wrong parity")
    for a, op in enumerate(contraction_ops):
        if op.parity != (par[a] + 1) % 2:
            raise ValidationError(f"ι_{alg.space.names[a]} has wrong parity")
    check_cartan(alg, complex_, lie_ops, contraction_ops, src_limit=src_limit)
    return GDSModule(alg, complex_, lie_ops, contraction_ops)


# ---------------------------------------------------------------------------
# invariants functor


@dataclass
class InvariantSubspace:
    space: SuperVectorSpace  # synthesized basis, one vector per echelon pivot
    vectors: list  # embedding: subspace basis in ambient coordinates
    include: GradedMorphism
    complex: SuperComplex | None  # induced differential (GDS input only)
    solver: SpanSolver

    @property
    def dim(self):
        return len(self.vectors)

    def coordinates(self, ambient_vec):
        return self.solver.coefficients(ambient_vec)


def invariants(module) -> InvariantSubspace:
    """Joint kernel of the action.

    For a LieModule: intersection of the kernels of all ρ_a.  For a
    GDSModule: intersection over all L_a and all ι_a (the basic subspace),
    with the restricted differential attached (its closure under d is
    asserted, not assumed).
    """
    if isinstance(module, LieModule):
        ops = module.actions
        ambient = module.space
        d = None
    elif isinstance(module, GDSModule):
        ops = list(module.lie_ops) + list(module.contraction_ops)
        ambient = module.space
        d = module.complex.d
    else:
        raise ValidationError(f"cannot take invariants of {type(module).__name__}")

    dim = ambient.dim
    stacked = [dict() for _ in range(dim)]
    offset = 0
    for op in ops:
        for j, col in enumerate(op.cols):
            for i, v in col.items():
                stacked[j][offset + i] = v
        offset += op.target.dim
    # nullspace wants columns; stacked[j] is already the j-th column
    vectors = nullspace_of_cols(stacked, dim)
    return _subspace_from_vectors(ambient, vectors, d, filtered=(
        module.complex.filtered if isinstance(module, GDSModule) else False))


def _subspace_from_vectors(ambient, vectors, d, filtered=False):
    names, parities, degrees = [], [], []
    for vec in vectors:
        lead = min(vec)
        names.append("inv:" + ambient.names[lead])
        parities.append(ambient.parities[lead])
        degrees.append(max(ambient.degrees[i] for i in vec))
    sub = SuperVectorSpace(names, parities, degrees)
    include = GradedMorphism(sub, ambient, 0,
                             [dict(v) for v in vectors], validate=False)
    solver = SpanSolver(vectors, ambient.dim)
    complex_ = None
    if d is not None:
        # a subspace column is defined iff its whole ambient support is
        # within d's defined range; the subspace degree equals that top
        # degree, so the restricted limit is just d's limit.
        limit = d.src_max_degree
        cols = []
        for k, vec in enumerate(vectors):
            if limit is not None and degrees[k] > limit:
                cols.append({})
                continue
            coords = solver.coefficients(d.apply(vec))
            if coords is None:
                raise ValidationError("invariant subspace is not closed under d")
            cols.append({i: c for i, c in enumerate(coords) if c})
        d_sub = GradedMorphism(sub, sub, 1, cols, validate=False,
                               src_max_degree=limit)
        complex_ = SuperComplex(sub, d_sub, filtered=filtered)
        dd = d_sub @ d_sub
        if not dd.is_zero(dd.src_max_degree):
            raise ValidationError("restricted differential fails d² = 0")
    return InvariantSubspace(sub, vectors, include, complex_, solver)
