"""Truncated Weil models, connections, Chern-Weil maps, basic cohomology.

For a Lie superalgebra with basis e_a (parity p_a) the generators are one
connection letter y_a (degree 1, parity p_a+1) and one curvature letter
x_a (degree 2, parity p_a) per dual basis element, with

    d y_a = x_a,  d x_a = 0,
    L_a = coadjoint action extended as a derivation of parity p_a,
    ι_a y_b = δ_ab·1,  ι_a x_b = (-1)^{p_a} L_a y_b,

the ι_a value on curvatures being forced by [d, ι_a] = L_a (the sign
appears for odd rows of the super-commutator; the full Cartan validation
run on every built model is the arbiter for all sign conventions here).

The commutative model is the super-symmetric algebra on the letters, the
tensor model the free algebra on the same letters; both are truncated at
total degree N, and their basic (equivariant) cohomology is reliable for
degrees ≤ N-2, reported through N-1 with a boundary flag.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import ValidationError
from .scalars import ONE, QQ
from .liesuper import (
    GDSModule,
    LieSuperalgebra,
    check_cartan,
    invariants,
    make_gds_module,
    standard_module,
)
from .models import (
    CommutativeModel,
    FreeModel,
    GradedAlgebra,
    TensorProductAlgebra,
    add_into,
    algebra_morphism,
    scale_into,
)
from .parallel import pmap
from .supercomplex import Cohomology, cohomology, validate_complex
from .superlin import GradedMorphism, tensor as tensor_space, tensor_morphism


@dataclass
class AlgebraGDS:
    """A truncated algebra carrying a validated Cartan-calculus structure."""

    lie_algebra: LieSuperalgebra
    algebra: GradedAlgebra
    gds: GDSModule

    @property
    def space(self):
        return self.algebra.space

    @property
    def complex(self):
        return self.gds.complex

    @property
    def d(self):
        return self.gds.complex.d

    @property
    def lie_ops(self):
        return self.gds.lie_ops

    @property
    def contraction_ops(self):
        return self.gds.contraction_ops

    @property
    def truncation(self):
        return self.algebra.truncation

    def unit_element(self):
        return self.algebra.unit_element()


@dataclass
class WeilObject(AlgebraGDS):
    model: str = "commutative"
    coadjoint: list = field(default_factory=list)  # ρ*_a columns over ξ^b

    @property
    def n(self):
        return self.lie_algebra.dim

    def y_letter(self, a: int) -> int:
        return a

    def x_letter(self, a: int) -> int:
        return self.n + a


def build_weil(alg: LieSuperalgebra, model: str, truncation: int) -> WeilObject:
    """Monomial basis, differential and Cartan operators, fully validated."""
    if truncation < 2:
        raise ValidationError("truncation must be at least 2")
    if model not in ("commutative", "tensor"):
        raise ValidationError(f"unknown Weil model {model!r}")
    n = alg.dim
    par = alg.space.parities
    letters = [("y_" + alg.space.names[a], (par[a] + 1) % 2, 1) for a in range(n)]
    letters += [("x_" + alg.space.names[a], par[a], 2) for a in range(n)]
    factory = CommutativeModel if model == "commutative" else FreeModel
    algebra = factory(letters, truncation)

    coad = [op.cols for op in standard_module(alg, "coadjoint").actions]

    def coad_combo(a, b, letter_of):
        img: dict = {}
        for c, coeff in coad[a][b].items():
            add_into(img, algebra.index_of_word((letter_of(c),)), coeff)
        return img

    d_images = [algebra.letter_element(n + a) for a in range(n)] + [{} for _ in range(n)]
    d = algebra.derivation(d_images, 1)
    complex_ = validate_complex(algebra.space, d)

    lie_ops, contraction_ops = [], []
    for a in range(n):
        l_images = [coad_combo(a, b, lambda c: c) for b in range(n)]
        l_images += [coad_combo(a, b, lambda c: n + c) for b in range(n)]
        lie_ops.append(algebra.derivation(l_images, par[a]))
        sign = -ONE if par[a] else ONE
        i_images = [({algebra.unit_index: ONE} if b == a else {}) for b in range(n)]
        i_images += [
            {k: sign * v for k, v in coad_combo(a, b, lambda c: c).items()}
            for b in range(n)
        ]
        contraction_ops.append(algebra.derivation(i_images, (par[a] + 1) % 2))

    gds = make_gds_module(alg, complex_, lie_ops, contraction_ops)
    return WeilObject(alg, algebra, gds, model=model, coadjoint=coad)


# ---------------------------------------------------------------------------
# basic (equivariant) cohomology


@dataclass
class BasicCohomology:
    """Cohomology of the basic subcomplex, reported in ambient coordinates."""

    subspace: object  # InvariantSubspace
    cohom: Cohomology
    max_degree: int
    unreliable_degree: int | None

    def dim(self, degree: int) -> int:
        return self.cohom.dim(degree)

    def dims(self, degrees) -> list:
        return [self.dim(k) for k in degrees]

    def representatives(self, degree: int) -> list:
        """Representative cocycles as ambient vectors."""
        item = self.cohom.by_degree.get(degree)
        if not item:
            return []
        return [self.subspace.include.apply(rep) for rep in item.representatives]

    def boundaries(self, degree: int) -> list:
        item = self.cohom.by_degree.get(degree)
        if not item:
            return []
        return [self.subspace.include.apply(b) for b in item.boundary_basis]

    def class_coordinates(self, vec: dict, degree: int):
        """Class of an ambient cocycle over this degree's representatives."""
        sub = self.subspace.coordinates(vec)
        if sub is None:
            return None
        item = self.cohom.by_degree.get(degree)
        if item is None:
            return [] if not vec else None
        return item.class_coordinates({i: c for i, c in enumerate(sub) if c})


def basic_cohomology(obj, max_degree=None) -> BasicCohomology:
    """Invariant (basic) subcomplex, then its cohomology per degree.

    Accepts a WeilObject / AlgebraGDS / GDSModule.  Degrees above N-2 of a
    degree-N truncated model are flagged unreliable.
    """
    gds = obj.gds if isinstance(obj, AlgebraGDS) else obj
    sub = invariants(gds)
    top = sub.complex.max_computable_degree()
    if max_degree is None:
        max_degree = top
    if max_degree > top:
        raise ValidationError(f"basic cohomology computable only up to degree {top}")
    min_degree = min(gds.complex.space.degrees, default=0)
    cohom = cohomology(sub.complex, min_degree=min_degree, max_degree=max_degree)
    return BasicCohomology(sub, cohom, max_degree, cohom.unreliable_degree)


def full_cohomology(obj, max_degree=None) -> Cohomology:
    """Cohomology of the whole (non-basic) complex."""
    gds = obj.gds if isinstance(obj, AlgebraGDS) else obj
    cpx = gds.complex
    top = cpx.max_computable_degree()
    if max_degree is None:
        max_degree = top
    return cohomology(cpx, min_degree=min(cpx.space.degrees, default=0),
                      max_degree=max_degree)


def class_product(bc: BasicCohomology, algebra: GradedAlgebra,
                  class1, class2):
    """Product of two basic classes on representatives, as class coordinates.

    class1/class2 are (degree, index) pairs; the product degree must stay
    within the model's budget.
    """
    (k1, i1), (k2, i2) = class1, class2
    r1 = bc.representatives(k1)[i1]
    r2 = bc.representatives(k2)[i2]
    prod = algebra.mul(r1, r2)
    coords = bc.class_coordinates(prod, k1 + k2)
    if coords is None:
        raise ValidationError("product of basic cocycles failed to reduce")
    return coords


def perturbed_class_product(bc, algebra, class1, class2, seed=0):
    """class_product after adding random boundaries to both representatives.

    Proposition-2 style well-definedness: the result must match
    class_product exactly for every seed.
    """
    rng = random.Random(seed)
    (k1, i1), (k2, i2) = class1, class2
    r1 = dict(bc.representatives(k1)[i1])
    r2 = dict(bc.representatives(k2)[i2])
    for r, k in ((r1, k1), (r2, k2)):
        for b in bc.boundaries(k):
            scale_into(r, b, QQ(rng.randint(-3, 3)))
    prod = algebra.mul(r1, r2)
    return bc.class_coordinates(prod, k1 + k2)


# ---------------------------------------------------------------------------
# connections and Chern-Weil morphisms


@dataclass
class Connection:
    target: AlgebraGDS
    theta: list  # θ^a as elements of the target algebra


def check_connection(target: AlgebraGDS, theta: list) -> Connection:
    """Validate parity/degree, the contraction diagram and equivariance.

    ι_b θ^a = δ_ab · unit and L_a θ^b = Σ_c (ρ*_a)_{cb} θ^c, exactly.
    """
    alg = target.lie_algebra
    n = alg.dim
    if len(theta) != n:
        raise ValidationError("one θ^a per basis element required")
    par = alg.space.parities
    space = target.space
    for a, th in enumerate(theta):
        want = (par[a] + 1) % 2
        for i in th:
            if space.parities[i] != want or space.degrees[i] != 1:
                raise ValidationError(
                    f"θ^{alg.space.names[a]} must be homogeneous of degree 1 "
                    f"and parity {want}"
                )
    unit = target.unit_element()
    for b in range(n):
        for a in range(n):
            got = target.contraction_ops[b].apply(theta[a])
            want = unit if a == b else {}
            if got != want:
                raise ValidationError(
                    f"connection diagram fails at (ι_{alg.space.names[b]}, "
                    f"θ^{alg.space.names[a]}): got {got}, want {want}"
                )
    coad = [op.cols for op in standard_module(alg, "coadjoint").actions]
    for a in range(n):
        for b in range(n):
            got = target.lie_ops[a].apply(theta[b])
            want: dict = {}
            for c, coeff in coad[a][b].items():
                scale_into(want, theta[c], coeff)
            if got != want:
                raise ValidationError(
                    f"connection not equivariant at (L_{alg.space.names[a]}, "
                    f"θ^{alg.space.names[b]}): residual "
                    f"{_sub(got, want)}"
                )
    return Connection(target, theta)


def _sub(u, v):
    out = dict(u)
    scale_into(out, v, -ONE)
    return out


@dataclass
class ChernWeilMorphism:
    source: WeilObject
    target: AlgebraGDS
    morphism: GradedMorphism
    images: list


def chern_weil(conn: Connection, model: str, source: WeilObject | None = None,
               check_pairs=True) -> ChernWeilMorphism:
    """The algebra map y_a ↦ θ^a, x_a ↦ dθ^a, extended multiplicatively.

    Validated as a unital algebra map, a chain map and an equivariant map
    on the truncation; uniqueness is checked by re-extending with the
    opposite association order, which must give the same matrix.
    """
    target = conn.target
    if source is None:
        source = build_weil(target.lie_algebra, model, target.truncation)
    elif source.model != model:
        raise ValidationError(f"source Weil object is {source.model!r}, not {model!r}")
    n = source.n
    images = [dict(th) for th in conn.theta]
    d_t = target.d
    for a in range(n):
        images.append(d_t.apply(conn.theta[a]))
    f = algebra_morphism(source.algebra, target.algebra, images)
    other = algebra_morphism(source.algebra, target.algebra, images, fold="right")
    if not f.equal_on(other):
        raise ValidationError("generator images do not determine a unique extension")
    validate_gds_algebra_morphism(f, source, target, check_pairs=check_pairs)
    return ChernWeilMorphism(source, target, f, images)


def validate_gds_algebra_morphism(f: GradedMorphism, source: AlgebraGDS,
                                  target: AlgebraGDS, check_pairs=True):
    """Unit, multiplicativity on in-budget pairs, chain map, equivariance."""
    if f.cols[source.algebra.unit_index] != target.unit_element():
        raise ValidationError("morphism does not preserve the unit")
    lhs = f @ source.d
    rhs = target.d @ f
    if not lhs.equal_on(rhs):
        raise ValidationError("morphism is not a chain map")
    names = source.lie_algebra.space.names
    for a in range(source.lie_algebra.dim):
        if not (f @ source.lie_ops[a]).equal_on(target.lie_ops[a] @ f):
            raise ValidationError(f"morphism does not intertwine L_{names[a]}")
        if not (f @ source.contraction_ops[a]).equal_on(target.contraction_ops[a] @ f):
            raise ValidationError(f"morphism does not intertwine ι_{names[a]}")
    if not check_pairs:
        return
    degs = source.space.degrees
    budget = source.algebra.truncation

    def check_row(i):
        fi = f.cols[i]
        for j in range(source.algebra.dim):
            if degs[i] + degs[j] > budget:
                continue
            prod = source.algebra.mul_basis(i, j)
            lhs: dict = {}
            for m, c in prod.items():
                scale_into(lhs, f.cols[m], c)
            rhs = target.algebra.mul(fi, f.cols[j])
            if lhs != rhs:
                raise ValidationError(
                    f"morphism fails multiplicativity on basis pair ({i},{j})"
                )
        return None

    list(pmap(check_row, range(source.algebra.dim)))


# ---------------------------------------------------------------------------
# abelianization


def abelianization_map(tensor_model: WeilObject,
                       commutative_model: WeilObject) -> GradedMorphism:
    """Quotient from the free model onto the super-commutative model.

    Each word maps to the sorted monomial with its Koszul reordering sign
    (odd generator squares die); validated as an equivariant chain algebra
    map on the truncation.
    """
    if tensor_model.model != "tensor" or commutative_model.model != "commutative":
        raise ValidationError("expected (tensor, commutative) Weil objects")
    if tensor_model.lie_algebra is not commutative_model.lie_algebra and \
            tensor_model.lie_algebra.table != commutative_model.lie_algebra.table:
        raise ValidationError("Weil objects built over different algebras")
    if tensor_model.truncation != commutative_model.truncation:
        raise ValidationError("Weil objects built at different truncations")
    images = [commutative_model.algebra.letter_element(g)
              for g in range(2 * tensor_model.n)]
    f = algebra_morphism(tensor_model.algebra, commutative_model.algebra, images)
    validate_gds_algebra_morphism(f, tensor_model, commutative_model)
    return f


# ---------------------------------------------------------------------------
# tensor products of Cartan-calculus algebras, twisted cohomology, τ


def tensor_algebra_gds(x: AlgebraGDS, y: AlgebraGDS,
                       truncation=None, validate=True) -> AlgebraGDS:
    """x ⊗ y with operators d⊗1+1⊗d, L⊗1+1⊗L, ι⊗1+1⊗ι (Koszul signs)."""
    if x.lie_algebra.space.dim != y.lie_algebra.space.dim:
        raise ValidationError("factors live over different algebras")
    if truncation is None:
        truncation = min(x.truncation, y.truncation)
    algebra = TensorProductAlgebra(x.algebra, y.algebra, truncation)
    d = algebra.extend_left(x.d) + algebra.extend_right(y.d)
    complex_ = validate_complex(algebra.space, d)
    lie_ops, contraction_ops = [], []
    for a in range(x.lie_algebra.dim):
        lie_ops.append(algebra.extend_left(x.lie_ops[a])
                       + algebra.extend_right(y.lie_ops[a]))
        contraction_ops.append(algebra.extend_left(x.contraction_ops[a])
                               + algebra.extend_right(y.contraction_ops[a]))
    if validate:
        gds = make_gds_module(x.lie_algebra, complex_, lie_ops, contraction_ops)
    else:
        gds = GDSModule(x.lie_algebra, complex_, lie_ops, contraction_ops)
    return AlgebraGDS(x.lie_algebra, algebra, gds)


def tensor_with_module(x: AlgebraGDS, coeff: GDSModule,
                       validate=True) -> GDSModule:
    """x ⊗ M for a coefficient module M (no product needed on M).

    The pair space keeps every pair; operator columns exist wherever the
    x-factor column is defined.
    """
    space = tensor_space(x.space, coeff.complex.space)
    ident_x = GradedMorphism.identity(x.space)
    ident_m = GradedMorphism.identity(coeff.complex.space)

    def both(op_x, op_m):
        left = tensor_morphism(op_x, ident_m)
        right = tensor_morphism(ident_x, op_m)
        out = left + right
        out.src_max_degree = _pair_limit(op_x, coeff)
        return out

    d = both(x.d, coeff.complex.d)
    complex_ = validate_complex(space, d)
    lie_ops = [both(x.lie_ops[a], coeff.lie_ops[a])
               for a in range(x.lie_algebra.dim)]
    contraction_ops = [both(x.contraction_ops[a], coeff.contraction_ops[a])
                       for a in range(x.lie_algebra.dim)]
    if validate:
        return make_gds_module(x.lie_algebra, complex_, lie_ops, contraction_ops,
                               src_limit=d.src_max_degree)
    return GDSModule(x.lie_algebra, complex_, lie_ops, contraction_ops)


def _pair_limit(op_x, coeff):
    if op_x.src_max_degree is None:
        return None
    degs = coeff.complex.space.degrees
    return op_x.src_max_degree + (min(degs) if degs else 0)


@dataclass
class InducedMap:
    source: BasicCohomology
    target: BasicCohomology
    matrices: dict  # degree -> list of columns (class coords)

    def matrix(self, degree):
        return self.matrices.get(degree, [])

    def is_isomorphism(self, degree) -> bool:
        cols = self.matrices.get(degree, [])
        if self.source.dim(degree) != self.target.dim(degree):
            return False
        from .superlin import echelon_span

        _, rows = echelon_span(cols, self.target.dim(degree))
        return len(rows) == self.source.dim(degree)


def induced_map(f: GradedMorphism, source: AlgebraGDS, target: AlgebraGDS,
                coefficient=None, max_degree=None) -> InducedMap:
    """τ of an algebra morphism on (twisted) basic cohomology.

    With a coefficient module B this is the map H_source(B) → H_target(B)
    induced by f⊗1; with coefficient None it is the map on plain basic
    cohomology.
    """
    if coefficient is None:
        src_gds, tgt_gds, big_f = source.gds, target.gds, f
    else:
        coeff_gds = coefficient.gds if isinstance(coefficient, AlgebraGDS) else coefficient
        src_gds = tensor_with_module(source, coeff_gds, validate=False)
        tgt_gds = tensor_with_module(target, coeff_gds, validate=False)
        ident = GradedMorphism.identity(coeff_gds.complex.space)
        big_f = tensor_morphism(f, ident)
        big_f.src_max_degree = _pair_limit(f, coeff_gds)

    bc_src = basic_cohomology(src_gds, max_degree=max_degree)
    top = bc_src.max_degree
    bc_tgt = basic_cohomology(tgt_gds, max_degree=max_degree)

    def one_degree(k):
        cols = []
        for rep in bc_src.representatives(k):
            img = big_f.apply(rep)
            coords = bc_tgt.class_coordinates(img, k)
            if coords is None:
                raise ValidationError(
                    f"image of a degree-{k} basic class is not a basic cocycle"
                )
            cols.append({i: v for i, v in enumerate(coords) if v})
        return k, cols

    lo = min(src_gds.complex.space.degrees, default=0)
    matrices = dict(pmap(one_degree, range(lo, top + 1)))
    return InducedMap(bc_src, bc_tgt, matrices)
