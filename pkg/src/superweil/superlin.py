"""Exact-rational super linear algebra.

Spaces carry a named basis where every vector has a parity bit (drives all
Koszul signs) and an integer degree (drives truncation and cohomology
bookkeeping; independent of parity).  Morphisms are sparse exact-rational
matrices tagged even or odd; an odd morphism is parity-reversing.

Vectors are sparse dicts {basis index: rational}; morphisms store their
columns in the same format.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from . import kernels
from .errors import ValidationError
from .scalars import ONE, QQ

# ---------------------------------------------------------------------------
# spaces


class SuperVectorSpace:
    """Ordered basis of (name, parity, degree) triples."""

    __slots__ = ("names", "parities", "degrees", "_index")

    def __init__(self, names, parities, degrees):
        self.names = tuple(names)
        self.parities = tuple(parities)
        self.degrees = tuple(degrees)
        self._index = None

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def even_dim(self) -> int:
        return self.parities.count(0)

    @property
    def odd_dim(self) -> int:
        return self.parities.count(1)

    def index(self, name: str) -> int:
        if self._index is None:
            self._index = {n: i for i, n in enumerate(self.names)}
        return self._index[name]

    def basis(self):
        return list(zip(self.names, self.parities, self.degrees))

    def degree_indices(self) -> dict:
        """Map degree -> list of basis indices at that degree (input order)."""
        out: dict = {}
        for i, d in enumerate(self.degrees):
            out.setdefault(d, []).append(i)
        return out

    def compatible(self, other: "SuperVectorSpace") -> bool:
        """Structural equality: same parities and degrees (names ignored)."""
        return self.parities == other.parities and self.degrees == other.degrees

    def __eq__(self, other):
        return (
            isinstance(other, SuperVectorSpace)
            and self.names == other.names
            and self.parities == other.parities
            and self.degrees == other.degrees
        )

    def __hash__(self):
        return hash((self.names, self.parities, self.degrees))

    def __repr__(self):
        return f"SuperVectorSpace(dim=({self.even_dim}|{self.odd_dim}))"


def make_space(basis_spec) -> SuperVectorSpace:
    """Build a space from (name, parity, degree) triples; names must be unique."""
    names, parities, degrees = [], [], []
    seen = set()
    for name, parity, degree in basis_spec:
        if name in seen:
            raise ValidationError(f"duplicate basis name {name!r}")
        if parity not in (0, 1):
            raise ValidationError(f"parity of {name!r} must be 0 or 1, got {parity!r}")
        seen.add(name)
        names.append(str(name))
        parities.append(int(parity))
        degrees.append(int(degree))
    return SuperVectorSpace(names, parities, degrees)


def unit_space() -> SuperVectorSpace:
    """I: one even basis vector of degree 0."""
    return make_space([("1", 0, 0)])


def odd_line() -> SuperVectorSpace:
    """P: one odd basis vector of degree 0."""
    return make_space([("p", 1, 0)])


# ---------------------------------------------------------------------------
# morphisms


class GradedMorphism:
    """Sparse matrix between super vector spaces, tagged even or odd.

    Entry (i, j) may be nonzero only if parity(target_i) equals
    parity(source_j) XOR self.parity.  `src_max_degree` marks operators on
    truncated algebras whose columns above that source degree are not
    stored (the image would leave the truncation); compositions and
    comparisons only ever use defined columns.  `shift_bound` is an upper
    bound on deg(target entry) - deg(source) over the defined columns.
    """

    __slots__ = ("source", "target", "parity", "cols", "src_max_degree", "shift_bound")

    def __init__(self, source, target, parity, cols, src_max_degree=None,
                 shift_bound=None, validate=True):
        if len(cols) != source.dim:
            raise ValidationError(f"expected {source.dim} columns, got {len(cols)}")
        self.source = source
        self.target = target
        self.parity = int(parity)
        self.cols = cols
        self.src_max_degree = src_max_degree
        if validate:
            sp, tp = source.parities, target.parities
            for j, col in enumerate(cols):
                want = sp[j] ^ self.parity
                for i, v in col.items():
                    if tp[i] != want:
                        raise ValidationError(
                            f"entry ({i},{j}) violates parity: morphism parity "
                            f"{self.parity}, source {sp[j]}, target {tp[i]}"
                        )
                    if not v:
                        raise ValidationError(f"stored zero at ({i},{j})")
        if shift_bound is None:
            sd, td = source.degrees, target.degrees
            shift_bound = 0
            for j, col in enumerate(cols):
                for i in col:
                    s = td[i] - sd[j]
                    if s > shift_bound:
                        shift_bound = s
        self.shift_bound = shift_bound

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_entries(source, target, parity, entries, **kw):
        """entries: iterable of (row, col, value)."""
        cols = [dict() for _ in range(source.dim)]
        for i, j, v in entries:
            if v:
                cols[j][i] = cols[j].get(i, QQ(0)) + v
                if not cols[j][i]:
                    del cols[j][i]
        return GradedMorphism(source, target, parity, cols, **kw)

    @staticmethod
    def identity(space):
        return GradedMorphism(space, space, 0, [{i: ONE} for i in range(space.dim)],
                              shift_bound=0, validate=False)

    @staticmethod
    def zero(source, target, parity=0):
        return GradedMorphism(source, target, parity,
                              [dict() for _ in range(source.dim)],
                              shift_bound=0, validate=False)

    # -- basic queries -----------------------------------------------------

    def entry(self, i, j):
        return self.cols[j].get(i, QQ(0))

    def is_zero(self, max_src_degree=None) -> bool:
        if max_src_degree is None:
            return all(not c for c in self.cols)
        sd = self.source.degrees
        return all(not c for j, c in enumerate(self.cols) if sd[j] <= max_src_degree)

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for j, c in vec.items():
            kernels.row_axpy(out, self.cols[j], c)
        return out

    # -- arithmetic --------------------------------------------------------

    def _merge_limits(self, other):
        lims = [x for x in (self.src_max_degree, other.src_max_degree) if x is not None]
        return min(lims) if lims else None

    def __add__(self, other):
        self._check_shapes(other)
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            kernels.row_axpy(c, b, ONE)
            cols.append(c)
        return GradedMorphism(self.source, self.target, self.parity, cols,
                              src_max_degree=self._merge_limits(other),
                              shift_bound=max(self.shift_bound, other.shift_bound),
                              validate=False)

    def __sub__(self, other):
        return self + other.scaled(-ONE)

    def scaled(self, factor):
        cols = [{i: factor * v for i, v in c.items()} for c in self.cols] if factor \
            else [dict() for _ in self.cols]
        return GradedMorphism(self.source, self.target, self.parity, cols,
                              src_max_degree=self.src_max_degree,
                              shift_bound=self.shift_bound, validate=False)

    def _check_shapes(self, other):
        if self.parity != other.parity:
            raise ValidationError("parity mismatch in morphism sum")
        if not (self.source.compatible(other.source) and self.target.compatible(other.target)):
            raise ValidationError("shape mismatch in morphism sum")

    def compose(self, other: "GradedMorphism") -> "GradedMorphism":
        """self after other; parities add mod 2, defined ranges propagate."""
        if not other.target.compatible(self.source):
            raise ValidationError("composition shape mismatch")
        limit = other.src_max_degree
        if self.src_max_degree is not None:
            cand = self.src_max_degree - other.shift_bound
            limit = cand if limit is None else min(limit, cand)
        cols = kernels.compose_cols(self.cols, other.cols)
        if limit is not None:
            sd = other.source.degrees
            for j in range(len(cols)):
                if sd[j] > limit:
                    cols[j] = {}
        return GradedMorphism(other.source, self.target, (self.parity + other.parity) % 2,
                              cols, src_max_degree=limit,
                              shift_bound=self.shift_bound + other.shift_bound,
                              validate=False)

    def __matmul__(self, other):
        return self.compose(other)

    def equal_on(self, other, max_src_degree=None) -> bool:
        """Entrywise equality on every column both sides define."""
        limit = self._merge_limits(other)
        if max_src_degree is not None:
            limit = max_src_degree if limit is None else min(limit, max_src_degree)
        sd = self.source.degrees
        for j in range(len(self.cols)):
            if limit is not None and sd[j] > limit:
                continue
            if self.cols[j] != other.cols[j]:
                return False
        return True

    def super_commutator(self, other) -> "GradedMorphism":
        """[self, other] = self∘other - (-1)^{|self||other|} other∘self."""
        ab = self.compose(other)
        ba = other.compose(self)
        if self.parity and other.parity:
            return ab + ba
        return ab - ba

    def super_transpose(self) -> "GradedMorphism":
        """Transpose with the Koszul sign: (f^T)_{ji} = (-1)^{|f| p(target_i)} f_{ij}.

        Source and target swap to the duals of the originals (degrees
        negated, parities kept), matching dual_space().
        """
        dsrc = _dual_of(self.target)
        dtgt = _dual_of(self.source)
        cols = [dict() for _ in range(dsrc.dim)]
        tp = self.target.parities
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                cols[i][j] = -v if (self.parity and tp[i]) else v
        return GradedMorphism(dsrc, dtgt, self.parity, cols, validate=False)

    def block(self, src_indices, tgt_indices):
        """Dense-free submatrix: columns over src_indices re-rowed by tgt_indices."""
        tgt_pos = {t: k for k, t in enumerate(tgt_indices)}
        out = []
        for j in src_indices:
            col = {}
            for i, v in self.cols[j].items():
                k = tgt_pos.get(i)
                if k is not None:
                    col[k] = v
            out.append(col)
        return out

    def __repr__(self):
        tag = "odd" if self.parity else "even"
        return f"GradedMorphism({self.source.dim}→{self.target.dim}, {tag}, nnz={self.nnz()})"


def _dual_of(space: SuperVectorSpace) -> SuperVectorSpace:
    return SuperVectorSpace(
        tuple(n + "*" for n in space.names),
        space.parities,
        tuple(-d for d in space.degrees),
    )


# ---------------------------------------------------------------------------
# tensor structure


def tensor(v: SuperVectorSpace, w: SuperVectorSpace) -> SuperVectorSpace:
    """V⊗W with the ordered pair basis; parity adds mod 2, degree adds."""
    names, parities, degrees = [], [], []
    for an, ap, ad in zip(v.names, v.parities, v.degrees):
        for bn, bp, bd in zip(w.names, w.parities, w.degrees):
            names.append(f"{an}⊗{bn}")
            parities.append((ap + bp) % 2)
            degrees.append(ad + bd)
    return SuperVectorSpace(names, parities, degrees)


def tensor_index(v: SuperVectorSpace, w: SuperVectorSpace, i: int, j: int) -> int:
    return i * w.dim + j


def braiding(v: SuperVectorSpace, w: SuperVectorSpace) -> GradedMorphism:
    """V⊗W → W⊗V, x⊗y ↦ (-1)^{|x||y|} y⊗x."""
    src = tensor(v, w)
    tgt = tensor(w, v)
    cols = [dict() for _ in range(src.dim)]
    for i, ip in enumerate(v.parities):
        for j, jp in enumerate(w.parities):
            sign = -ONE if ip and jp else ONE
            cols[i * w.dim + j][j * v.dim + i] = sign
    return GradedMorphism(src, tgt, 0, cols, validate=False)


def tensor_morphism(f: GradedMorphism, g: GradedMorphism) -> GradedMorphism:
    """f⊗g with the Koszul sign: (f⊗g)(x⊗y) = (-1)^{|g||x|} f(x)⊗g(y)."""
    src = tensor(f.source, g.source)
    tgt = tensor(f.target, g.target)
    gd = g.target.dim
    cols = [dict() for _ in range(src.dim)]
    for j1, col1 in enumerate(f.cols):
        sign = -ONE if (g.parity and f.source.parities[j1]) else ONE
        for j2, col2 in enumerate(g.cols):
            dest = cols[j1 * g.source.dim + j2]
            for i1, v1 in col1.items():
                sv1 = sign * v1
                for i2, v2 in col2.items():
                    dest[i1 * gd + i2] = sv1 * v2
    lims = [x for x in (f.src_max_degree, g.src_max_degree) if x is not None]
    return GradedMorphism(src, tgt, (f.parity + g.parity) % 2, cols,
                          src_max_degree=min(lims) if lims else None,
                          validate=False)


# ---------------------------------------------------------------------------
# powers


def _sort_word(word, parities, kind):
    """Canonical reordering of a basis word with its sign; 0 if it collapses.

    kind 'sym': odd letters anticommute (repeats kill), even letters commute.
    kind 'ext': even letters anticommute (repeats kill), odd letters commute.
    """
    letters = list(word)
    sign = ONE
    for i in range(1, len(letters)):
        j = i
        while j > 0 and letters[j - 1] > letters[j]:
            pa, pb = parities[letters[j - 1]], parities[letters[j]]
            if kind == "sym":
                if pa and pb:
                    sign = -sign
            else:
                if not (pa and pb):
                    sign = -sign
            letters[j - 1], letters[j] = letters[j], letters[j - 1]
            j -= 1
    for a, b in zip(letters, letters[1:]):
        if a == b:
            p = parities[a]
            if (kind == "sym" and p) or (kind == "ext" and not p):
                return tuple(letters), None
    return tuple(letters), sign


@dataclass
class PowerSpace:
    space: SuperVectorSpace
    projection: GradedMorphism  # V^{⊗k} → power
    inclusion: GradedMorphism  # power → V^{⊗k}


def power(v: SuperVectorSpace, k: int, kind: str) -> PowerSpace:
    """Tensor, super-symmetric or super-exterior power with projection/inclusion.

    k = 0 gives the unit object I.  sym kills repeated odd letters (S²(P)=0),
    ext kills repeated even ones (Λ²(P)=I on one odd generator).
    """
    if k < 0:
        raise ValidationError("power exponent must be >= 0")
    if kind not in ("tensor", "sym", "ext"):
        raise ValidationError(f"unknown power kind {kind!r}")

    words = [()]
    for _ in range(k):
        words = [w + (i,) for w in words for i in range(v.dim)]
    names = ["⊗".join(v.names[i] for i in w) or "1" for w in words]
    parities = [sum(v.parities[i] for i in w) % 2 for w in words]
    degrees = [sum(v.degrees[i] for i in w) for w in words]
    big = SuperVectorSpace(names, parities, degrees)
    word_index = {w: n for n, w in enumerate(words)}

    if kind == "tensor":
        ident = GradedMorphism.identity(big)
        return PowerSpace(big, ident, ident)

    classes = []
    class_index = {}
    for w in words:
        canon, sign = _sort_word(w, v.parities, kind)
        if sign is not None and canon == w and canon not in class_index:
            class_index[canon] = len(classes)
            classes.append(canon)
    sep = "·" if kind == "sym" else "∧"
    pnames = [sep.join(v.names[i] for i in c) or "1" for c in classes]
    pparities = [sum(v.parities[i] for i in c) % 2 for c in classes]
    pdegrees = [sum(v.degrees[i] for i in c) for c in classes]
    pspace = SuperVectorSpace(pnames, pparities, pdegrees)

    proj_cols = [dict() for _ in range(big.dim)]
    for n, w in enumerate(words):
        canon, sign = _sort_word(w, v.parities, kind)
        if sign is not None:
            proj_cols[n][class_index[canon]] = sign
    projection = GradedMorphism(big, pspace, 0, proj_cols, validate=False)

    inc_cols = [dict() for _ in range(pspace.dim)]
    for m, canon in enumerate(classes):
        orbit = sorted(set(permutations(canon)))
        coeff = QQ(1, len(orbit))
        for w in orbit:
            back, sign = _sort_word(w, v.parities, kind)
            assert back == canon and sign is not None
            inc_cols[m][word_index[w]] = coeff * sign
    inclusion = GradedMorphism(pspace, big, 0, inc_cols, validate=False)
    return PowerSpace(pspace, projection, inclusion)


# ---------------------------------------------------------------------------
# duality


@dataclass
class DualSpace:
    space: SuperVectorSpace
    evaluation: GradedMorphism  # V*⊗V → I
    coevaluation: GradedMorphism  # I → V⊗V*


def dual_space(v: SuperVectorSpace) -> DualSpace:
    """Dual basis (degrees negated) with evaluation and coevaluation.

    eval(ξ^i ⊗ v_j) = δ_ij, coeval(1) = Σ v_i ⊗ ξ^i; with these conventions
    both snake identities hold exactly without extra signs.
    """
    dual = _dual_of(v)
    eval_src = tensor(dual, v)
    eval_cols = [dict() for _ in range(eval_src.dim)]
    for i in range(v.dim):
        eval_cols[i * v.dim + i][0] = ONE
    evaluation = GradedMorphism(eval_src, unit_space(), 0, eval_cols, validate=False)

    coeval_tgt = tensor(v, dual)
    coeval_col = {i * dual.dim + i: ONE for i in range(v.dim)}
    coevaluation = GradedMorphism(unit_space(), coeval_tgt, 0, [coeval_col], validate=False)
    return DualSpace(dual, evaluation, coevaluation)


# ---------------------------------------------------------------------------
# elimination-backed queries


@dataclass
class SolveResult:
    kernel: list  # spanning vectors in source coordinates (echelonized)
    image: list  # spanning vectors in target coordinates (echelonized)
    rank: int


def nullspace_of_cols(cols, dim_source) -> list:
    """Kernel of the map with the given columns, canonical echelon basis."""
    rows: dict = {}
    for j, col in enumerate(cols):
        for i, v in col.items():
            rows.setdefault(i, {})[j] = v
    pivots, prows, _ = kernels.eliminate(list(rows.values()), dim_source)
    return kernels.nullspace_from_rref(pivots, prows, dim_source, ONE)


def echelon_span(vectors, dim) -> tuple:
    """Canonical reduced-echelon basis of the span; returns (pivots, rows)."""
    pivots, rows, _ = kernels.eliminate([dict(v) for v in vectors], dim)
    return pivots, rows


def reduce_mod_span(vec, pivots, rows) -> dict:
    """Remainder of vec after eliminating the pivots of an echelonized span."""
    r = dict(vec)
    for col, row in zip(pivots, rows):
        c = r.get(col)
        if c is not None:
            kernels.row_axpy(r, row, -c)
    return r


class SpanSolver:
    """Express vectors as combinations of a fixed spanning set.

    Keeps a reduced echelon form with identity tails, so coefficients over
    the *original* spanning vectors are read back exactly.
    """

    def __init__(self, vectors, dim):
        self.dim = dim
        self.count = len(vectors)
        rows = []
        for i, v in enumerate(vectors):
            row = dict(v)
            row[dim + i] = ONE
            rows.append(row)
        self.pivots, self.rows, self._dependencies = kernels.eliminate(rows, dim)

    @property
    def rank(self):
        return len(self.pivots)

    def coefficients(self, vec):
        """Coefficients over the original spanning set, or None if outside."""
        r = dict(vec)
        for col, row in zip(self.pivots, self.rows):
            c = r.get(col)
            if c is not None:
                kernels.row_axpy(r, row, -c)
        if any(k < self.dim for k in r):
            return None
        coeffs = [QQ(0)] * self.count
        for k, v in r.items():
            coeffs[k - self.dim] = -v
        return coeffs


def linear_solve(f: GradedMorphism) -> SolveResult:
    """Exact kernel/image/rank of a morphism; rank + nullity = dim source."""
    kernel = nullspace_of_cols(f.cols, f.source.dim)
    _, image = echelon_span(f.cols, f.target.dim)
    rank = len(image)
    assert rank + len(kernel) == f.source.dim
    return SolveResult(kernel=kernel, image=image, rank=rank)
