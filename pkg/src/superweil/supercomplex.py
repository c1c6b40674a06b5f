"""Supercomplexes, their cohomology, the doubling functor, homotopies.

A supercomplex is a pair (X, d) with d odd, d² = 0, raising the integer
degree by exactly 1.  Cohomology is computed per degree as ker d / im d
with reduced-echelon coset representatives, so every output is canonical
for a given basis order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ValidationError
from .scalars import ONE
from .superlin import (
    GradedMorphism,
    SpanSolver,
    SuperVectorSpace,
    echelon_span,
    make_space,
    nullspace_of_cols,
    reduce_mod_span,
    tensor,
    tensor_morphism,
)


class SuperComplex:
    """Space plus differential.  Use validate_complex to construct."""

    __slots__ = ("space", "d", "filtered")

    def __init__(self, space, d, filtered=False):
        self.space = space
        self.d = d
        self.filtered = filtered

    def max_computable_degree(self):
        degs = self.space.degrees
        top = max(degs) if degs else 0
        if self.d.src_max_degree is not None:
            top = min(top, self.d.src_max_degree)
        return top

    def __repr__(self):
        return f"SuperComplex(dim={self.space.dim}, filtered={self.filtered})"


def validate_complex(space: SuperVectorSpace, d: GradedMorphism,
                     filtered: bool = False) -> SuperComplex:
    """Check d odd, degree +1 (≤ +1 with lower terms when filtered), d²=0.

    The failure report cites the first basis vector with a bad image.
    """
    if d.parity != 1:
        raise ValidationError("differential must be odd")
    if not (d.source.compatible(space) and d.target.compatible(space)):
        raise ValidationError("differential must be an endomorphism of the space")
    degs = space.degrees
    for j, col in enumerate(d.cols):
        for i in col:
            shift = degs[i] - degs[j]
            if filtered:
                if shift > 1:
                    raise ValidationError(
                        f"d raises degree of {space.names[j]!r} by {shift} > 1"
                    )
            elif shift != 1:
                raise ValidationError(
                    f"d must raise degree by exactly 1; "
                    f"entry {space.names[i]!r} <- {space.names[j]!r} shifts by {shift}"
                )
    dd = d @ d
    limit = dd.src_max_degree
    for j, col in enumerate(dd.cols):
        if limit is not None and degs[j] > limit:
            continue
        if col:
            i = min(col)
            raise ValidationError(
                f"d² ≠ 0: basis vector {space.names[j]!r} has nonzero image "
                f"component on {space.names[i]!r} ({col[i]})"
            )
    return SuperComplex(space, d, filtered=filtered)


# ---------------------------------------------------------------------------
# the doubling algebra D = I ⊕ P with d(p) = 1


def doubling_algebra() -> SuperComplex:
    """The two-dimensional acyclic complex D: d(p) = 1, d(1) = 0.

    The odd generator sits in degree -1 so that d raises degree by 1.
    """
    space = make_space([("1", 0, 0), ("p", 1, -1)])
    d = GradedMorphism.from_entries(space, space, 1, [(0, 1, ONE)])
    return validate_complex(space, d)


def double(x) -> SuperComplex:
    """D ⊗ x for a space or a complex; 1_D ⊗ f for a morphism.

    On a complex the differential is d_D⊗1 + 1⊗d_X (Koszul convention
    d(u⊗v) = du⊗v + (-1)^{|u|} u⊗dv, realized by tensor_morphism).
    """
    dd = doubling_algebra()
    if isinstance(x, GradedMorphism):
        return tensor_morphism(GradedMorphism.identity(dd.space), x)
    if isinstance(x, SuperVectorSpace):
        x = SuperComplex(x, GradedMorphism.zero(x, x, parity=1))
    if not isinstance(x, SuperComplex):
        raise ValidationError(f"cannot double {type(x).__name__}")
    space = tensor(dd.space, x.space)
    ident_d = GradedMorphism.identity(dd.space)
    ident_x = GradedMorphism.identity(x.space)
    d = tensor_morphism(dd.d, ident_x) + tensor_morphism(ident_d, x.d)
    return validate_complex(space, d, filtered=x.filtered)


# ---------------------------------------------------------------------------
# cohomology


@dataclass
class DegreeCohomology:
    """ker d / im d at one degree, with canonical representatives."""

    degree: int
    representatives: list  # cocycle vectors in global coordinates
    boundary_basis: list  # echelon basis of im d at this degree, global coords
    _solver: SpanSolver = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def class_coordinates(self, vec):
        """Coordinates of [vec] over the representatives; None if vec is
        not a cocycle in this degree's span."""
        coeffs = self._solver.coefficients(vec)
        if coeffs is None:
            return None
        return coeffs[: len(self.representatives)]


@dataclass
class Cohomology:
    by_degree: dict
    unreliable_degree: int | None = None  # boundary of a truncated model

    def dim(self, degree: int) -> int:
        item = self.by_degree.get(degree)
        return item.dim if item else 0

    def dims(self, degrees) -> list:
        return [self.dim(k) for k in degrees]

    def degrees(self):
        return sorted(self.by_degree)


def _quotient_reps(cocycles, boundaries, dim):
    """Echelon representatives of span(cocycles)/span(boundaries)."""
    bpiv, brows = echelon_span(boundaries, dim)
    reduced = []
    for z in cocycles:
        r = reduce_mod_span(z, bpiv, brows)
        if r:
            reduced.append(r)
    _, reps = echelon_span(reduced, dim)
    return reps, brows


def cohomology(c: SuperComplex, min_degree=None, max_degree=None) -> Cohomology:
    """Per-degree kernel-of-d modulo image-of-d with echelon representatives.

    For truncated models the top computable degree equals d's defined
    column range; ask below it for strict results.
    """
    if c.filtered:
        raise ValidationError("per-degree cohomology needs a graded complex")
    degs = c.space.degrees
    if not degs:
        return Cohomology({})
    by_degree = c.space.degree_indices()
    lo = min(by_degree) if min_degree is None else min_degree
    hi = c.max_computable_degree() if max_degree is None else max_degree
    if c.d.src_max_degree is not None and hi > c.d.src_max_degree:
        raise ValidationError(
            f"degree {hi} not computable: differential defined up to "
            f"source degree {c.d.src_max_degree}"
        )
    out = {}
    for k in range(lo, hi + 1):
        idx = by_degree.get(k, [])
        above = by_degree.get(k + 1, [])
        below = by_degree.get(k - 1, [])
        block = c.d.block(idx, above)
        kernel_local = nullspace_of_cols(block, len(idx))
        kernel = [{idx[j]: v for j, v in vec.items()} for vec in kernel_local]
        boundaries = [c.d.apply({j: ONE}) for j in below]
        boundaries = [b for b in boundaries if b]
        reps, brows = _quotient_reps(kernel, boundaries, c.space.dim)
        solver = SpanSolver(reps + brows, c.space.dim)
        out[k] = DegreeCohomology(k, reps, brows, solver)
    unreliable = None
    if c.d.src_max_degree is not None and hi >= c.d.src_max_degree:
        unreliable = c.d.src_max_degree
    return Cohomology(out, unreliable)


def induced_map_on_cohomology(f: GradedMorphism, source: Cohomology,
                              target: Cohomology, degree: int):
    """Matrix of the map [z] ↦ [f(z)] on degree-`degree` classes.

    Columns are source representatives; raises if some image fails to be a
    cocycle of the target (then f was not a chain map).
    """
    src = source.by_degree.get(degree)
    tgt = target.by_degree.get(degree)
    cols = []
    for rep in src.representatives if src else []:
        vec = f.apply(rep)
        coords = tgt.class_coordinates(vec) if tgt else (None if vec else [])
        if coords is None:
            raise ValidationError(
                f"image of a degree-{degree} class is not a cocycle in the target"
            )
        cols.append({i: v for i, v in enumerate(coords) if v})
    return cols


# ---------------------------------------------------------------------------
# homotopies


@dataclass
class HomotopyWitness:
    h: GradedMorphism


@dataclass
class HomotopyCheck:
    ok: bool
    reason: str | None = None

    def __bool__(self):
        return self.ok


def check_homotopy(f: GradedMorphism, g: GradedMorphism, h,
                   source: SuperComplex, target: SuperComplex | None = None,
                   action=None) -> HomotopyCheck:
    """True iff d∘h + h∘d = f - g exactly and h super-commutes with the action.

    `source`/`target` supply the differentials (target defaults to source).
    Operators in `action` may be single morphisms (same complex on both
    sides) or (source_op, target_op) pairs; an odd operator op must satisfy
    h∘op = -op∘h, an even one h∘op = op∘h.
    """
    if isinstance(h, HomotopyWitness):
        h = h.h
    if target is None:
        target = source
    if f.parity != 0 or g.parity != 0:
        return HomotopyCheck(False, "f and g must be even chain maps")
    if h.parity != 1:
        return HomotopyCheck(False, "homotopy witness must be odd")
    if not (f.source.compatible(g.source) and f.target.compatible(g.target)):
        raise ValidationError("shape mismatch between f and g")
    if not (h.source.compatible(f.source) and h.target.compatible(f.target)):
        raise ValidationError("shape mismatch between h and f")
    sd, td = h.source.degrees, h.target.degrees
    for j, col in enumerate(h.cols):
        for i in col:
            if td[i] - sd[j] != -1:
                return HomotopyCheck(False, "homotopy witness must have degree -1")
    lhs = target.d @ h + h @ source.d
    rhs = f - g
    if not lhs.equal_on(rhs):
        return HomotopyCheck(False, "dh + hd differs from f - g")
    for idx, op in enumerate(action or []):
        op_src, op_tgt = op if isinstance(op, tuple) else (op, op)
        left = h @ op_src
        right = op_tgt @ h
        if op_src.parity:
            right = right.scaled(-ONE)
        if not left.equal_on(right):
            return HomotopyCheck(False, f"h fails to commute with action operator {idx}")
    return HomotopyCheck(True)
