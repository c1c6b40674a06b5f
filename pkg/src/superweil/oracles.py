"""Independent nullspace oracles for invariants of symmetric powers.

These deliberately avoid the Weil-model monomial engines: powers are built
from the plain tensor machinery in superlin (projection/inclusion through
V^{⊗k}), and invariants are nullspaces of the extended action matrices.
They serve as the second route in every dual-route acceptance check.
"""

from __future__ import annotations

from .liesuper import LieSuperalgebra, standard_module
from .superlin import (
    GradedMorphism,
    nullspace_of_cols,
    power,
    tensor_morphism,
)


def symmetric_power_action(alg: LieSuperalgebra, k: int, side: str = "dual"):
    """(PowerSpace, action operators) for the action on S^k(L0*) or S^k(L0).

    The action of e_a on V^{⊗k} is Σ_i 1⊗..⊗ρ_a⊗..⊗1 (Koszul signs from
    tensor_morphism), compressed to S^k through projection∘...∘inclusion.
    """
    mod = standard_module(alg, "coadjoint" if side == "dual" else "adjoint")
    v = mod.space
    pw = power(v, k, "sym")
    ops = []
    for a, rho in enumerate(mod.actions):
        total = None
        for pos in range(k):
            factors = [GradedMorphism.identity(v)] * k
            factors[pos] = rho
            term = factors[0]
            for fct in factors[1:]:
                term = tensor_morphism(term, fct)
            total = term if total is None else total + term
        if total is None:  # k = 0
            total = GradedMorphism.zero(pw.space, pw.space, parity=rho.parity)
        else:
            total = pw.projection @ total @ pw.inclusion
        ops.append(total)
    return pw, ops


def symmetric_invariants(alg: LieSuperalgebra, k: int, side: str = "dual"):
    """Echelon basis of S^k-invariants, in the symmetric power's coordinates."""
    pw, ops = symmetric_power_action(alg, k, side)
    dim = pw.space.dim
    stacked = [dict() for _ in range(dim)]
    offset = 0
    for op in ops:
        for j, col in enumerate(op.cols):
            for i, val in col.items():
                stacked[j][offset + i] = val
        offset += dim
    return pw, nullspace_of_cols(stacked, dim)


def symmetric_invariant_dims(alg: LieSuperalgebra, kmax: int, side: str = "dual"):
    """dim S^k(...)^{L0} for k = 0..kmax."""
    return [len(symmetric_invariants(alg, k, side)[1]) for k in range(kmax + 1)]
