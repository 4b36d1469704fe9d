"""Qualified characters and the reduced class groups they generate.

A character qualifies when it is realized with both signs, kills the
pseudo-reflection subgroup, and both signed fibers avoid every facet that
contracts deep into the invariant ring.  When no facet contracts deep the
last condition is vacuous and the qualified lattice is computed exactly;
otherwise it is under-approximated by a bounded sweep and flagged.

The subgroup of Cl(R) generated by the character divisors is computed from
a sweep over small combinations of a basis, then certified exact when it
already contains the envelope allowed by the additivity defect (which is
controlled by the ramification lattice).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import lcm

from .divisors import DivisorContext, no_blowing_up_check
from .errors import InvariantViolationError
from .lattice import Sublattice, quotient_structure
from .semigroup import Vec, fiber_sample_with_values
from .subgroups import SubgroupOfA, SubgroupOfG


@dataclass(frozen=True)
class QualifiedLattice:
    group: SubgroupOfA
    provenance: str  # "exact" | "swept"

    def basis_chars(self) -> list[Vec]:
        return self.group.generators()


def qualified_lattice(
    ctx: DivisorContext,
    reflection: SubgroupOfG,
    units: SubgroupOfA,
    sweep_bound: int = 2,
) -> QualifiedLattice:
    """Characters realized with both signs whose modules are rank-one
    candidates for freeness comparisons."""
    base = units.intersect(reflection.annihilator)
    if no_blowing_up_check(ctx.S, ctx.S_G, ctx.cls):
        return QualifiedLattice(base, "exact")
    act = ctx.action
    gens = []
    for chi in sweep_chars(act, base.generators(), sweep_bound):
        if chi == act.zero_char:
            continue
        if _avoids_deep_facets(ctx, chi) and _avoids_deep_facets(ctx, act.char_neg(chi)):
            gens.append(chi)
    return QualifiedLattice(SubgroupOfA.generated_by(act, gens), "swept")


def _avoids_deep_facets(ctx: DivisorContext, chi: Vec) -> bool:
    for pi in ctx.cls.ht2plus:
        P = ctx.S.facets[pi]
        if fiber_sample_with_values(ctx.action, chi, {P.coord: 0}) is None:
            return False
    return True


def sweep_chars(action, basis: list[Vec], bound: int) -> list[Vec]:
    """All reduced characters sum(n_i * b_i) with |n_i| <= bound, deduplicated."""
    seen = []
    seen_set = set()
    if not basis:
        return [action.zero_char]
    for combo in itertools.product(range(-bound, bound + 1), repeat=len(basis)):
        chi = action.zero_char
        for n, b in zip(combo, basis):
            chi = action.char_add(chi, action.char_scale(n, b))
        if chi not in seen_set:
            seen_set.add(chi)
            seen.append(chi)
    return sorted(seen)


@dataclass(frozen=True)
class ReducedClassData:
    divisor_side_factors: tuple[int, ...]  # subgroup of Cl(R) from character divisors
    module_side_factors: tuple[int, ...]  # subgroup of Cl(R^G) from module classes
    divisor_exponent: int | None
    module_exponent: int | None
    sweep_bound: int
    sweep_stable: bool
    exact: bool  # envelope certificate succeeded

    @property
    def exponent(self) -> int | None:
        return self.divisor_exponent


def reduced_class_groups(
    ctx: DivisorContext,
    qualified: QualifiedLattice,
    sweep_bound: int = 2,
    stability_pass: bool = True,
) -> ReducedClassData:
    """Sweep the qualified lattice and assemble both reduced class groups."""
    act = ctx.action
    basis = qualified.basis_chars()
    chars = sweep_chars(act, basis, sweep_bound)
    div_cols: list[Vec] = []
    mod_cols: list[Vec] = []
    div_orders: list[int | None] = []
    mod_orders: list[int | None] = []
    for chi in chars:
        if chi == act.zero_char:
            continue
        d_ord = ctx.char_class_order(chi)
        m_ord = ctx.module_class_order(chi)
        # the orders coincide exactly when the module class is torsion; a
        # non-torsion module class says nothing about the divisor side
        if m_ord is not None and d_ord != m_ord:
            raise InvariantViolationError(
                f"class orders disagree at {chi}: {d_ord} vs {m_ord}"
            )
        div_orders.append(d_ord)
        mod_orders.append(m_ord)
        div_cols.append(ctx.char_divisor(chi).coeffs)
        mod_cols.append(ctx.module_divisor(chi).coeffs)

    div_factors = _subgroup_factors(div_cols, ctx.cl_R.presentation)
    mod_factors = _subgroup_factors(mod_cols, ctx.cl_RG.presentation)
    div_exp = _exponent_from_orders(div_orders)
    mod_exp = _exponent_from_orders(mod_orders)
    if div_exp is not None and mod_exp is not None and div_exp != mod_exp:
        raise InvariantViolationError("finite exponents of the two sides disagree")

    exact = _envelope_certificate(ctx, basis, div_cols)

    stable = True
    if stability_pass and not exact:
        wide = sweep_chars(act, basis, sweep_bound + 1)
        wide_cols = []
        for chi in wide:
            if chi == act.zero_char:
                continue
            wide_cols.append(ctx.char_divisor(chi).coeffs)
        stable = _subgroup_factors(wide_cols, ctx.cl_R.presentation) == div_factors

    return ReducedClassData(
        divisor_side_factors=div_factors,
        module_side_factors=mod_factors,
        divisor_exponent=div_exp,
        module_exponent=mod_exp,
        sweep_bound=sweep_bound,
        sweep_stable=stable,
        exact=exact,
    )


def _subgroup_factors(cols: list[Vec], presentation: Sublattice) -> tuple[int, ...]:
    factors = quotient_structure(list(cols), presentation)
    return tuple(d for d in factors if d != 1)


def _exponent_from_orders(orders: list[int | None]) -> int | None:
    out = 1
    for o in orders:
        if o is None:
            return None
        out = lcm(out, o)
    return out


def _envelope_certificate(ctx: DivisorContext, basis: list[Vec], div_cols: list[Vec]) -> bool:
    """True when the swept subgroup provably equals the full generated group.

    Character divisors are additive modulo the ramification lattice, so the
    full group sits between the swept subgroup and the envelope generated by
    the basis divisors together with the ramification columns; equality of
    envelope and sweep pins it down.
    """
    rel = ctx.cl_R.presentation
    basis_cols = [ctx.char_divisor(chi).coeffs for chi in basis if chi != ctx.action.zero_char]
    ram_cols = list(ctx.cls.ramification_lattice.basis)
    nf = ctx.S.facet_count
    envelope = Sublattice.from_columns(basis_cols + ram_cols + list(rel.basis), nf)
    swept = Sublattice.from_columns(list(div_cols) + list(rel.basis), nf)
    return envelope == swept


def certified_exponent(
    ctx: DivisorContext, qualified: QualifiedLattice, data: ReducedClassData
) -> tuple[int | None, str]:
    """The freeness exponent with its provenance.

    Infinite as soon as any swept class (on either side) has infinite
    order: a non-torsion module side already breaks the finiteness premise
    behind the whole exponent machinery.  Exact when the qualified lattice
    and the envelope certificate are both exact; otherwise the swept value.
    """
    if data.divisor_exponent is None or data.module_exponent is None:
        return None, "exact"
    if qualified.provenance == "exact" and data.exact:
        return data.divisor_exponent, "exact"
    return data.divisor_exponent, "swept" if data.sweep_stable else "sweep-unstable"


def t_consistency_check(
    ctx: DivisorContext,
    qualified: QualifiedLattice,
    exponent: int,
    wide_bound: int = 3,
) -> bool:
    """Every qualified character in the wider sweep becomes free at the exponent."""
    act = ctx.action
    for chi in sweep_chars(act, qualified.basis_chars(), wide_bound):
        if not ctx.free_test(act.char_scale(exponent, chi))[0]:
            return False
    return True
