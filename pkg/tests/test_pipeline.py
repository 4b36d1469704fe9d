import random

import pytest

from equitor.errors import InputError
from equitor.oracles import INCONCLUSIVE, YES, bounded_freeness_oracle
from equitor.pipeline import (
    Analysis,
    Options,
    check_equidimensional,
    corollary_13_check,
    stability_reduce,
    t_factorization,
)
from equitor.semigroup import WeightedAction, build_semigroup
from equitor.subgroups import (
    SubgroupOfA,
    ineffective_kernel,
    perp,
    pseudo_reflection_group,
    quotient_action,
    restrict_action_to_subgroup,
    restriction_data,
    tor_subgroup,
)
from conftest import (
    action_5_7,
    action_5_8,
    polynomial_action,
    scaling_action,
)


def scaling_nonequidim_action():
    """The classic non-equidimensional 1-torus action on K^4."""
    return WeightedAction(
        ambient_dim=4, free_rank=1, torsion_moduli=(), weights=((1,), (1,), (-1,), (-1,))
    )


def test_t_factorization():
    assert t_factorization(3, 1) == (3, 1)
    assert t_factorization(12, 2) == (3, 4)
    assert t_factorization(1, 5) == (1, 1)
    assert t_factorization(18, 6) == (1, 18)
    with pytest.raises(InputError):
        t_factorization(0, 1)


def test_stability_reduce():
    act, stable = stability_reduce(action_5_8())
    assert stable and act.congruences == action_5_8().congruences
    red, stable = stability_reduce(scaling_action())
    assert not stable
    S = build_semigroup(red)
    assert S.hilbert_basis == ()  # reduced to the point
    # idempotent
    red2, stable2 = stability_reduce(red)
    assert stable2 and build_semigroup(red2).hilbert_basis == ()


def test_analysis_5_7_values():
    an = Analysis(action_5_7())
    assert an.input_stable
    assert an.ctx.cl_RG.invariant_factors == (3,)
    assert an.reflection_restriction.order == 1
    assert an.exponent_with_provenance == (3, "exact")
    obs = an.obstruction
    assert obs.restriction.invariant_factors == (3, 3)
    assert obs.coprime_part == 3 and obs.reflection_part == 1
    v = an.verdict
    assert v.equidimensional == "yes" and v.cofree == "no"
    assert v.oracle_agrees
    assert an.obstruction_quotient_cofree.verdict
    assert an.corollary_consistency() is True


def test_analysis_5_8_values():
    an = Analysis(action_5_8())
    assert an.input_stable
    assert an.ctx.cl_R.invariant_factors == (3,)
    assert an.reduced.divisor_side_factors == (3,)
    obs = an.obstruction
    assert obs.restriction.invariant_factors == (3,)
    v = an.verdict
    assert v.equidimensional == "yes" and v.cofree == "no"
    assert v.oracle_agrees
    assert an.corollary_consistency() is True


def test_factorial_fixture_obstruction():
    # polynomial ring with a cofree torus: exponent 1, obstruction = kernel
    act = WeightedAction(
        ambient_dim=4,
        free_rank=2,
        torsion_moduli=(),
        weights=((1, 0), (-1, 0), (0, 1), (0, -1)),
    )
    an = Analysis(act)
    assert an.exponent_with_provenance == (1, "exact")
    obs = an.obstruction
    assert obs.restriction.order == 1
    assert obs.obstruction == an.kernel
    v = an.verdict
    assert v.equidimensional == "yes" and v.cofree == "yes"
    assert an.corollary_consistency() is True


def test_trivial_group_verdicts():
    v = check_equidimensional(polynomial_action(3))
    assert v.equidimensional == "yes" and v.cofree == "yes" and v.oracle_agrees


def test_non_equidimensional_classic():
    an = Analysis(scaling_nonequidim_action())
    v = an.verdict
    assert v.equidimensional == "no" and v.oracle_agrees
    assert v.cofree == "no"
    assert an.reduced.module_exponent is None
    assert an.exponent_with_provenance[0] is None
    assert an.obstruction is None
    conds = an.main_theorem_conditions()
    assert set(conds.values()) == {False}


def test_main_theorem_all_true_on_fixtures():
    for act in (action_5_7(), action_5_8(), polynomial_action(2)):
        conds = Analysis(act).main_theorem_conditions()
        assert set(conds.values()) == {True}


def test_corollary_13_check_wrapper():
    assert corollary_13_check(action_5_7()) is True
    assert corollary_13_check(scaling_nonequidim_action()) is None


def test_theorem_divisibility_on_fixtures():
    for act in (action_5_7(), action_5_8()):
        an = Analysis(act)
        obs = an.obstruction
        assert (obs.exponent ** 8) % obs.restriction.order == 0


def test_finite_component_reduction():
    # disconnected group: mu_2 sign action is quotiented away first, and the
    # verdict machinery stays consistent with the oracle
    act = WeightedAction(
        ambient_dim=2,
        free_rank=0,
        torsion_moduli=(2,),
        weights=((1,), (0,)),
        congruences=(((1, 1), 2),),
    )
    an = Analysis(act)
    assert an.finite_reduction_applied
    v = an.verdict
    assert v.equidimensional == "yes" and v.cofree == "yes" and v.oracle_agrees
    assert an.corollary_consistency() is True


def test_quotient_singularity_counterexample_shape():
    # 1-torus on the order-3 quotient plane: equidimensional, cofree, and the
    # obstruction restricts trivially even though upstairs facet classes and
    # inertia restrictions are nontrivial
    act = WeightedAction(
        ambient_dim=2, free_rank=1, torsion_moduli=(3,), weights=((-3, 1), (1, 2))
    )
    an = Analysis(act)
    assert an.reflection_restriction.order == 9
    v = an.verdict
    assert v.equidimensional == "yes" and v.cofree == "yes" and v.oracle_agrees
    assert an.obstruction.restriction.order == 1
    assert an.corollary_consistency() is True


def test_reflection_quotient_action_is_cofree():
    # quotienting a finite-restriction subgroup into the nonprincipal
    # reflection subgroup of the quotient leaves a cofree action of the join
    for base in (action_5_7(), action_5_8()):
        an = Analysis(base)
        act = an.action
        for m in (2, 3):
            N = tor_subgroup(m, an.kernel)
            ctx_n = an.context_for(N)
            act_n = ctx_n.action
            refl_tilde = pseudo_reflection_group(
                ctx_n.S,
                act_n,
                ctx_n.ht1_facets(),
                ineffective_kernel(ctx_n.S, act_n),
                non_principal_only=True,
                principal_flags=ctx_n.obstructing_facet_flags(),
            )
            join = N.join(an.reflection)
            sub = restrict_action_to_subgroup(
                quotient_action(act, refl_tilde), join
            )
            S_sub = build_semigroup(sub)
            SG_sub = build_semigroup(quotient_action(sub, perp(SubgroupOfA.trivial(sub))))
            for h in S_sub.hilbert_basis:
                chi = sub.weight_of(h)
                got = bounded_freeness_oracle(S_sub, SG_sub, sub, chi, 10)
                assert got in (YES, INCONCLUSIVE)


def test_corpus_smoke():
    import sys

    sys.path.insert(0, "tests")
    from corpus import random_action
    from equitor.errors import CappedComputationError

    rng = random.Random(7)
    done = 0
    for _ in range(25):
        act = random_action(rng)
        try:
            an = Analysis(act)
            v = an.verdict
        except CappedComputationError:
            continue
        assert v.oracle_agrees
        assert an.corollary_consistency() is not False
        done += 1
    assert done >= 20
