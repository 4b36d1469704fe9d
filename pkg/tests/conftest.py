"""Shared fixture actions used across the suite."""

import pytest

from equitor.semigroup import WeightedAction


def action_5_7() -> WeightedAction:
    """2-torus on K^4 with weights (±1,0),(0,±1); ambient quotient by order-3 diagonal."""
    return WeightedAction(
        ambient_dim=4,
        free_rank=2,
        torsion_moduli=(),
        weights=((1, 0), (-1, 0), (0, 1), (0, -1)),
        congruences=(((1, 1, -1, -1), 3),),
    )


def action_5_8() -> WeightedAction:
    """2-torus on the rank-3 semigroup cut out by a1+a2+a3 = 3*a4."""
    return WeightedAction(
        ambient_dim=4,
        free_rank=2,
        torsion_moduli=(),
        weights=((1, 1), (1, -1), (1, 0), (-3, 0)),
        congruences=(((1, 1, 1, -3), 0),),
    )


def action_5_7_ambient() -> WeightedAction:
    """The disconnected ambient action: 2-torus times an order-3 cyclic factor on K^4."""
    return WeightedAction(
        ambient_dim=4,
        free_rank=2,
        torsion_moduli=(3,),
        weights=((1, 0, 1), (-1, 0, 1), (0, 1, -1), (0, -1, -1)),
        congruences=(),
    )


def polynomial_action(n: int = 3) -> WeightedAction:
    """Trivial group on K^n."""
    return WeightedAction(
        ambient_dim=n, free_rank=0, torsion_moduli=(), weights=((),) * n, congruences=()
    )


def scaling_action() -> WeightedAction:
    """1-torus scaling a single variable."""
    return WeightedAction(
        ambient_dim=1, free_rank=1, torsion_moduli=(), weights=((1,),), congruences=()
    )


def ambient_torus_action() -> WeightedAction:
    """The 5.7 torus on K^4 without the finite quotient."""
    return WeightedAction(
        ambient_dim=4,
        free_rank=2,
        torsion_moduli=(),
        weights=((1, 0), (-1, 0), (0, 1), (0, -1)),
        congruences=(),
    )


@pytest.fixture
def fx57():
    return action_5_7()


@pytest.fixture
def fx58():
    return action_5_8()
