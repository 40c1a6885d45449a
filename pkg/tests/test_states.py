import math

import pytest

from quarticle.discern import ANTISYMMETRIC, NEITHER, SYMMETRIC, exchange_character
from quarticle.errors import DomainError
from quarticle.parser import evaluate_text
from quarticle.states import (
    StateRecipe,
    ket_to_expression,
    phase_state,
    psi_a,
    psi_d,
    psi_s,
    random_exchange_eigenstate,
    totally_antisymmetric,
    totally_symmetric,
)
from quarticle.tensor import inner, ray_compare


def test_psi_s_m3_amplitudes():
    k = psi_s(3)
    assert dict(k.amplitudes) == pytest.approx({(0, 1, 2): 0.5, (0, 2, 1): 0.5,
                                                (1, 0, 2): -0.5, (1, 2, 0): -0.5})


@pytest.mark.parametrize("m", [3, 4])
def test_catalog_exchange_characters(m):
    for i in range(2, m + 1):
        for j in range(i + 1, m + 1):
            assert exchange_character(psi_s(m), i, j) == SYMMETRIC
            assert exchange_character(psi_a(m), i, j) == ANTISYMMETRIC
    assert exchange_character(psi_s(m), 1, 2) == NEITHER
    assert exchange_character(totally_symmetric(m), 1, m) == SYMMETRIC
    assert exchange_character(totally_antisymmetric(m), 1, m) == ANTISYMMETRIC
    assert all(exchange_character(psi_d(m), 1, j) == NEITHER for j in range(2, m + 1))


def test_spectator_slots():
    k = psi_s(3, n=4, d=4)
    assert k.shape == (4, 4)
    assert all(t[3] == 3 for t in k.amplitudes)
    assert exchange_character(k, 2, 3) == SYMMETRIC


def test_phase_state_characters():
    assert exchange_character(phase_state(0.0), 1, 2) == SYMMETRIC
    assert exchange_character(phase_state(math.pi), 1, 2) == ANTISYMMETRIC
    assert exchange_character(phase_state(math.pi / 2), 1, 2) == NEITHER


def test_random_exchange_eigenstate():
    for sign, char in ((1, SYMMETRIC), (-1, ANTISYMMETRIC)):
        k = random_exchange_eigenstate(3, 2, 1, 3, sign, seed=4)
        assert exchange_character(k, 1, 3) == char
    a = random_exchange_eigenstate(3, 2, 1, 2, 1, seed=4)
    b = random_exchange_eigenstate(3, 2, 1, 2, 1, seed=4)
    assert a.dense.tobytes() == b.dense.tobytes()
    with pytest.raises(DomainError):
        random_exchange_eigenstate(3, 2, 1, 2, 2, seed=0)


@pytest.mark.parametrize("kind", ["psi_s", "psi_a", "psi_d"])
@pytest.mark.parametrize("m", [3, 4, 5])
def test_recipe_roundtrip(kind, m):
    recipe = StateRecipe(kind, m=m)
    direct = recipe.build()
    parsed = evaluate_text(recipe.to_expression(), d=direct.dim)
    assert ray_compare(direct, parsed)


def test_recipe_other_kinds():
    for recipe in (StateRecipe("phase", theta=1.0), StateRecipe("symmetric", m=3),
                   StateRecipe("random_antisym", m=3, seed=2),
                   StateRecipe("explicit", source="|0,1> - |1,0>")):
        k = recipe.build()
        assert ray_compare(k, evaluate_text(recipe.to_expression(), d=k.dim))
    with pytest.raises(DomainError):
        StateRecipe("psi_s", m=2)
    with pytest.raises(DomainError):
        StateRecipe("nonsense")


def test_ket_to_expression_roundtrip():
    k = phase_state(2.0)
    assert abs(abs(inner(k, evaluate_text(ket_to_expression(k)))) - 1) < 1e-12
