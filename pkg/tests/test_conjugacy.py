from fractions import Fraction

import pytest

from analysis import (
    ConjugacyOptions,
    ConjugacyStatus,
    ModelSemantics,
    check_linear_conjugacy,
    conjugated_rates,
    verify_conjugacy_witness,
)
from helpers.errors import NetworkError
from conftest import load_sample, network, random_network


@pytest.fixture
def growth():
    return load_sample('growth_3.rn').network, load_sample('growth_2.rn').network


def test_growth_pair_is_conjugate(growth):
    a, b = growth
    verdict = check_linear_conjugacy(a, b)

    assert verdict.status is ConjugacyStatus.CONJUGATE
    witness = verdict.witness
    assert witness.exact and witness.residual == 0.0
    assert abs(witness.raw_scaling[0] - 2) < 1e-8
    assert witness.scaling == (Fraction(2),)
    assert witness.kappa == (Fraction(1),)
    assert witness.beta == (Fraction(1),)
    assert witness.kappa_prime == (Fraction(2),)
    assert verify_conjugacy_witness(a, witness.kappa, b, witness.beta, witness.scaling, witness.permutation)


def test_verify_witness(growth):
    a, b = growth
    assert verify_conjugacy_witness(a, (1,), b, (1,), (2,), (0,))
    assert not verify_conjugacy_witness(a, (1,), b, (1,), (3,), (0,))
    assert verify_conjugacy_witness(a, (5,), a, (5,), (1,), (0,))


def test_verify_witness_dimension_errors(growth):
    a, b = growth
    with pytest.raises(NetworkError):
        verify_conjugacy_witness(a, (1, 1), b, (1,), (2,), (0,))
    with pytest.raises(NetworkError):
        verify_conjugacy_witness(a, (1,), b, (1,), (2,), (1,))
    with pytest.raises(NetworkError):
        verify_conjugacy_witness(a, (1,), network("species: S, T\nS -> T"), (1,), (2,), (0,))


def test_conjugated_rates(growth):
    _, b = growth
    assert conjugated_rates(b, (Fraction(3),), (Fraction(2),), (0,)) == (Fraction(6),)

    two = network("species: A, B\n2 A + B -> 0\n0 -> A")
    # relabelled sources: 2 B + A and 0
    assert conjugated_rates(two, (1, 1), (Fraction(2), Fraction(3)), (1, 0)) == (Fraction(18), Fraction(1))


def test_renamed_species_use_the_renaming_permutation():
    a = network("species: A, B\nA -> B\nB -> 2 A")
    b = network("species: X, Y\nY -> X\nX -> 2 Y")
    verdict = check_linear_conjugacy(a, b)

    assert verdict.status is ConjugacyStatus.CONJUGATE
    witness = verdict.witness
    assert witness.permutation == (1, 0)
    assert [float(c) for c in witness.scaling] == pytest.approx([1.0, 1.0], rel=1e-8)
    assert len(verdict.admissible) == 2


def test_identical_networks_are_rejected():
    a = network("0 -> A\nA -> B\nB -> 0")
    with pytest.raises(NetworkError):
        check_linear_conjugacy(a, a, ConjugacyOptions(seed=3))
    with pytest.raises(NetworkError):
        check_linear_conjugacy(a, network("species: B, A\nB -> 0\n0 -> A\nA -> B"))


def test_identity_permutation_with_scaling():
    a = network("species: A, B\nA -> 3 A\nB -> 0")
    b = network("species: A, B\nA -> 2 A\nB -> 0")
    verdict = check_linear_conjugacy(a, b)

    assert verdict.status is ConjugacyStatus.CONJUGATE
    assert verdict.admissible == ((0, 1), (1, 0))
    witness = verdict.witness
    assert witness.exact
    assert witness.permutation == (0, 1)
    assert witness.scaling == (Fraction(2), Fraction(1))


def test_source_mismatch_is_structurally_impossible():
    verdict = check_linear_conjugacy(network("S -> 2 S"), network("0 -> S"))
    assert verdict.status is ConjugacyStatus.IMPOSSIBLE
    assert verdict.witness is None
    assert verdict.permutations_tried == 1


def test_unsolvable_system_is_unknown():
    verdict = check_linear_conjugacy(network("S -> 2 S"), network("S -> 0"), ConjugacyOptions(starts=3))
    assert verdict.status is ConjugacyStatus.UNKNOWN
    assert verdict.admissible == ((0,),)


def test_permutation_cap_degrades_to_unknown():
    a = network("species: A, B\nA -> B\nB -> 2 A")
    b = network("species: X, Y\nY -> X\nX -> 2 Y")
    verdict = check_linear_conjugacy(a, b, ConjugacyOptions(max_perms=1, starts=2))
    assert verdict.status is ConjugacyStatus.UNKNOWN
    assert verdict.permutations_tried == 1


def test_species_count_mismatch():
    with pytest.raises(NetworkError):
        check_linear_conjugacy(network("S -> 2 S"), network("species: S, T\nS -> 2 S"))


def test_threads_give_the_same_witness():
    a = network("species: A, B\nA -> B\nB -> 2 A")
    b = network("species: X, Y\nY -> X\nX -> 2 Y")
    single = check_linear_conjugacy(a, b, ConjugacyOptions(threads=1))
    pooled = check_linear_conjugacy(a, b, ConjugacyOptions(threads=2))
    assert single.witness.permutation == pooled.witness.permutation
    assert single.witness.scaling == pooled.witness.scaling


@pytest.fixture
def balanced_extra_source():
    # the second network adds a source whose two reactions cancel in the drift
    return network("0 -> S\nS -> 0"), network("0 -> S\nS -> 0\n2 S -> 3 S\n2 S -> S")


def test_ode_conjugacy_allows_balanced_extra_sources(balanced_extra_source):
    a, b = balanced_extra_source
    assert check_linear_conjugacy(a, b).status is ConjugacyStatus.IMPOSSIBLE

    verdict = check_linear_conjugacy(a, b, sem=ModelSemantics.ODE)
    assert verdict.status is ConjugacyStatus.CONJUGATE
    assert verdict.model is ModelSemantics.ODE
    witness = verdict.witness
    assert witness.exact
    assert witness.beta[2] == witness.beta[3]
    assert verify_conjugacy_witness(a, witness.kappa, b, witness.beta, witness.scaling, witness.permutation, 'ode')
    assert not verify_conjugacy_witness(a, witness.kappa, b, witness.beta, witness.scaling, witness.permutation)


def test_ode_rejects_unbalanced_extra_sources():
    verdict = check_linear_conjugacy(network("0 -> S\nS -> 0"), network("0 -> S\nS -> 0\n2 S -> 3 S"),
                                     sem='ode')
    assert verdict.status is ConjugacyStatus.IMPOSSIBLE
    assert verdict.model is ModelSemantics.ODE


def test_ode_drift_rows_only(growth):
    a, b = growth
    # any c with beta c = 2 matches the drift, only c = 2 also matches the diffusion
    assert verify_conjugacy_witness(a, (1,), b, (2,), (1,), (0,), ModelSemantics.ODE)
    assert not verify_conjugacy_witness(a, (1,), b, (2,), (1,), (0,), ModelSemantics.SDE)
    assert check_linear_conjugacy(a, b, sem=ModelSemantics.ODE).status is ConjugacyStatus.CONJUGATE


def test_relabelled_random_networks_are_conjugate_for_both_models(rng):
    options = ConjugacyOptions(starts=2)
    checked = 0
    while checked < 15:
        a = random_network(rng, max_species=3, max_reactions=5)
        order = list(range(a.n_species))
        rng.shuffle(order)
        b = a.permuted(order, a.species_names)
        if set(b.reactions) == set(a.reactions):
            continue
        checked += 1

        sde = check_linear_conjugacy(a, b, options)
        assert sde.status is ConjugacyStatus.CONJUGATE
        if sde.witness.exact:
            w = sde.witness
            assert verify_conjugacy_witness(a, w.kappa, b, w.beta, w.scaling, w.permutation, ModelSemantics.ODE)
        assert check_linear_conjugacy(a, b, options, ModelSemantics.ODE).status is ConjugacyStatus.CONJUGATE


@pytest.mark.slow
def test_sde_conjugacy_implies_ode_conjugacy(rng):
    options = ConjugacyOptions(starts=1)
    for _ in range(40):
        n = rng.randint(1, 2)
        a = random_network(rng, max_reactions=4, n=n)
        b = random_network(rng, max_reactions=4, n=n)
        if set(a.reactions) == set(b.reactions):
            continue

        sde = check_linear_conjugacy(a, b, options)
        ode = check_linear_conjugacy(a, b, options, ModelSemantics.ODE)
        assert set(sde.admissible) <= set(ode.admissible)
        if ode.status is ConjugacyStatus.IMPOSSIBLE:
            assert sde.status is ConjugacyStatus.IMPOSSIBLE
        if sde.status is ConjugacyStatus.CONJUGATE:
            assert ode.status is not ConjugacyStatus.IMPOSSIBLE
            w = sde.witness
            if w.exact:
                assert verify_conjugacy_witness(a, w.kappa, b, w.beta, w.scaling, w.permutation, 'ode')
