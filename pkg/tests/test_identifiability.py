from fractions import Fraction

import pytest

from analysis import ModelSemantics, check_identifiability, classify_network, witness_from_dependence
from helpers.errors import WitnessError
from langevin import drifts_equal, generators_equal, ode_rhs
from models import Complex, RateVector
from conftest import network


def test_birth_death(birth_death, rng):
    net = birth_death.network
    assert check_identifiability(net, ModelSemantics.SDE).identifiable

    verdict = check_identifiability(net, 'ode')
    assert not verdict.identifiable
    assert verdict.dependent_source == Complex((1,))
    assert verdict.dependent_reactions == (0, 1)
    kappa, kappa_prime = verdict.witness_pair
    assert kappa != kappa_prime
    assert drifts_equal(net, kappa, net, kappa_prime)


def test_birth_death_rate_pair_from_the_ode():
    net = network("S -> 0\nS -> 2 S")
    kappa, kappa_prime = RateVector.of('3/2', 1), RateVector.of(2, '3/2')
    for x in ([Fraction(1, 3)], [Fraction(7, 2)], [Fraction(10)]):
        assert list(ode_rhs(net, kappa, x)) == list(ode_rhs(net, kappa_prime, x))


def test_collinear_growth(collinear_growth):
    net = collinear_growth.network
    verdict = check_identifiability(net, ModelSemantics.SDE)
    assert not verdict.identifiable
    assert verdict.dependent_source == Complex((1, 0))
    assert verdict.dependence_coefficients == (3, -3, 1)

    kappa, kappa_prime = verdict.witness_pair
    assert all(k > 0 for k in kappa) and all(k > 0 for k in kappa_prime)
    assert generators_equal(net, kappa, net, kappa_prime)
    assert generators_equal(net, RateVector.of(2, 7, 5), net, RateVector.of(5, 4, 6))

    assert check_identifiability(net.without_reaction(2), ModelSemantics.SDE).identifiable


def test_witness_from_dependence(collinear_growth, birth_death):
    net = collinear_growth.network
    source = Complex((1, 0))

    kappa, kappa_prime = witness_from_dependence(net, source, (3, -3, 1), ModelSemantics.SDE)
    assert kappa.rates == (4, 1, 2)
    assert kappa_prime.rates == (1, 4, 1)
    assert generators_equal(net, kappa, net, kappa_prime)

    doubled = witness_from_dependence(net, source, (6, -6, 2), ModelSemantics.SDE)
    assert generators_equal(net, doubled[0], net, doubled[1])

    bd = birth_death.network
    kappa, kappa_prime = witness_from_dependence(bd, Complex((1,)), (1, 1), ModelSemantics.ODE)
    assert kappa.rates == (2, 2) and kappa_prime.rates == (1, 1)
    assert drifts_equal(bd, kappa, bd, kappa_prime)


def test_witness_rejects_bad_coefficients(collinear_growth):
    net = collinear_growth.network
    with pytest.raises(WitnessError):
        witness_from_dependence(net, Complex((1, 0)), (0, 0, 0), ModelSemantics.SDE)
    with pytest.raises(WitnessError):
        witness_from_dependence(net, Complex((1, 0)), (1, 1, 1), ModelSemantics.SDE)
    with pytest.raises(WitnessError):
        witness_from_dependence(net, Complex((1, 0)), (3, -3), ModelSemantics.SDE)


def test_one_reaction_per_source_is_identifiable():
    net = network("0 -> A\nA -> B\nB -> 2 A + C\nC -> 0")
    for model in ModelSemantics:
        assert check_identifiability(net, model).identifiable
    assert classify_network(net).distinct_sources


def test_first_dependent_source_in_canonical_order():
    # both sources are dependent for the ODE; 0 sorts before S
    net = network("S -> 0\nS -> 2 S\n0 -> S\n0 -> 2 S")
    verdict = check_identifiability(net, ModelSemantics.ODE)
    assert verdict.dependent_source == Complex((0,))
    assert verdict.dependent_reactions == (2, 3)


def test_k_unary_networks_are_identifiable():
    net = network("2 A -> 3 B\n3 B -> 0\n0 -> 2 A\n2 A -> 0\n3 B -> 2 A")
    classes = classify_network(net)
    assert classes.k_unary == (2, 3)
    assert classes.ode_identifiable and classes.sde_identifiable
    for model in ModelSemantics:
        assert check_identifiability(net, model).identifiable

    assert classify_network(network("A + B -> 0")).k_unary is None
    assert classify_network(network("A -> 0\n2 A -> 0")).k_unary is None


def test_single_species_rule(rng):
    two = network("S -> 0\nS -> 3 S\n0 -> S\n0 -> 4 S")
    three = network("S -> 0\nS -> 2 S\nS -> 3 S")
    assert classify_network(two).sde_identifiable
    assert check_identifiability(two, ModelSemantics.SDE).identifiable
    assert classify_network(three).sde_identifiable is False
    assert not check_identifiability(three, ModelSemantics.SDE).identifiable

    for _ in range(100):
        reactions = set()
        while len(reactions) < rng.randint(1, 6):
            y, y_prime = rng.randint(0, 3), rng.randint(0, 4)
            if y != y_prime:
                reactions.add((y, y_prime))
        net = network('\n'.join(f"{y} S -> {y_prime} S".replace('0 S', '0') for y, y_prime in sorted(reactions)))
        assert classify_network(net).sde_identifiable == check_identifiability(net, ModelSemantics.SDE).identifiable
