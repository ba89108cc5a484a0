from fractions import Fraction

import pytest

from helpers.errors import ParseError
from models import Complex
from parsers import NetworkDocument, format_network, load_network, parse_network, parse_rates
from conftest import load_sample, random_network, sample_path


def test_parse_one_species_network():
    doc = parse_network("0 -> 2 S [1]\n0 -> S [4]\nS -> 0 [1]\n0 -> 3 S [2]")
    assert doc.network.species_names == ('S',)
    assert doc.network.n_reactions == 4
    assert doc.rates.rates == (1, 4, 1, 2)


def test_parse_fraction_rate():
    doc = parse_network("A0 -> A1 + A2 [2/9]")
    reaction = doc.network.reactions[0]
    assert doc.network.species_names == ('A0', 'A1', 'A2')
    assert reaction.source == Complex((1, 0, 0))
    assert reaction.product == Complex((0, 1, 1))
    assert doc.rates.rates == (Fraction(2, 9),)


def test_reversible_arrow_expands_forward_first():
    doc = parse_network("S <-> 0")
    net = doc.network
    assert [(r.source, r.product) for r in net.reactions] == [(Complex((1,)), Complex((0,))),
                                                             (Complex((0,)), Complex((1,)))]
    assert doc.rates is None

    doc = parse_network("A <-> B [1, 0.5]")
    assert doc.rates.rates == (Fraction(1), Fraction(1, 2))


def test_decimal_rates_are_exact():
    assert parse_network("S -> 0 [1.5]").rates.rates == (Fraction(3, 2),)
    assert parse_network("S -> 0 [0.1]").rates.rates == (Fraction(1, 10),)
    assert parse_rates("1, 4, 1/2, 2.5e1").rates == (1, 4, Fraction(1, 2), 25)


def test_headers_comments_and_empty_symbol():
    doc = parse_network("# comment\nnetwork: demo\nspecies: B, A\n∅ -> A # inflow\nA -> B\n")
    assert doc.network.name == 'demo'
    assert doc.network.species_names == ('B', 'A')
    assert doc.network.reactions[0].source == Complex((0, 0))


def test_compact_terms():
    net = parse_network("2S -> 3S").network
    assert net.reactions[0].vector == (1,)


@pytest.mark.parametrize('text, fragment', [
    ("S -> 0 [0]", "rate must be positive"),
    ("S -> 0 [-1]", "rate must be positive"),
    ("S -> 0\nS -> 0", "duplicate reaction"),
    ("species: A\nA -> B", "unknown species 'B'"),
    ("S <-> 0 [1]", "two rates"),
    ("S -> 0 [1]\n0 -> S", "every reaction or for none"),
    ("S -> 0 -> 2 S", "exactly one"),
    ("S = 0", "exactly one"),
    ("S -> ", "missing complex"),
    ("S -> 2.5 A", "invalid term"),
    ("S -> 0 [abc]", "invalid rate"),
    ("S -> 0 [1/0]", "zero denominator"),
    ("S -> 0 [1e9999]", "invalid rate"),
    ("S -> S", "identical"),
    ("", "empty"),
])
def test_errors_are_positioned(text, fragment):
    with pytest.raises(ParseError) as info:
        parse_network(text)
    assert fragment in str(info.value)
    assert info.value.line >= 1 and info.value.column >= 1


def test_error_line_numbers():
    with pytest.raises(ParseError) as info:
        parse_network("S -> 0 [1]\n0 -> S [1]\n0 -> 2 S [0]")
    assert info.value.line == 3


def test_format_rates_as_fractions():
    doc = load_sample('branching_a.rn')
    text = format_network(doc)
    assert "[11/18]" in text
    assert "[2/9]" in text


def test_format_without_rates_has_no_annotations():
    text = format_network(parse_network("S -> 0\n0 -> 2 S"))
    assert '[' not in text


def test_round_trip_samples():
    for name in ('same_generator_1.rn', 'branching_b.rn', 'collinear_growth.rn', 'birth_death.rn'):
        doc = load_sample(name)
        again = parse_network(format_network(doc))
        assert again.network == doc.network
        assert again.rates == doc.rates


def test_round_trip_random_networks(rng):
    for _ in range(25):
        net = random_network(rng)
        doc = NetworkDocument(net)
        assert parse_network(format_network(doc)).network == net


def test_load_missing_file(tmp_path):
    with pytest.raises(ParseError):
        load_network(str(tmp_path / 'missing.rn'))


def test_other_extensions_are_parsed_with_a_warning(tmp_path, capsys):
    path = tmp_path / 'network.txt'
    path.write_text('S -> 0 [2]\n')
    doc = load_network(str(path))
    assert doc.rates.rates == (2,)
    assert 'does not have a .rn extension' in capsys.readouterr().err


def test_sample_files_exist():
    doc = load_sample('same_generator_2.rn')
    assert doc.rates.rates == (4, 1, 1, 1)
    assert sample_path('growth_3.rn').endswith('growth_3.rn')


def test_large_exponents_stay_exact():
    assert parse_rates('1e3, 2.5e-3').rates == (1000, Fraction(1, 400))


def test_undecodable_file_is_a_positioned_error(tmp_path):
    path = tmp_path / 'binary.rn'
    path.write_bytes(b'S -> 0 [1]\n\xff\xfe -> S [1]\n')
    with pytest.raises(ParseError) as info:
        load_network(str(path))
    assert 'not valid UTF-8' in str(info.value)
    assert (info.value.line, info.value.column) == (2, 1)
