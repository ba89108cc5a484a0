from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional

from consts import grammar
from helpers.errors import ParseError
from models import Complex, RateVector, Reaction, ReactionNetwork, Species
from .base_parser import NetworkDocument, Parser


@dataclass
class _ReactionLine:
    line: int
    column: int
    source: Dict[str, int]
    product: Dict[str, int]
    rate: Optional[Fraction]


class RnParser(Parser):
    """
    Line-oriented reaction network format (.rn):

        # comment
        network: birth-death
        species: S
        S -> 0 [3/2]
        S -> 2 S [1]
        A <-> B [1, 0.5]

    Species order is the `species:` line if given, otherwise order of first appearance.
    """

    extensions = grammar.NETWORK_EXTENSIONS

    def parse(self, text: str) -> NetworkDocument:
        if not text or not text.strip():
            raise ParseError("empty network description", 1, 1)

        name = None
        declared: Optional[List[str]] = None
        seen_species: List[str] = []
        entries: List[_ReactionLine] = []

        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.split(grammar.COMMENT, 1)[0]
            if not line.strip():
                continue
            stripped = line.strip()
            indent = len(line) - len(line.lstrip()) + 1

            if stripped.startswith(grammar.NETWORK_HEADER):
                name = stripped[len(grammar.NETWORK_HEADER):].strip() or None
                continue

            if stripped.startswith(grammar.SPECIES_HEADER):
                if declared is not None:
                    raise ParseError("species declared twice", line_no, indent)
                if entries:
                    raise ParseError("species declaration must precede reactions", line_no, indent)
                declared = self._parse_species(stripped[len(grammar.SPECIES_HEADER):], raw, line_no)
                continue

            for entry in self._parse_reaction(line, raw, line_no):
                for species in list(entry.source) + list(entry.product):
                    if declared is not None and species not in declared:
                        raise ParseError(f"unknown species '{species}'", line_no, self._column(raw, species))
                    if species not in seen_species:
                        seen_species.append(species)
                entries.append(entry)

        if not entries and declared is None:
            raise ParseError("no reactions found", 1, 1)

        species = declared if declared is not None else seen_species
        return self._build(text, name, species, entries)

    def format(self, doc: NetworkDocument) -> str:
        net = doc.network
        names = net.species_names
        lines = []

        if net.name:
            lines.append(f"{grammar.NETWORK_HEADER} {net.name}")
        lines.append(f"{grammar.SPECIES_HEADER} {', '.join(names)}")

        for i, reaction in enumerate(net.reactions):
            text = ReactionNetwork.describe(reaction, names)
            if doc.rates is not None:
                text += f" [{doc.rates[i]}]"
            lines.append(text)

        return '\n'.join(lines) + '\n'

    @staticmethod
    def _column(raw: str, token: str, start: int = 0) -> int:
        position = raw.find(token, start)
        return position + 1 if position >= 0 else 1

    def _parse_species(self, body: str, raw: str, line_no: int) -> List[str]:
        names = []
        for item in body.split(','):
            item = item.strip()
            if not grammar.SPECIES_NAME.match(item):
                raise ParseError(f"invalid species name '{item}'", line_no, self._column(raw, item or ','))
            if item in names:
                raise ParseError(f"species '{item}' declared twice", line_no, self._column(raw, item))
            names.append(item)
        return names

    def _parse_reaction(self, line: str, raw: str, line_no: int) -> List[_ReactionLine]:
        rates: Optional[List[Fraction]] = None
        body = line
        match = grammar.RATE_BLOCK.search(line)
        if match:
            body = line[:match.start()]
            rates = self._parse_rates(match.group('body'), raw, line_no, match.start() + 2)
        elif '[' in line or ']' in line:
            raise ParseError("malformed rate annotation", line_no, self._column(raw, '[' if '[' in line else ']'))

        reversible = grammar.REVERSIBLE_ARROW in body
        arrow = grammar.REVERSIBLE_ARROW if reversible else grammar.ARROW
        if body.count(arrow) != 1:
            raise ParseError(f"expected exactly one '{grammar.ARROW}' or '{grammar.REVERSIBLE_ARROW}'",
                             line_no, len(raw) - len(raw.lstrip()) + 1)

        lhs, rhs = body.split(arrow)
        arrow_column = self._column(raw, arrow)
        source = self._parse_complex(lhs, raw, line_no, 0)
        product = self._parse_complex(rhs, raw, line_no, arrow_column - 1 + len(arrow))

        if source == product:
            raise ParseError("source and product complexes are identical", line_no, arrow_column)

        if reversible:
            if rates is not None and len(rates) != 2:
                raise ParseError("reversible reaction needs two rates [kf, kb]", line_no, self._column(raw, '['))
            forward, backward = (rates[0], rates[1]) if rates else (None, None)
            return [_ReactionLine(line_no, arrow_column, source, product, forward),
                    _ReactionLine(line_no, arrow_column, product, source, backward)]

        if rates is not None and len(rates) != 1:
            raise ParseError("irreversible reaction takes a single rate", line_no, self._column(raw, '['))
        return [_ReactionLine(line_no, arrow_column, source, product, rates[0] if rates else None)]

    def _parse_complex(self, text: str, raw: str, line_no: int, offset: int) -> Dict[str, int]:
        stripped = text.strip()
        column = self._column(raw, stripped, offset) if stripped else offset + 1

        if stripped in grammar.EMPTY_COMPLEX:
            return {}
        if not stripped:
            raise ParseError("missing complex (use 0 for the empty complex)", line_no, column)

        terms: Dict[str, int] = {}
        for term in stripped.split(grammar.PLUS):
            term = term.strip()
            match = grammar.TERM.match(term)
            if not match:
                raise ParseError(f"invalid term '{term}'", line_no, self._column(raw, term or grammar.PLUS, offset))
            coefficient = int(match.group('coefficient') or 1)
            if coefficient == 0:
                raise ParseError(f"stoichiometric coefficient must be positive in '{term}'", line_no,
                                 self._column(raw, term, offset))
            species = match.group('species')
            terms[species] = terms.get(species, 0) + coefficient
        return terms

    def _parse_rates(self, body: str, raw: str, line_no: int, column: int) -> List[Fraction]:
        rates = []
        for literal in body.split(','):
            literal = literal.strip()
            if not grammar.RATE_LITERAL.match(literal):
                raise ParseError(f"invalid rate '{literal}'", line_no, self._column(raw, literal or '[', column - 1))
            try:
                rate = Fraction(literal)
            except ZeroDivisionError:
                raise ParseError(f"rate has a zero denominator: {literal}", line_no,
                                 self._column(raw, literal, column - 1))
            if rate <= 0:
                raise ParseError(f"rate must be positive, got {literal}", line_no, self._column(raw, literal, column - 1))
            rates.append(rate)
        return rates

    def _build(self, text: str, name: Optional[str], species: List[str],
               entries: List[_ReactionLine]) -> NetworkDocument:
        index = {s: i for i, s in enumerate(species)}

        def to_complex(terms: Dict[str, int]) -> Complex:
            coefficients = [0] * len(species)
            for s, c in terms.items():
                coefficients[index[s]] = c
            return Complex(tuple(coefficients))

        reactions: List[Reaction] = []
        first_line: Dict[Reaction, int] = {}
        for entry in entries:
            reaction = Reaction(to_complex(entry.source), to_complex(entry.product))
            if reaction in first_line:
                raise ParseError(f"duplicate reaction (first given on line {first_line[reaction]})",
                                 entry.line, entry.column)
            first_line[reaction] = entry.line
            reactions.append(reaction)

        with_rates = [entry for entry in entries if entry.rate is not None]
        rates = None
        if with_rates:
            missing = next((entry for entry in entries if entry.rate is None), None)
            if missing is not None:
                raise ParseError("rates must be given for every reaction or for none", missing.line, missing.column)
            rates = RateVector(tuple(entry.rate for entry in entries))

        network = ReactionNetwork(
            species=tuple(Species(s, i) for i, s in enumerate(species)),
            reactions=tuple(reactions),
            name=name,
        )
        return NetworkDocument(network, rates, text)


def parse_network(text: str) -> NetworkDocument:
    return RnParser().parse(text)


def format_network(doc: NetworkDocument) -> str:
    return RnParser().format(doc)


def load_network(file_path: str) -> NetworkDocument:
    return RnParser().load(file_path)


def parse_rates(text: str) -> RateVector:
    """Comma-separated rate literals, e.g. "1, 4, 1/2, 0.5"."""
    return RateVector(tuple(RnParser()._parse_rates(text, text, 1, 1)))
