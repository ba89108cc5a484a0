import os
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import List, Optional

from helpers.errors import NetworkError, ParseError
from helpers.log import logs
from models import RateVector, ReactionNetwork


@dataclass(frozen=True)
class NetworkDocument:
    network: ReactionNetwork
    rates: Optional[RateVector] = None
    source_text: str = ''

    def __post_init__(self):
        if self.rates is not None:
            self.network.check_rates(self.rates)

    def require_rates(self) -> RateVector:
        if self.rates is None:
            raise NetworkError("rates required")
        return self.rates

    def with_rates(self, rates: Optional[RateVector]) -> 'NetworkDocument':
        return NetworkDocument(self.network, rates, self.source_text)


class Parser(ABC):
    extensions: List[str] = []

    def __init__(self):
        self.format_name = self.__class__.__name__.replace('Parser', '')

    @abstractmethod
    def parse(self, text: str) -> NetworkDocument:
        pass

    @abstractmethod
    def format(self, doc: NetworkDocument) -> str:
        pass

    def load(self, file_path: str) -> NetworkDocument:
        if self.extensions and os.path.splitext(file_path)[1] not in self.extensions:
            logs.warning(f"{file_path} does not have a {'/'.join(self.extensions)} extension, parsing anyway")
        try:
            with open(file_path, 'rb') as file:
                data = file.read()
        except OSError as e:
            raise ParseError(f"Error reading {file_path}: {e}")

        try:
            text = data.decode('utf-8')
        except UnicodeDecodeError as e:
            line_start = data.rfind(b'\n', 0, e.start) + 1
            raise ParseError(f"{file_path} is not valid UTF-8 ({e.reason})", data.count(b'\n', 0, e.start) + 1,
                             e.start - line_start + 1)

        doc = self.parse(text)
        logs.debug(f"Loaded {self.format_name} network from {file_path}: "
                   f"{doc.network.n_species} species, {doc.network.n_reactions} reactions")
        return doc

    def save(self, doc: NetworkDocument, file_path: str):
        directory = os.path.dirname(file_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(file_path, 'w', encoding='utf-8') as file:
            file.write(self.format(doc))
