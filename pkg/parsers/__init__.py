from .base_parser import NetworkDocument, Parser
from .rn_parser import RnParser, format_network, load_network, parse_network, parse_rates
