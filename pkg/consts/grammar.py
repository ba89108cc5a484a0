import re

ARROW = '->'
REVERSIBLE_ARROW = '<->'
PLUS = '+'
COMMENT = '#'
EMPTY_COMPLEX = ('0', '∅')

NETWORK_HEADER = 'network:'
SPECIES_HEADER = 'species:'

NETWORK_EXTENSIONS = ['.rn']

SPECIES_NAME = re.compile(r'^[A-Za-z_][A-Za-z0-9_]*$')
TERM = re.compile(r'^(?P<coefficient>\d+)?\s*(?P<species>[A-Za-z_][A-Za-z0-9_]*)$')
RATE_BLOCK = re.compile(r'\[(?P<body>[^\]]*)\]\s*$')
# integer, decimal (optionally with an exponent of at most three digits) or fraction p/q; the sign is accepted so that
# non-positive rates get a precise error instead of a syntax error
RATE_LITERAL = re.compile(r'^[+-]?(\d+/\d+|(\d+(\.\d*)?|\.\d+)([eE][+-]?\d{1,3})?)$')
