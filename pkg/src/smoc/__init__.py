"""Normal forms and exhaustive checks for operads generated by self-gluings and mergers."""

from .normalform import EVEN, ODD, NormalForm, compose_at, denote, equal, normalize
from .oracle import ClassPartition, ResourceLimitError, closure, count_expected, enumerate_pure, relation_span_rank
from .syntax import ParseError, ValidationError, parse, print_expr
from .trees import Element, Leaf, Merge, PermApp, Xi, purify

__version__ = "0.1.0"
