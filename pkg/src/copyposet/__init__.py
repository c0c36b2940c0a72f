"""Posets of copies of finite binary relational structures.

Submodules: ``structure`` (structures and closures), ``embed`` (induced
embeddings and copies), ``poset`` (finite posets and separative quotients),
``copies`` (posets of copies, avoiders, pair colourings), ``ordinal``
(Cantor normal form), ``terms`` and ``classify`` (the diagram classifier),
``cli``.
"""

from .errors import CapacityError, DomainError, ParseError, WorkbenchError
from .structure import BinaryStructure
from .poset import FinitePoset
from .ordinal import Ordinal, parse_ordinal
from .classify import classify, parse_descriptor

__all__ = [
    "BinaryStructure",
    "CapacityError",
    "DomainError",
    "FinitePoset",
    "Ordinal",
    "ParseError",
    "WorkbenchError",
    "classify",
    "parse_descriptor",
    "parse_ordinal",
]
