"""Invariant polydifferential operators on symplectic vector spaces.

Submodules: combinat (partitions, tableaux), characters (symmetric group
characters), polydiff (symbol algebra), spaces (Inv, SC, Quant and their
decompositions), series (generating functions), suites and cli.
"""
from .combinat import Partition, pad, partitions
from .characters import cyclic_induced_multiplicity, irreducible_character, multiplicity
from .spaces import containment, decompose, inv_space, quant_space, sc_space, space
from .series import closed_form, expand, kw_series, verify_table

__version__ = "0.1.0"

__all__ = [
    "Partition", "pad", "partitions",
    "irreducible_character", "multiplicity", "cyclic_induced_multiplicity",
    "inv_space", "sc_space", "quant_space", "space", "containment", "decompose",
    "closed_form", "expand", "kw_series", "verify_table",
]
