"""Inverse systems of ideals generated by symmetric and quasi-symmetric
functions in commuting and non-commuting variables.

The package computes, degree by degree, the orthogonal complement of a
homogeneous two-sided ideal under the word-basis dot product (or its
commutative analogue), reports Hilbert series, and solves the linear
system cutting out the alternating part of the complement.
"""

__version__ = "0.1.0"

from .words import (  # noqa: F401
    FreePoly,
    Permutation,
    Word,
    apply_reversed,
    d_letter,
    d_word,
    delta_w,
    multiply,
    pairing,
    pi_act,
    reverse,
    sigma_act,
)
from .combinat import (  # noqa: F401
    ColoredGenSetComposition,
    Composition,
    GenSetComposition,
    SetComposition,
    SetPartition,
    enumerate_ordered_gen_comps,
    enumerate_set_partitions,
    nabla,
    nabla_tilde,
    quasi_shuffle_compositions,
    quasi_shuffle_setcomps,
    standardize,
    word_of_gencomp,
)
