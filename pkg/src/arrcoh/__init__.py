"""Exact presentation of the cohomology ring of hyperplane arrangement
complements: free-module decomposition, combinatorial quotient algebra,
normal forms of unit-class products over Milnor-symbol coefficients, and
tame symbols, each backed by an independent cross-check."""

from .arrangement import (
    AffineDependency,
    Arrangement,
    Flat,
    Hyperplane,
    IndexOutOfRange,
    UnitElement,
    ZeroForm,
    affine_dependency,
    circuits,
    delete,
    flat_of,
    is_normal_crossing,
    normalize_form,
    restrict,
    unit_generator,
    unit_kernel_generators,
    unit_one,
)
from .decomposition import module_basis, poincare_polynomial, rank, tate_twists
from .exterior import (
    ExteriorElement,
    GradedRanks,
    exterior_product,
    graded_rank,
    graded_rank_rational,
    nbc_basis,
    os_generators,
)
from .fields import (
    FormalField,
    PrimeField,
    Rationals,
    ZeroUnit,
    backend_from_descriptor,
)
from .ring import (
    CohomologyElement,
    MixedArrangement,
    NotNormalCrossing,
    PreconditionViolated,
    a0_projection,
    alpha_embed,
    gysin_residue,
    multiply,
    reduce_word,
    reduce_word_randomized,
    rel_R,
    rel_square,
    rel_sum_one,
    rtilde_element,
    section_lift,
    tame_symbol,
    tame_symbol_line,
    unit_class,
)
from .symbols import CoefficientElement, NonConcreteCoefficient, Tri
from .verify import relation_suite

__all__ = [name for name in dir() if not name.startswith("_")]
