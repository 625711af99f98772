"""Exact generalized Hirano and Drazin inverses for matrices over
Q, Z, Z/nZ and the p-local integers, with a definitional brute-force
oracle on finite rings."""

from .additive import (
    AbsorbingReport,
    AdditiveReport,
    SumHypothesesReport,
    absorbing_sum,
    additive_hirano,
    check_sum_hypotheses,
    orthogonal_sum,
    triangular_hirano,
)
from .cline import cline_classic, cline_generalized, power_formula, product_commuting
from .errors import (
    AxiomVerificationError,
    BudgetExceededError,
    HiranoError,
    InputFormatError,
    PreconditionError,
    RingMismatchError,
    UnsupportedRingError,
)
from .hirano import (
    AxiomReport,
    Classification,
    HiranoWitness,
    classify_local_2x2,
    hirano_field,
    hirano_from_idempotent,
    hirano_integer_2x2,
    hirano_inverse,
    hirano_local_2x2,
    hirano_mod_n,
    tripotent_decompose,
    verify_hirano_axioms,
    witness_from_h,
)
from .matrices import (
    BlockView,
    SquareMatrix,
    centralizer_generators,
    in_double_commutant,
    peirce_blocks,
)
from .oracle import (
    FiniteRingEnumeration,
    OracleReport,
    brute_force_drazin,
    brute_force_hirano,
    exhaustive_check,
)
from .polys import Polynomial
from .rings import (
    Integers,
    IntegersMod,
    PLocal,
    Q,
    Rationals,
    Ring,
    Z,
    crt_split,
    quadratic_roots,
    rational_square_root,
    ring_from_compact,
    ring_from_json,
)
from .spectral import SpectralSplit, drazin_field, spectral_idempotent, split_char_poly

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
