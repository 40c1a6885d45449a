"""Discernibility of identical particles in permutation-structured states.

Kets live in the n-fold tensor power of C^d. Basis labels are 0-based; slot
(particle) indices are 1-based throughout.
"""

__version__ = "0.1.0"

from .discern import (
    DiscernibilityVerdict,
    Witness,
    discern_pair,
    exchange_character,
    exhaustive_witness_scan,
    find_witness,
    indiscernible,
    ip_family_collapse,
    verify_iff,
)
from .errors import (
    ConditioningOnNullError,
    ContractError,
    DegenerateStateError,
    DimensionError,
    DomainError,
    InternalConsistencyError,
    ParseError,
    QuarticleError,
    ShapeError,
)
from .kernels import BACKEND
from .observables import (
    OperatorFamily,
    OperatorSum,
    SingleParticleObservable,
    apply_operator,
    commutes_with_swap,
    conjugate_by_swap,
    diagonal_observable,
    eigenprojector_embed,
    embed_single,
    verify_cc_family,
    verify_ic,
)
from .parser import parse_state
from .permutations import SlotPermutation, antisymmetrize, permute_slots, symmetrize, transpose_slots
from .probability import Atom, Query, conditional_value, joint_value, symmetry_check, transpose_query
from .states import (
    StateRecipe,
    phase_state,
    psi_a,
    psi_d,
    psi_s,
    random_exchange_eigenstate,
)
from .tensor import MultiKet, add_scaled, inner, normalize, product_ket, ray_compare
