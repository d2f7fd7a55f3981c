"""Quantum cluster algebras: seeds, quantum tori, pointed elements and triangular bases."""

from .errors import (ClusterError, CompatibilityError, DivisionError, DominanceUndecided,
                     InputError, NotAntisymmetricError, NotPointedError, SearchInconclusive,
                     VerificationError, WindowError)
from .qcoef import QCoeff, bar, in_m, solve_kl
from .qtorus import (Torus, TorusElement, bar_elem, exact_divide, monomial, normalize,
                     truncate, twisted_mul, y_monomial)
from .seed import (Seed, apply_sequence, cluster_monomial, load_seed, mutate, quantize,
                   reexpand, seed_from_dict, seed_to_dict, validate)
from .pointed import (PointedElement, as_pointed, check_sign_coherence, dominance_lt,
                      is_copointed)
from .tropical import TropicalPoint, compatibly_pointed, phi_path, phi_step
from .triangular import (InjectiveData, TriangularFamily, distinguished, find_t1,
                         kl_triangular, pointed_decompose, transfer_similar,
                         verify_admissible, verify_chain, verify_compatibility,
                         verify_copointed_rigidity, verify_triangular_basis)
from .liegen import CartanData, cartan_matrix, seed_from_word, validate_reduced

__version__ = "0.1.0"

__all__ = [
    "ClusterError",
    "CompatibilityError",
    "DivisionError",
    "DominanceUndecided",
    "InputError",
    "NotAntisymmetricError",
    "NotPointedError",
    "SearchInconclusive",
    "VerificationError",
    "WindowError",
    "QCoeff",
    "bar",
    "in_m",
    "solve_kl",
    "Torus",
    "TorusElement",
    "bar_elem",
    "exact_divide",
    "monomial",
    "normalize",
    "truncate",
    "twisted_mul",
    "y_monomial",
    "Seed",
    "apply_sequence",
    "cluster_monomial",
    "load_seed",
    "mutate",
    "quantize",
    "reexpand",
    "seed_from_dict",
    "seed_to_dict",
    "validate",
    "PointedElement",
    "as_pointed",
    "check_sign_coherence",
    "dominance_lt",
    "is_copointed",
    "TropicalPoint",
    "compatibly_pointed",
    "phi_path",
    "phi_step",
    "InjectiveData",
    "TriangularFamily",
    "distinguished",
    "find_t1",
    "kl_triangular",
    "pointed_decompose",
    "transfer_similar",
    "verify_admissible",
    "verify_chain",
    "verify_compatibility",
    "verify_copointed_rigidity",
    "verify_triangular_basis",
    "CartanData",
    "cartan_matrix",
    "seed_from_word",
    "validate_reduced",
]
