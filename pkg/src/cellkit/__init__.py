"""cellkit: swich algebras, generalized matrix rings and affine cell chains over exact Groebner bases."""

from .coeffs import GF, QQ, Field
from .multipoly import GREVLEX, LEX, PolyRing, Polynomial
from .groebner import (
    BudgetExceeded,
    Ideal,
    budget_scope,
    ideal_member,
    krull_dim,
    normal_form,
    radical_member,
    reduced_groebner_basis,
)
from .verdict import Status, Verdict
from .affine_ring import AffineRing, RingElement, is_reduced, is_unit, is_zero_divisor, laurent_ring
from .swich import (
    MatrixOverB,
    SwichLayer,
    idempotent_generator,
    is_idempotent_ideal,
    is_semiprime,
    pi_check_matrix,
    pi_check_swich,
)
from .group import (
    CyclicFactor,
    GroupExtensionAlgebra,
    GroupSpec,
    PrincipalCellAlgebra,
    bounded_annihilator_search,
    tl_builtin,
)
from .chain import AnalysisConfig, CellChain, ChainReport, analyze_chain
from .aca import load, parse, parse_document

__version__ = "0.1.0"
