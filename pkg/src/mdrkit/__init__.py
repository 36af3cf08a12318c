"""Finite toolkit for multiset deductive relations and their semantics."""

from .multiset import Multiset, difference, join, map_morphism, meet, msum, parse_multiset, submultiset
from .formula import (
    Consecution, Formula, Substitution, apply_subst, parse_consecution, parse_formula,
    sigma_action, subst_product,
)
from .structures import (
    FiniteModule, FinitePomonoid, FinitePoSemiring, Report, StructureError, validate_structure,
)
from .deductive import (
    DeductiveOperator, DeductiveRelation, DeductiveSystem, bj_companion, bj_diagram_check,
    do_meet, dr_from_acr, enumerate_drs, theories, trinity, trinity_census, validate_dr,
)
from .actions import action_invariant_check, cyclic_projective_witness, kernel_do, quotient_module
from .algebra import FiniteAlgebra, FiniteRLAlgebra, LukChain, mv_oracle, rl_consequence
from .matrices import (
    FuzzyMatrix, Hypermatrix, filter_generate, fuzzy_consequence, gentzen_bridge,
    hyper_consequence, leibniz, monoid_matrix_ops, reduce_model,
)
from .proofs import (
    AxiomaticSystem, Derivation, builtin_system, check_derivation, check_tree_proof,
    load_system, mdr_from_tcr, search_derivation, split_derivation, tree_to_derivation,
)
from .structfile import load_structure_file, parse_structure_file

__version__ = "0.1.0"
