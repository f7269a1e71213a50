"""Tube categories of modular tensor categories.

The package evaluates string diagrams over skeletal modular tensor categories
given by F- and R-symbols, builds the tube category and tube algebra, and
extracts the matrix-unit decomposition of tube endomorphism algebras.
"""
__version__ = '0.1.0'

from .category_data import (CategoryData, SimpleLabel, builtin_category, builtin_names, get_category,
                       global_dimension, load_category, quantum_dimension)
from .axioms import AxiomReport, check_axioms, s_matrix
from .homspace import (Morphism, TreeBasis, braiding, cap, compose, cup, decompose_identity, dual_basis,
                       f_move, hom_dim, left_trace, r_move, simple_pairing, tensor, trace, trace_pairing,
                       tree_basis)
from .diagram import DiagramBuilder, DiagramIR, evaluate, evaluate_cylinder, parse_diagram, stack
from .tube import (TubeAlgebra, TubeMorphism, embed_c_morphism, tube_algebra, tube_compose, tube_hom_dim,
                   tube_identity)
from .reps import (BlockDecomposition, FunctorRep, block_decompose_end, compose_lambdas_check,
                   f_functor_apply, lambda_map, mu_action, primitive_idempotent, verify_opposite)
from .verify import CheckReport, run_suite
