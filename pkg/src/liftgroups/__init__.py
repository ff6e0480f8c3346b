"""Quillen lifting properties between finite and finitely presented groups."""
from .catalog import (PoolConfig, Universe, UniverseConfig, build_universe, default_universe,
                      morphism_pool)
from .characterizations import DIAGRAMS, Verdict, check_diagram, normal_closure_morphisms, verify_universe
from .errors import (LiftGroupsError, NotAHomomorphism, OrderBoundExceeded, ParseError,
                     SearchBudgetExceeded, UnsupportedSquare)
from .groups import (Alternating, Cyclic, Dihedral, FiniteGroup, Metacyclic, Product, Quaternion8,
                     Subgroup, Symmetric, build_group, direct_product, is_isomorphic)
from .homs import Morphism, compose, count_homs, enumerate_homs, hom_table, identity
from .lifting import LiftingSquare, LiftResult, find_lift, lifts, negation_class
from .parsing import Parser
from .presented import PresentedGroup, standard_objects

__version__ = "0.1.0"
