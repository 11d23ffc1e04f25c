"""Exact workbench for the affine-Virasoro algebra of type A1 and its modules
Omega, Delta and Theta on C[s, t]."""

from .classify import (ClassificationError, ClassResult, EFCandidate, classify_candidate,
                       derive_action, lemma_identity_check, roundtrip_extract)
from .liealg import (AlgebraElement, EnvelopingElement, Gen, bracket, check_antisymmetry,
                     check_jacobi, word_mul)
from .parsing import (ParseError, parse_algebra, parse_enveloping, parse_expr, parse_scalar,
                      parse_spec, parse_spoly)
from .polymodule import (Family, ModuleSpec, SPoly, act_elem, act_gen, act_word,
                         check_module_axiom)
from .report import Report
from .scalars import Scalar, UniPoly, unipoly_ext_euclid, unipoly_gcd
from .structure import (GenWitness, SubmoduleShape, check_invariance, generate_one, is_simple,
                        iso_check, proper_submodule, tau_check)

__version__ = "0.1.0"
