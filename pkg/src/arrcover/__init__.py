"""Exact homology of finite cyclic covers attached to marked line arrangements."""

from .arrangement import (ArrangementCharacter, ArrangementError, CharacterError, HypothesisError,
                          MarkedArrangement, alexander_divisor, betti_formula, boundary_presentation,
                          character_from_weights, diagonal_form, direct_alexander, milnor_character,
                          presentation_character, validate_arrangement, williams_parameters)
from .cover import (Certificate, CoverHomologyReport, InconsistencyError, Verdict, betti_bound,
                    boundary_cover_h1, build_complex, certify, divisor_check, h1_cover)
from .fieldpoly import ChainConditionError, FieldPoly, ModuleInvariants, poly_kernel_and_snf
from .fox import Character, Presentation, Word, commutator, fox_derivative, fox_matrix, validate_character
from .intlinalg import QQ, FieldSelector, SmithForm, companion, lemma_rank, rank_over, snf_int, substitute
from .jobs import JobSpec, JobSpecError, parse_jobspec, run, serialize_jobspec
from .laurent import LaurentMatrix, LaurentPoly
from .schreier import oracle_h1, schreier_presentation
