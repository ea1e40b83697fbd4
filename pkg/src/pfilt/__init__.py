"""Exact certificates for p-power filtrations of dual Weyl module characters.

Everything is integer arithmetic over the weight lattice: root systems
and Weyl orbits, a formal character ring with Weyl characters and exact
division, simple characters in characteristic p resolved through a
Jantzen-sum-formula solver, composition data for characters induced
through the Frobenius kernel, and certificate construction with region
criteria.  Certificates are necessary conditions at character level,
never proofs that a module filtration exists.
"""

from .certify import (Certificate, CriteriaReport, DivisibilityReport,
                      certificate_character, certify, criteria,
                      divisibility_report, euler_identity_holds,
                      good_filtration_certificate, refine,
                      steinberg_component_identity)
from .charring import (FormalCharacter, chi_expand, divide_by, euler_character,
                       frobenius_twist, steinberg_character, weyl_character,
                       weyl_dimension)
from .errors import (InvalidType, InvariantViolation, MismatchedSystem,
                     NegativeRemainder, NotDivisible, NotDominant, PfiltError,
                     SchemaError, SimpleCharUnavailable)
from .g1b import (Factor, G1BFactorList, baby_verma_character,
                  check_weight_estimates, critical_height_bound,
                  critical_simples, decompose)
from .rootsys import (CartanType, Coroot, Root, RootSystem, WeylElement,
                      build, root_system)
from .simples import (DecompTable, SimpleCharResult, SimpleCharacters,
                      bundled_table, default_resolver, export_table,
                      ingest_table, jantzen_solver, jantzen_sum,
                      simple_character)
from .weights import (PAdicSplit, dot_dominantize, in_bottom_alcove,
                      in_one_wall_region, is_restricted, split)

__version__ = "0.1.0"

__all__ = [
    "Certificate", "CriteriaReport", "DivisibilityReport", "CartanType",
    "Coroot", "DecompTable", "Factor", "FormalCharacter", "G1BFactorList",
    "PAdicSplit", "Root", "RootSystem", "SimpleCharResult", "SimpleCharacters",
    "WeylElement", "baby_verma_character", "build", "bundled_table",
    "certificate_character", "certify", "check_weight_estimates", "chi_expand",
    "criteria", "critical_height_bound", "critical_simples", "decompose",
    "default_resolver", "divide_by", "divisibility_report", "dot_dominantize",
    "euler_character", "euler_identity_holds", "export_table", "frobenius_twist",
    "good_filtration_certificate", "in_bottom_alcove", "in_one_wall_region",
    "ingest_table", "is_restricted", "jantzen_solver", "jantzen_sum",
    "refine", "root_system", "simple_character", "split", "steinberg_character",
    "steinberg_component_identity", "weyl_character", "weyl_dimension",
    "InvalidType", "InvariantViolation", "MismatchedSystem", "NegativeRemainder",
    "NotDivisible", "NotDominant", "PfiltError", "SchemaError",
    "SimpleCharUnavailable",
]
