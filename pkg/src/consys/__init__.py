"""Consistent systems of local splitting data and their realization over Z."""
from .characterizers import (
    CharacterizationReport,
    characterize,
    characterize_both,
    characterize_radical_power,
    characterize_uniform_residue,
)
from .composers import (
    COMPOSERS,
    RealizationRecipe,
    combined_system,
    common_multiple_system,
    compose_recipe,
    minimal_radical_power_system,
    radical_power_system,
    residue_common_multiple_system,
    residue_degree_system,
    scale_ramification,
    scale_residue,
    single_prime_system,
    square_system,
)
from .localanalyzer import SplittingReport, analyze_local, certify, radical_power_from_report, verify_realization
from .polysynth import LocalTarget, SynthesisResult, ff_irreducible, local_block, realize_system, synthesize
from .systems import (
    BaseRing,
    ConsistentSystem,
    DvrLabel,
    IdealFactorization,
    LocalBehavior,
    ResidueFieldDesc,
    check_consistency,
    krull_sufficient,
    proj_equiv,
    splitting_vector,
)
from .zpoly import IntPolynomial

__version__ = "0.1.0"
