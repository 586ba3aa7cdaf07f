"""Bethe-root catalogue and rigged-configuration classifier for the
periodic isotropic spin-1/2 chain.

The package regenerates every solution of the Bethe equations for small
chains (singular solutions included), attaches half-integer quantum
numbers through a branch-aware complex arctangent, partitions roots into
strings, maps each solution to a rigged configuration via an empirical
crossing rule, and verifies counts, bijectivity, flip symmetry, and the
full energy spectrum against dense exact diagonalization.
"""

from .classify import (
    ClassificationError,
    LabeledSolution,
    SectorReport,
    SolutionClassification,
    classify_sector,
    closed_form_M,
    compute_M,
    label_solution,
    verify_flip_consistency,
)
from .halfint import HalfInt
from .pipeline import (
    EXIT_COUNT,
    EXIT_NUMERICAL,
    EXIT_OK,
    EXIT_USAGE,
    RunManifest,
    __version__,
    run_classify,
    run_solve,
    run_verify,
)
from .quantum_numbers import (
    arctan_branch,
    bethe_numbers_regular,
    raw_bethe_values,
    singular_string_J,
)
from .rigged import (
    RiggedConfiguration,
    admissible_partitions,
    count_rigged,
    enumerate_rigged_configurations,
    sector_count,
    vacancy_number,
)
from .solver import (
    BetheSolution,
    SectorSolutions,
    SolverConfig,
    energy,
    singular_c_constant,
    solve_sector,
)
from .spectrum import match_bethe_energies, sector_hamiltonian, sector_spectrum
from .strings import (
    BetheString,
    StringPartition,
    StringPartitionError,
    crossing_corrected_J,
    crossing_delta,
    partition_into_strings,
)

__all__ = [
    "__version__",
    "HalfInt",
    "BetheSolution",
    "SectorSolutions",
    "SolverConfig",
    "energy",
    "singular_c_constant",
    "solve_sector",
    "arctan_branch",
    "raw_bethe_values",
    "bethe_numbers_regular",
    "singular_string_J",
    "BetheString",
    "StringPartition",
    "StringPartitionError",
    "partition_into_strings",
    "crossing_delta",
    "crossing_corrected_J",
    "RiggedConfiguration",
    "admissible_partitions",
    "count_rigged",
    "enumerate_rigged_configurations",
    "sector_count",
    "vacancy_number",
    "ClassificationError",
    "LabeledSolution",
    "SolutionClassification",
    "SectorReport",
    "label_solution",
    "classify_sector",
    "compute_M",
    "closed_form_M",
    "verify_flip_consistency",
    "match_bethe_energies",
    "sector_hamiltonian",
    "sector_spectrum",
    "RunManifest",
    "run_solve",
    "run_classify",
    "run_verify",
    "EXIT_OK",
    "EXIT_COUNT",
    "EXIT_NUMERICAL",
    "EXIT_USAGE",
]
