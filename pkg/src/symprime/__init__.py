"""Symmetric primes, extreme symmetric sequences and their heuristic counts."""

from .enumeration import (
    CountResult,
    ScanProperty,
    ScanReport,
    SymmetryGraph,
    build_symmetry_graph,
    count_asymmetric_primes,
    count_extreme_half,
    count_extreme_quadruples,
    count_extreme_third,
    count_family,
    count_form_tuples,
    count_symmetric_primes,
    find_cliques,
    list_asymmetric_primes,
    verify_scan,
)
from .errors import (
    InvalidArgumentError,
    NumericalError,
    RangeError,
    ResourceError,
    SymprimeError,
    UnsupportedInputError,
)
from .families import Family
from .forms import LinearForm, LinearFormSystem, is_admissible, omega
from .heuristics import EstimateResult, estimate_count, eta_constant, hl_integral, singular_series
from .primes import PrimeSieve, build_sieve, divisors, is_prime, prime_count, primes_in
from .symmetry import (
    Extremity,
    SymmetricSequence,
    classify_extreme,
    is_symmetric_pair,
    is_symmetric_pair_lattice,
    is_symmetric_sequence,
    power_triple,
    symmetric_partners,
)

__version__ = "0.1.0"
