"""Minimal-prime statistics of two-coefficient prime partitions.

A number n admissible for a coprime coefficient pair (m1, m2) is one with
gcd(n, m1) = gcd(n, m2) = 1 and n of the same parity as m1 + m2.  For each
such n the library locates the representation n = m1*p + m2*q (p, q prime)
minimizing p, sweeps windows of n up to a threshold, summarizes the
resulting statistics, ranks coefficient pairs by them, and compares the
rankings against a closed-form predictor.
"""
from .backend import active_backend, available_backends
from .criteria import (ConditionReport, EquivalenceReport, check_conditions,
                       condition_matrix, default_K, verify_equivalence)
from .errors import (AdmissibilityError, CheckpointError, ConfigError,
                     GoldpartError, InputError, InvalidClassError, RangeError,
                     ResourceError)
from .partitions import (CoeffPair, PartitionOutcome, find_p_minimal,
                         find_p_minimal_bruteforce, find_q_maximal_descending,
                         is_admissible)
from .predictor import (TWIN_PRIME_CONSTANT, estimate_partition_count,
                        euler_phi, rank_predictor, refined_predictor,
                        search_cost)
from .primes import (PrimeStore, factorize, is_prime_u64,
                     primes_in_class_ascending, primes_in_class_descending,
                     primes_upto, sieve_range)
from .ranking import RankEntry, RankTable, rank_by, spearman_rho
from .sweep import (Checkpoint, PairSummary, RangePartial, empty_partial,
                    format_average, merge_partials, resume, sweep_all,
                    sweep_pair, sweep_range)

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError", "Checkpoint", "CheckpointError", "CoeffPair",
    "ConditionReport", "ConfigError", "EquivalenceReport", "GoldpartError",
    "InputError", "InvalidClassError", "PairSummary", "PartitionOutcome",
    "PrimeStore", "RangeError", "RangePartial", "RankEntry", "RankTable",
    "ResourceError", "TWIN_PRIME_CONSTANT", "active_backend",
    "available_backends", "check_conditions", "condition_matrix", "default_K",
    "empty_partial", "estimate_partition_count", "euler_phi", "factorize",
    "find_p_minimal", "find_p_minimal_bruteforce", "find_q_maximal_descending",
    "format_average", "is_admissible", "is_prime_u64", "merge_partials",
    "primes_in_class_ascending", "primes_in_class_descending", "primes_upto",
    "rank_by", "rank_predictor", "refined_predictor", "resume", "search_cost",
    "sieve_range", "spearman_rho", "sweep_all", "sweep_pair", "sweep_range",
    "verify_equivalence", "__version__",
]
