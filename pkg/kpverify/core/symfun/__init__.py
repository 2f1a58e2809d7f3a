from .qpoly import QPolynomial, key_of, key_weight, partition_of
from .miwa import miwa_times, power_sum, power_sums
from .powersum import (
    elementary_in_powersums,
    monomial_to_powersum,
    newton_round_trip,
    partitions_of,
    powersum_in_elementary,
    powersum_series,
    symmetric_orbit_sum,
)
from .extraction import extract_q_polynomial

__all__ = [
    "QPolynomial",
    "key_of",
    "key_weight",
    "partition_of",
    "miwa_times",
    "power_sum",
    "power_sums",
    "elementary_in_powersums",
    "monomial_to_powersum",
    "newton_round_trip",
    "partitions_of",
    "powersum_in_elementary",
    "powersum_series",
    "symmetric_orbit_sum",
    "extract_q_polynomial",
]
