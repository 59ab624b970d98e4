"""Korselt sets of semiprimes pq over Q and Z.

Two independent routes to the same sets: a brute-force oracle over the
divisor grid (plus a cruder bounding-box scan that checks it), and the
closed-form structure theorem built from divisor witnesses.
"""

__version__ = "0.1.0"

from .arith import divides, divisor_set, is_prime, make_rational, parse_rational, spf_sieve
from .closed_form import (
    RegimeTag,
    closed_form_q_ks,
    closed_form_z_ks,
    gen_A,
    gen_B,
    gen_C,
    gen_D,
    regime,
)
from .core import (
    DivisorWitness,
    KorseltSet,
    SemiprimePair,
    check_base,
    decompose_by_p,
    korselt_weight,
    naive_box_scan,
    oracle_q_ks,
    oracle_z_ks,
)
from .search import SearchFilter, b_korselt_set, b_korselt_weight
