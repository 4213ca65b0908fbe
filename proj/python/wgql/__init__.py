"""Numerics for N = p2^2 + p3^3 + p4^4 + p5^5: sieves, complete sums,
singular series, singular integral and exact counting."""

from fractions import Fraction

from . import _core
from ._core import (  # noqa: F401
    PrimeTable,
    a_term,
    arc_partition,
    character_sums,
    ck_sum,
    classify_alpha,
    discrete_circle,
    divisor_count,
    euler_phi,
    lcm_list,
    local_count,
    main_term,
    moebius,
    p0_continuous,
    p0_exact,
    predict,
    r_all,
    r_exact,
    s_factor,
    sample_even,
    scan_exceptional,
    series_profile,
    set_thread_count,
    sieve_primes,
    thread_count,
)


def exponent_check() -> Fraction:
    return Fraction(*_core.exponent_check())


__all__ = [name for name in dir() if not name.startswith("_")]
