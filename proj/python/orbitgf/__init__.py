"""Orbit-counting generating functions A_G(t), B_G(t) of finite groups."""

from ._core import (
    A,
    A_partial_fractions,
    A_series,
    B,
    B_partial_fractions,
    B_series,
    Error,
    Group,
    a_equivalent,
    alpha,
    alpha_bruteforce,
    b_equivalent,
    beta_bruteforce,
    builtin_names,
    class_eq_from_alpha,
    family_table,
    group,
    group_from_json,
    normalized_A,
    normalized_B,
    parse_rational_function,
    record,
    scan,
    spec_json,
    table_families,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "1.0.0"
