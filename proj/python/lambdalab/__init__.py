"""Untyped lambda calculus: terms, derivations and the editor protocol."""

from ._core import (
    PROTOCOL_VERSION,
    ProtocolServer,
    Term,
    alpha_eq,
    check,
    free_vars,
    normalize,
    parse,
    print,
    redexes,
    reduce,
    validate,
)

__all__ = [
    "PROTOCOL_VERSION",
    "ProtocolServer",
    "Term",
    "alpha_eq",
    "check",
    "free_vars",
    "normalize",
    "parse",
    "print",
    "redexes",
    "reduce",
    "validate",
]
