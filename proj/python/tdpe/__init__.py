"""Type-directed partial evaluation for shift/reset with sum types."""

from ._tdpe import (
    check,
    classify,
    corpus_paper,
    disjunct,
    gen_term,
    normalize,
    rewrite,
)

__all__ = [
    "check",
    "classify",
    "corpus_paper",
    "disjunct",
    "gen_term",
    "normalize",
    "rewrite",
]
