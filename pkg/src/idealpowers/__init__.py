"""Homological invariants of powers of monomial ideals."""

from .monomial import (
    MonomialIdeal,
    RingContext,
    colon,
    equals,
    extend,
    from_text,
    ideal_sum,
    integral_closure,
    intersect,
    is_squarefree,
    join_rings,
    krull_dim_quotient,
    membership,
    minimalize,
    power,
    product,
    to_text,
)
from .resolution import (
    BettiTable,
    HomologicalSummary,
    IntervalModule,
    betti_table,
    candidate_degrees,
    depth,
    exhaustive_betti_oracle,
    koszul_betti,
    reg,
    summary,
    tensor,
)

__version__ = "0.1.0"

__all__ = [
    "MonomialIdeal", "RingContext", "colon", "equals", "extend", "from_text", "ideal_sum",
    "integral_closure", "intersect", "is_squarefree", "join_rings", "krull_dim_quotient",
    "membership", "minimalize", "power", "product", "to_text",
    "BettiTable", "HomologicalSummary", "IntervalModule", "betti_table", "candidate_degrees",
    "depth", "exhaustive_betti_oracle", "koszul_betti", "reg", "summary", "tensor",
]
