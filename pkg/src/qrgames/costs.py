"""Saturating cost arithmetic over the naturals extended with infinity.

Finite costs are plain ints; the only non-int value ever stored is
``math.inf``.  Addition saturates (inf + x == inf), comparisons are total,
and componentwise <= on cost vectors is the dominance partial order.
"""

import math

INF = math.inf

# A cost is an int or INF; a cost vector has one entry per player.
Cost = int | float
CostVector = tuple[Cost, ...]


def vadd(a: CostVector, b: CostVector) -> CostVector:
    return tuple(x + y for x, y in zip(a, b))


def vle(a: CostVector, b: CostVector) -> bool:
    """Componentwise a <= b."""
    return all(x <= y for x, y in zip(a, b))


def dominates(a: CostVector, b: CostVector) -> bool:
    """True when a <= b componentwise and a != b (strict dominance)."""
    return a != b and vle(a, b)


def util(c: CostVector) -> Cost:
    """Social utility: the sum of all players' costs."""
    total: Cost = 0
    for x in c:
        total += x
    return total


def cost_to_json(c: Cost):
    return "inf" if c == INF else c


def cost_from_json(v) -> Cost:
    if v == "inf":
        return INF
    if isinstance(v, int) and v >= 0:
        return v
    raise ValueError(f"not a cost value: {v!r}")


def vector_to_json(c: CostVector) -> list:
    return [cost_to_json(x) for x in c]


def vector_from_json(items) -> CostVector:
    return tuple(cost_from_json(x) for x in items)
