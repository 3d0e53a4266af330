"""Exact fractional packings via rational simplex.

The fractional packing number of a pattern F in a host graph is the optimum
of: maximize the total weight over all F-copies, subject to the weights on
copies through any one edge summing to at most 1. The LP is solved in exact
Fraction arithmetic with Bland's anti-cycling rule, so optima are citable as
exact rationals.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParameterError, ResourceError
from .graphs import enumerate_copies, require_pattern

DEFAULT_MAX_COPIES = 200_000


@dataclass(frozen=True)
class FractionalPacking:
    """Optimal fractional packing: nonzero copy weights and their total."""

    weights: dict
    value: Fraction


def simplex_maximize(nvars, rows, rhs, objective):
    """Maximize objective . x subject to rows . x <= rhs, x >= 0.

    All inputs are turned into Fractions; requires rhs >= 0 so the slack
    basis is feasible (true for packing LPs). Entering and leaving variables
    follow Bland's rule, which guarantees termination. Returns (value, x).
    """
    m = len(rows)
    rhs = [Fraction(b) for b in rhs]
    if any(b < 0 for b in rhs):
        raise ParameterError("simplex_maximize needs nonnegative right-hand sides")
    total = nvars + m
    # tableau rows: [A | I | b]; cost row holds current reduced costs
    tab = []
    for i in range(m):
        row = [Fraction(c) for c in rows[i]] + [Fraction(0)] * m + [rhs[i]]
        row[nvars + i] = Fraction(1)
        tab.append(row)
    cost = [Fraction(c) for c in objective] + [Fraction(0)] * (m + 1)
    basis = list(range(nvars, nvars + m))

    while True:
        enter = -1
        for j in range(total):
            if cost[j] > 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best_ratio = None
        best_var = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][total] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < best_var)
                ):
                    best_ratio = ratio
                    best_var = basis[i]
                    leave = i
        if leave < 0:
            raise ParameterError("LP is unbounded")
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        if cost[enter]:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, tab[leave])]
        basis[leave] = enter

    x = [Fraction(0)] * nvars
    for i in range(m):
        if basis[i] < nvars:
            x[basis[i]] = tab[i][total]
    value = sum((objective[j] * x[j] for j in range(nvars)), Fraction(0))
    return value, x


def fractional_packing(host, pattern, max_copies=DEFAULT_MAX_COPIES):
    """Exact optimum of the fractional pattern-packing LP on the host."""
    require_pattern(pattern, "pattern")
    copies = []
    for copy in enumerate_copies(host, pattern):
        copies.append(copy)
        if len(copies) > max_copies:
            raise ResourceError(
                f"fractional_packing: more than {max_copies} copies enumerated"
            )
    if not copies:
        return FractionalPacking(weights={}, value=Fraction(0))

    covered_edges = sorted({e for copy in copies for e in copy})
    edge_index = {e: i for i, e in enumerate(covered_edges)}
    rows = [[0] * len(copies) for _ in covered_edges]
    for j, copy in enumerate(copies):
        for e in copy:
            rows[edge_index[e]][j] = 1
    value, x = simplex_maximize(
        len(copies), rows, [1] * len(covered_edges), [Fraction(1)] * len(copies)
    )
    weights = {copy: x[j] for j, copy in enumerate(copies) if x[j]}
    return FractionalPacking(weights=weights, value=value)
