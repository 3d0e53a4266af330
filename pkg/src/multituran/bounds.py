"""Closed-form bound catalog for multicolor Turan numbers.

Every applicable formula bound is evaluated into a BoundRecord carrying its
provenance and validity flags. Upper records flagged "exact" are valid at
the given n and safe to prune with; "large-n-only" lowers hold only above
the construction's threshold; "reference" records bound nothing and exist
for table context.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .budget import default_budget
from .errors import BudgetExhaustedError, ParameterError
from .graphs import (
    as_clique,
    as_path,
    as_star,
    chromatic_number,
    clique,
    independence_number,
    require_pattern,
    turan_graph,
    turan_number_exact,
)

# largest n at which ex(n, G) falls back to exhaustive search
ORDINARY_SEARCH_LIMIT = 8


@dataclass(frozen=True)
class BoundRecord:
    """One evaluated bound with provenance.

    side: "lower", "upper" or "reference". value is an int except for the
    asymptotic reference, which stays an exact Fraction.
    """

    side: str
    value: object
    provenance: str
    validity_flags: tuple

    def to_json_dict(self):
        value = self.value
        if isinstance(value, Fraction):
            value = {"numerator": value.numerator, "denominator": value.denominator}
        return {
            "side": self.side,
            "value": value,
            "provenance": self.provenance,
            "validity_flags": list(self.validity_flags),
        }


def ordinary_turan_number(n, g, budget=None, allow_search=True):
    """ex(n, g) with a provenance tag, or None when no cheap route exists.

    Cliques use the Turan-graph edge count, stars the max-degree count; all
    other patterns fall back to exhaustive search for small n.
    """
    r = as_clique(g)
    if r is not None:
        if r == 1:
            raise ParameterError("forbidden graph must have an edge")
        if n < r:
            return n * (n - 1) // 2, "complete-graph"
        return turan_graph(n, r - 1).edge_count, "turan-graph-formula"
    s = as_star(g)
    if s is not None:
        # max edges with every degree <= s-1
        return n * (s - 1) // 2, "max-degree-formula"
    if allow_search and n <= ORDINARY_SEARCH_LIMIT:
        try:
            value, _ = turan_number_exact(n, g, budget)
        except BudgetExhaustedError:
            return None
        return value, "exact-search"
    return None


def _ceil_div(a, b):
    return -((-a) // b)


def _star_records(n, f, s):
    cap = n * (s - 1) // f.n
    upper = BoundRecord(
        side="upper",
        value=cap,
        provenance="star-degree-pigeonhole",
        validity_flags=("exact",),
    )
    # the coordinate construction attains the cap for s=2, at block-divisible
    # sizes, and above the padding threshold; elsewhere only asymptotically
    base = f.n ** (s - 1)
    attained = s == 2 or n % base == 0 or n >= f.n ** (2 * s - 2) * (s - 1)
    lower = BoundRecord(
        side="lower",
        value=cap,
        provenance="star-coordinate-construction",
        validity_flags=("exact",) if attained else ("large-n-only",),
    )
    return [upper, lower]


def _clique_group_record(n, f, t, budget):
    """Lower bound from tiling disjoint q-blocks, q minimal with t-2
    edge-disjoint pattern copies in K_q."""
    from .solver import max_packing  # local import: solver depends on this module

    if t < 3:
        return None
    q = None
    for cand in range(max(2, f.n), f.n * (t - 2) + 1):
        result = max_packing(clique(cand), f, budget)
        if not result.optimal:
            return None
        if result.value >= t - 2:
            q = cand
            break
    if q is None:
        return None
    return BoundRecord(
        side="lower",
        value=(n // q) * (t - 2),
        provenance=f"clique-group-tiling(q={q})",
        validity_flags=("exact",),
    )


def bound_catalog(n, f, g, budget=None):
    """All applicable closed-form bounds on the multicolor Turan number.

    Records appear in a fixed order: the ordinary Turan cap, the
    maximal-packing residual lower bound, star bounds, path-target bounds,
    the path-decomposition formulas, and the chromatic asymptotic reference.
    """
    require_pattern(f, "F")
    require_pattern(g, "G")
    if n < 0:
        raise ParameterError("n must be nonnegative")
    budget = budget or default_budget()
    records = []

    ex_g = ordinary_turan_number(n, g, budget)
    if ex_g is not None:
        value, src = ex_g
        records.append(
            BoundRecord(
                side="upper",
                value=value,
                provenance=f"single-edge-reduction[{src}]",
                validity_flags=("exact",),
            )
        )
    ex_f = ordinary_turan_number(n, f, budget)
    if ex_g is not None and ex_f is not None:
        residual = _ceil_div(ex_g[0] - ex_f[0], f.edge_count)
        records.append(
            BoundRecord(
                side="lower",
                value=max(0, residual),
                provenance=f"maximal-packing-residual[{ex_g[1]},{ex_f[1]}]",
                validity_flags=("exact",),
            )
        )

    s = as_star(g)
    if s is not None and s >= 2:
        records.extend(_star_records(n, f, s))

    t = as_path(g)
    if t is not None and t >= 3:
        if n >= f.n:
            alpha = independence_number(f)
            if t == 4:
                records.append(
                    BoundRecord(
                        side="lower",
                        value=(n - alpha) // (f.n - alpha),
                        provenance="shared-independent-set",
                        validity_flags=("exact",),
                    )
                )
        group = _clique_group_record(n, f, t, budget)
        if group is not None:
            records.append(group)
        r = as_clique(f)
        if r is not None and r >= t - 3:
            # floor(n / ((t-2)(r - (t-1)/2 + 1))) with an exact rational divisor
            num = (t - 2) * (2 * r - t + 3)
            if num > 0:
                records.append(
                    BoundRecord(
                        side="lower",
                        value=(t - 2) * (2 * n // num),
                        provenance="clique-path-decomposition",
                        validity_flags=("exact", "formula-only"),
                    )
                )
        rp = as_path(f)
        if rp is not None and rp >= 3:
            if rp / 2 > t - 2:
                value = (t - 2) * (n // rp)
            else:
                y = 2 * (t - 2) * (rp - 1)
                root = isqrt(y)
                ceil_sqrt = root if root * root == y else root + 1
                value = (t - 2) * (n // (ceil_sqrt + 1))
            records.append(
                BoundRecord(
                    side="lower",
                    value=value,
                    provenance="path-path-decomposition",
                    validity_flags=("exact", "formula-only"),
                )
            )

    chi_f, chi_g = chromatic_number(f), chromatic_number(g)
    if chi_f < chi_g:
        coeff = Fraction(chi_g - 2, chi_g - 1) / (2 * f.edge_count)
        records.append(
            BoundRecord(
                side="reference",
                value=coeff * n * n,
                provenance="chromatic-asymptotic-reference",
                validity_flags=("asymptotic", "non-binding"),
            )
        )
    return records


def exact_upper_cap(records):
    """Tightest unconditionally valid upper bound in a catalog, or None."""
    caps = [
        r.value
        for r in records
        if r.side == "upper" and "exact" in r.validity_flags
    ]
    return min(caps) if caps else None
