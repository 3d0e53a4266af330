"""Command-line interface: exact values, constructions, certificates, tables.

Commands write deterministic output (canonical JSON, versioned CSV) so that
identical configurations produce byte-identical files. Exit codes: 0 ok or
optimal, 2 budget exhausted, 3 verification failure, 4 parse or parameter
error.
"""

import argparse
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import formats
from .bounds import bound_catalog
from .budget import SearchBudget, default_budget
from .constructions import (
    blowup_lower_bound,
    clique_group_construction,
    ruzsa_szemeredi_construction,
    shared_independent_set_construction,
    star_construction,
    sts_construction,
    sts_lower_bound,
    turan_packing,
)
from .errors import (
    BudgetExhaustedError,
    FormatError,
    LinearityError,
    ParameterError,
    ResourceError,
)
from .graphs import (
    Graph,
    as_path,
    as_star,
    biclique,
    chromatic_number,
    clique,
    cycle,
    has_homomorphism,
    path,
    star,
    turan_graph,
)
from .hypergraphs import LinearHypergraph, from_copy_system, to_copy_system
from .solver import multicolor_turan_exact
from .systems import CopySystem, find_multicolor

EXIT_OK = 0
EXIT_BUDGET = 2
EXIT_VERIFY = 3
EXIT_PARSE = 4

_SPEC_HELP = (
    "graph spec: K<r> (clique), P<t> (path), C<k> (cycle), star:<s>, "
    "biclique:<a>,<b>, turan:<n>,<m>, file:<path to graph JSON>"
)


def parse_graph_spec(spec):
    m = re.fullmatch(r"K(\d+)", spec)
    if m:
        return clique(int(m.group(1)))
    m = re.fullmatch(r"P(\d+)", spec)
    if m:
        return path(int(m.group(1)))
    m = re.fullmatch(r"C(\d+)", spec)
    if m:
        return cycle(int(m.group(1)))
    m = re.fullmatch(r"star:(\d+)", spec)
    if m:
        return star(int(m.group(1)))
    m = re.fullmatch(r"biclique:(\d+),(\d+)", spec)
    if m:
        return biclique(int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"turan:(\d+),(\d+)", spec)
    if m:
        return turan_graph(int(m.group(1)), int(m.group(2)))
    if spec.startswith("file:"):
        path_ = spec[len("file:") :]
        with open(path_, encoding="utf-8") as fh:
            return Graph.from_json_dict(formats.loads_json(fh.read()))
    raise ParameterError(f"cannot parse graph spec {spec!r}; {_SPEC_HELP}")


def _write_output(text, out_path):
    if out_path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _budget_from_args(args):
    if getattr(args, "budget", None) is not None:
        return SearchBudget(max_nodes=args.budget)
    return default_budget()


# ---------------------------------------------------------------------------
# Subcommands


def cmd_exact(args):
    f = parse_graph_spec(args.F)
    g = parse_graph_spec(args.G)
    result = multicolor_turan_exact(args.n, f, g, _budget_from_args(args))
    _write_output(
        formats.dumps_canonical(formats.exact_result_to_json_dict(result)), args.out
    )
    return EXIT_OK if result.optimal else EXIT_BUDGET


def cmd_construct(args):
    budget = _budget_from_args(args)

    def need(name):
        value = getattr(args, name, None)
        if value is None:
            raise ParameterError(f"construction {args.name!r} needs --{name}")
        return value

    name = args.name
    if name == "blowup":
        report = blowup_lower_bound(parse_graph_spec(need("F")), parse_graph_spec(need("G")), need("n"))
    elif name == "turan":
        report = turan_packing(parse_graph_spec(need("F")), parse_graph_spec(need("G")), need("n"), budget)
    elif name == "star":
        report = star_construction(parse_graph_spec(need("F")), need("s"), need("n"))
    elif name == "shared-indep":
        report = shared_independent_set_construction(parse_graph_spec(need("F")), need("n"))
    elif name == "clique-group":
        report = clique_group_construction(parse_graph_spec(need("F")), need("t"), need("n"), budget)
    elif name == "sts":
        n = need("n")
        if args.t is not None:
            report = sts_lower_bound(n, args.t)
        else:
            system = sts_construction(n)
            # smallest clique that is rainbow-free by copy-count pigeonhole
            t = 2
            while t * (t - 1) // 2 <= system.copy_count:
                t += 1
            report = sts_lower_bound(n, t)
    elif name == "rs":
        report = ruzsa_szemeredi_construction(need("k"))
    else:
        raise ParameterError(f"unknown construction {name!r}")

    if not report.verified:
        sys.stderr.write("verification failed: multicolor witness found\n")
        sys.stderr.write(formats.dumps_canonical(report.violation.to_json_dict()))
        return EXIT_VERIFY
    _write_output(
        formats.dumps_canonical(formats.construction_report_to_json_dict(report)),
        args.out,
    )
    return EXIT_OK


def cmd_verify(args):
    with open(args.certificate, encoding="utf-8") as fh:
        data = formats.loads_json(fh.read())
    system, claimed = formats.load_certificate(data)
    violation = system.verify()
    if violation is not None:
        _write_output(f"system violation: {violation}\n", args.out)
        return EXIT_VERIFY
    target = parse_graph_spec(args.G) if args.G else claimed
    if target is None:
        raise ParameterError("no forbidden graph: pass --G or use a report certificate")
    witness = find_multicolor(system, target)
    if witness is not None:
        _write_output(
            "multicolor violation:\n"
            + formats.dumps_canonical(witness.to_json_dict()),
            args.out,
        )
        return EXIT_VERIFY
    _write_output("ok\n", args.out)
    return EXIT_OK


def _construction_lowers(n, f, g, budget):
    """Verified construction counts usable as lower bounds in a table row.

    Only constructions whose preconditions hold are attempted; parameter and
    resource failures skip the entry (internal verification failures still
    propagate, being bugs).
    """
    out = []

    def attempt(fn):
        try:
            report = fn()
        except (ParameterError, ResourceError):
            return
        out.append((report.copy_count, report.method))

    if chromatic_number(f) < chromatic_number(g):
        attempt(lambda: turan_packing(f, g, n, budget))
    if not has_homomorphism(g, f):
        attempt(lambda: blowup_lower_bound(f, g, n))
    s = as_star(g)
    if s is not None and s >= 2 and n >= f.n:
        attempt(lambda: star_construction(f, s, n))
    t = as_path(g)
    if t is not None and t >= 3:
        if t == 4 and n >= f.n:
            attempt(lambda: shared_independent_set_construction(f, n))
        attempt(lambda: clique_group_construction(f, t, n, budget))
    return out


def _best_bounds(n, f, g, records, budget):
    lowers = [
        (r.value, r.provenance)
        for r in records
        if r.side == "lower" and "exact" in r.validity_flags
    ]
    lowers.extend(_construction_lowers(n, f, g, budget))
    uppers = [r for r in records if r.side == "upper" and "exact" in r.validity_flags]
    lower = max(lowers, key=lambda r: r[0]) if lowers else None
    upper = min(uppers, key=lambda r: r.value) if uppers else None
    reference = next((r for r in records if r.side == "reference"), None)
    return lower, upper, reference


def _table_row(n, f, g, do_exact, budget):
    records = bound_catalog(n, f, g, budget)
    lower, upper, reference = _best_bounds(n, f, g, records, budget)
    row = {
        "n": n,
        "lower": lower[0] if lower else "",
        "lower_source": lower[1] if lower else "",
        "upper": upper.value if upper else "",
        "upper_source": upper.provenance if upper else "",
        "exact": "",
        "exact_optimal": "",
        "reference": str(Fraction(reference.value)) if reference else "",
    }
    if do_exact:
        result = multicolor_turan_exact(n, f, g, budget)
        row["exact"] = result.value
        row["exact_optimal"] = "true" if result.optimal else "false"
    return row


_TABLE_COLUMNS = [
    "n",
    "lower",
    "lower_source",
    "upper",
    "upper_source",
    "exact",
    "exact_optimal",
    "reference",
]


def cmd_table(args):
    f = parse_graph_spec(args.F)
    g = parse_graph_spec(args.G)
    if args.n_to < args.n_from:
        raise ParameterError("empty n-range")
    budget = _budget_from_args(args)
    ns = range(args.n_from, args.n_to + 1)
    workers = args.workers
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda n: _table_row(n, f, g, args.exact, budget), ns))
    else:
        rows = [_table_row(n, f, g, args.exact, budget) for n in ns]

    lines = []
    if args.format == "csv":
        lines.append("# multituran-table v1")
        lines.append(",".join(_TABLE_COLUMNS))
        for row in rows:
            lines.append(",".join(str(row[c]) for c in _TABLE_COLUMNS))
    else:
        widths = {
            c: max(len(c), *(len(str(row[c])) for row in rows)) for c in _TABLE_COLUMNS
        }
        lines.append("  ".join(c.ljust(widths[c]) for c in _TABLE_COLUMNS))
        for row in rows:
            lines.append("  ".join(str(row[c]).ljust(widths[c]) for c in _TABLE_COLUMNS))
    _write_output("\n".join(lines) + "\n", args.out)
    return EXIT_OK


_CONVERT_FORMATS = ("graph", "graph6", "system", "hypergraph")


def _convert_load(fmt, text):
    if fmt == "graph6":
        return formats.graph_from_graph6(text)
    data = formats.loads_json(text)
    if fmt == "graph":
        return Graph.from_json_dict(data)
    if fmt == "system":
        return CopySystem.from_json_dict(data)
    return LinearHypergraph.from_json_dict(data)


def _convert(obj, target):
    if target == "system":
        if isinstance(obj, CopySystem):
            return obj
        if isinstance(obj, LinearHypergraph):
            return to_copy_system(obj)
        raise ParameterError("only hypergraphs convert to copy systems")
    if target == "hypergraph":
        if isinstance(obj, LinearHypergraph):
            return obj
        if isinstance(obj, CopySystem):
            return from_copy_system(obj)
        raise ParameterError("only complete-pattern copy systems convert to hypergraphs")
    # graph targets: systems and hypergraphs export their union graph
    if isinstance(obj, CopySystem):
        graph = obj.union_graph()
    elif isinstance(obj, LinearHypergraph):
        graph = to_copy_system(obj).union_graph()
    else:
        graph = obj
    return graph


def cmd_convert(args):
    if args.from_format not in _CONVERT_FORMATS or args.to_format not in _CONVERT_FORMATS:
        raise ParameterError(f"formats must be one of {_CONVERT_FORMATS}")
    with open(args.input, encoding="utf-8") as fh:
        obj = _convert_load(args.from_format, fh.read())
    converted = _convert(obj, args.to_format)
    if args.to_format == "graph6":
        _write_output(formats.graph_to_graph6(converted) + "\n", args.out)
    else:
        _write_output(formats.dumps_canonical(converted.to_json_dict()), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser


def build_parser():
    parser = argparse.ArgumentParser(
        prog="multituran",
        description="Multicolor Turan numbers: exact search, constructions, "
        "certificates and bound tables. " + _SPEC_HELP,
    )
    parser.add_argument(
        "--workers",
        type=int,
        default=int(os.environ.get("MULTITURAN_WORKERS", "1")),
        help="worker threads for independent subtasks (used by 'table' rows); "
        "results are identical for any value",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", help="exact multicolor Turan number with witness")
    p.add_argument("--F", required=True, help="pattern graph; " + _SPEC_HELP)
    p.add_argument("--G", required=True, help="forbidden graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, help="search node budget")
    p.add_argument("--out", default="-")
    p.set_defaults(fn=cmd_exact)

    p = sub.add_parser("construct", help="emit a verified construction certificate")
    p.add_argument(
        "name",
        choices=["blowup", "turan", "star", "shared-indep", "clique-group", "sts", "rs"],
    )
    p.add_argument("--F", help="pattern graph")
    p.add_argument("--G", help="forbidden graph (blowup, turan)")
    p.add_argument("--n", type=int, help="ground set size")
    p.add_argument("--s", type=int, help="star leaf count (star)")
    p.add_argument("--t", type=int, help="path/clique order (clique-group, sts)")
    p.add_argument("--k", type=int, help="scale parameter (rs)")
    p.add_argument("--budget", type=int)
    p.add_argument("--out", default="-")
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("verify", help="re-verify a certificate file")
    p.add_argument("--certificate", required=True)
    p.add_argument("--G", help="forbidden graph (defaults to the report's)")
    p.add_argument("--out", default="-")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("table", help="bound table over an n-range")
    p.add_argument("--F", required=True)
    p.add_argument("--G", required=True)
    p.add_argument("--n-from", dest="n_from", type=int, required=True)
    p.add_argument("--n-to", dest="n_to", type=int, required=True)
    p.add_argument("--exact", action="store_true", help="also run the exact solver")
    p.add_argument("--budget", type=int)
    p.add_argument("--format", choices=["csv", "text"], default="csv")
    p.add_argument("--out", default="-")
    p.set_defaults(fn=cmd_table)

    p = sub.add_parser("convert", help="convert between certificate formats")
    p.add_argument("--input", required=True)
    p.add_argument("--from", dest="from_format", required=True, choices=_CONVERT_FORMATS)
    p.add_argument("--to", dest="to_format", required=True, choices=_CONVERT_FORMATS)
    p.add_argument("--out", default="-")
    p.set_defaults(fn=cmd_convert)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.workers < 1:
        parser.error("--workers must be >= 1")
    try:
        return args.fn(args)
    except BudgetExhaustedError as exc:
        sys.stderr.write(f"budget exhausted: {exc}\n")
        return EXIT_BUDGET
    except ResourceError as exc:
        sys.stderr.write(f"resource limit: {exc}\n")
        return EXIT_BUDGET
    except (ParameterError, FormatError, LinearityError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except OSError as exc:
        sys.stderr.write(f"io error: {exc}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
