"""Serialization: deterministic JSON plus the graph6 codec.

All JSON written by the package goes through dumps_canonical (sorted keys,
fixed indentation, trailing newline) so identical inputs produce byte
identical files. graph6 follows the standard encoding: n in 6-bit chunks,
then the upper triangle of the adjacency matrix column by column, six bits
per printable character.
"""

import json
from fractions import Fraction

from .errors import FormatError
from .graphs import Graph
from .systems import CopySystem

GRAPH6_HEADER = ">>graph6<<"
_G6_MAX = 258047


def dumps_canonical(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def loads_json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc


# ---------------------------------------------------------------------------
# graph6


def graph_to_graph6(g):
    n = g.n
    if n > _G6_MAX:
        raise FormatError(f"graph6 encoding supports n <= {_G6_MAX}")
    out = []
    if n <= 62:
        out.append(chr(n + 63))
    else:
        out.append(chr(126))
        out.append(chr(((n >> 12) & 63) + 63))
        out.append(chr(((n >> 6) & 63) + 63))
        out.append(chr((n & 63) + 63))
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    while len(bits) % 6:
        bits.append(0)
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k : k + 6]:
            value = (value << 1) | b
        out.append(chr(value + 63))
    return "".join(out)


def graph_from_graph6(text):
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER) :]
    if not s:
        raise FormatError("empty graph6 string")
    codes = [ord(ch) - 63 for ch in s]
    if any(c < 0 or c > 63 for c in codes):
        raise FormatError("graph6 string has characters outside the printable range")
    if codes[0] < 63:
        n = codes[0]
        body = codes[1:]
    else:
        if len(codes) < 4:
            raise FormatError("truncated graph6 size field")
        n = (codes[1] << 12) | (codes[2] << 6) | codes[3]
        body = codes[4:]
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise FormatError(
            f"graph6 body length {len(body)} does not match n={n}"
        )
    bits = []
    for c in body:
        for shift in range(5, -1, -1):
            bits.append((c >> shift) & 1)
    if any(bits[nbits:]):
        raise FormatError("graph6 padding bits must be zero")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# Result serialization


def exact_result_to_json_dict(result):
    return {
        "value": result.value,
        "optimal": result.optimal,
        "provenance": "branch-and-bound"
        + ("[optimal]" if result.optimal else "[budget-exhausted]"),
        "witness": result.witness.to_json_dict(),
        "validity_flags": ["exact"] if result.optimal else ["lower-bound-only"],
    }


def construction_report_to_json_dict(report):
    data = {
        "method": report.method,
        "validity": report.validity,
        "copy_count": report.copy_count,
        "claimed_forbidden": report.claimed_forbidden.to_json_dict(),
        "verified": report.verified,
        "violation": None,
        "system": report.system.to_json_dict(),
    }
    if report.violation is not None:
        data["violation"] = report.violation.to_json_dict()
    return data


def fraction_to_json(value):
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value)
        return {"numerator": value.numerator, "denominator": value.denominator}
    return value


def load_certificate(data):
    """Read any certificate payload the CLI can write: a bare CopySystem, a
    construction report (system under 'system'), or an exact result (system
    under 'witness'). Returns (system, claimed_forbidden or None)."""
    if not isinstance(data, dict):
        raise FormatError("certificate must be a JSON object")
    if "system" in data:
        system = CopySystem.from_json_dict(data["system"])
        claimed = None
        if data.get("claimed_forbidden") is not None:
            claimed = Graph.from_json_dict(data["claimed_forbidden"])
        return system, claimed
    if "witness" in data:
        return CopySystem.from_json_dict(data["witness"]), None
    if "copies" in data:
        return CopySystem.from_json_dict(data), None
    raise FormatError("certificate JSON must contain 'copies', 'system' or 'witness'")
