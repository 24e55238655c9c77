"""Text formats for polynomials, metric graphs and divisors.

All numbers are exact rationals written as `p` or `p/q`; parsing and
serialization round-trip bit-for-bit.  Lines starting with `#` and
blank lines are ignored.  Formats:

  polynomial   one monomial per line: `i j h` (exponents, coefficient);
               three exponent columns `i j k h` for space polynomials
  graph        optional `vertices N` header, then one edge per line:
               `u v length` with 0-based vertex ids
  divisor      chips: `v <vertex> <coeff>` on a vertex or
               `e <edge> <offset> <coeff>` at distance offset from the
               edge's first endpoint
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Tuple

from .exceptions import InputError
from .metric_graph import Divisor, GraphPoint, MetricGraph
from .plane_curve import TropicalPolynomial


def _lines(text: str):
    for k, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield k, line


def _rational(tok: str, lineno: int) -> Fraction:
    try:
        return Fraction(tok)
    except ZeroDivisionError:
        raise InputError(f"line {lineno}: zero denominator in {tok!r}") from None
    except ValueError:
        raise InputError(f"line {lineno}: not a rational: {tok!r}") from None


def _integer(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InputError(f"line {lineno}: not an integer: {tok!r}") from None


def parse_polynomial(text: str, dims: int = 2):
    """Parse a tropical polynomial; dims exponent columns per line."""
    coeffs: Dict[Tuple[int, ...], Fraction] = {}
    for lineno, line in _lines(text):
        toks = line.split()
        if len(toks) != dims + 1:
            raise InputError(
                f"line {lineno}: expected {dims} exponents and a coefficient,"
                f" got {len(toks)} fields"
            )
        m = tuple(_integer(t, lineno) for t in toks[:dims])
        if any(e < 0 for e in m):
            raise InputError(f"line {lineno}: negative exponent")
        if m in coeffs:
            raise InputError(f"line {lineno}: duplicate monomial {m}")
        coeffs[m] = _rational(toks[dims], lineno)
    if not coeffs:
        raise InputError("empty polynomial")
    if dims == 2:
        return TropicalPolynomial(coeffs)
    return coeffs


def serialize_polynomial(poly, dims: int = 2) -> str:
    coeffs = poly.terms if isinstance(poly, TropicalPolynomial) else poly
    out = []
    for m in sorted(coeffs):
        out.append(" ".join(str(e) for e in m) + f" {coeffs[m]}")
    return "\n".join(out) + "\n"


def parse_graph(text: str) -> MetricGraph:
    edges = []
    declared = None
    for lineno, line in _lines(text):
        toks = line.split()
        if toks[0] == "vertices":
            if len(toks) != 2 or declared is not None:
                raise InputError(f"line {lineno}: malformed vertices header")
            declared = _integer(toks[1], lineno)
            continue
        if len(toks) != 3:
            raise InputError(f"line {lineno}: expected `u v length`")
        u, v = _integer(toks[0], lineno), _integer(toks[1], lineno)
        length = _rational(toks[2], lineno)
        if length <= 0:
            raise InputError(f"line {lineno}: edge length must be positive")
        edges.append((u, v, length))
    if not edges:
        raise InputError("graph has no edges")
    n = max(max(u, v) for u, v, _ in edges) + 1
    if declared is not None:
        if declared < n:
            raise InputError(f"vertices header {declared} below edge indices")
        n = declared
    return MetricGraph(n, edges)


def serialize_graph(G: MetricGraph) -> str:
    out = [f"vertices {G.n}"]
    for u, v, length in G.edges:
        out.append(f"{u} {v} {length}")
    return "\n".join(out) + "\n"


def parse_divisor(text: str, G: MetricGraph) -> Divisor:
    chips = []
    for lineno, line in _lines(text):
        toks = line.split()
        if toks[0] == "v" and len(toks) == 3:
            idx = _integer(toks[1], lineno)
            if not 0 <= idx < G.n:
                raise InputError(f"line {lineno}: vertex {idx} out of range")
            p = GraphPoint.at_vertex(idx)
            coeff = _integer(toks[2], lineno)
        elif toks[0] == "e" and len(toks) == 4:
            idx = _integer(toks[1], lineno)
            if not 0 <= idx < len(G.edges):
                raise InputError(f"line {lineno}: edge {idx} out of range")
            offset = _rational(toks[2], lineno)
            coeff = _integer(toks[3], lineno)
            try:
                p = G.point(idx, offset)
            except Exception:
                raise InputError(
                    f"line {lineno}: offset {offset} outside edge {idx}"
                ) from None
        else:
            raise InputError(
                f"line {lineno}: expected `v <vertex> <coeff>` or"
                f" `e <edge> <offset> <coeff>`"
            )
        chips.append((p, coeff))
    return G.normalize_divisor(Divisor(chips))


def serialize_divisor(D: Divisor) -> str:
    out = []
    for p, c in D.items():
        if p.is_vertex:
            out.append(f"v {p.index} {c}")
        else:
            out.append(f"e {p.index} {p.offset} {c}")
    return "\n".join(out) + "\n" if out else "\n"
