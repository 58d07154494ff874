"""Text formats: matrix CSV, vector CSV, edge-list JSON.

Matrix CSV has one row per line.  Rational entries are written ``p/q`` (or
``p`` when ``q == 1``); float entries are decimal literals.  A file whose
entries are all integers or ``p/q`` is rational; a file with any decimal
literal is float; a file mixing ``p/q`` and decimals is rejected.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from . import graph
from .errors import DimensionError, GraphError, MatrixParseError
from .matrix import FLOAT, RATIONAL, SquareMatrix

_RATIONAL_TOKEN = re.compile(r"^[+-]?\d+(/[+-]?\d+)?$")


def format_scalar(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return repr(float(x))


def _parse_rows(text: str) -> list[list[tuple[int, int, str]]]:
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        rows.append([(lineno, col, tok.strip()) for col, tok in enumerate(line.split(","), start=1)])
    return rows


def _tokens_to_values(rows):
    """Classify every token, pick a domain, and convert."""
    first_rational = first_float = None
    kinds = []
    for r in rows:
        kr = []
        for lineno, col, tok in r:
            if not tok:
                raise MatrixParseError("empty entry", lineno, col)
            if _RATIONAL_TOKEN.match(tok):
                kind = "frac" if "/" in tok else "int"
                if kind == "frac" and first_rational is None:
                    first_rational = (lineno, col)
            else:
                try:
                    float(tok)
                except ValueError:
                    raise MatrixParseError(f"cannot parse {tok!r} as a number", lineno, col) from None
                kind = "float"
                if first_float is None:
                    first_float = (lineno, col)
            kr.append(kind)
        kinds.append(kr)
    if first_rational and first_float:
        line, col = max(first_rational, first_float)
        raise MatrixParseError("file mixes rational p/q and decimal entries", line, col)
    domain = FLOAT if first_float else RATIONAL
    values = []
    for r in rows:
        vr = []
        for lineno, col, tok in r:
            if domain == FLOAT:
                vr.append(float(tok))
            else:
                try:
                    vr.append(Fraction(tok))
                except ZeroDivisionError:
                    raise MatrixParseError(f"zero denominator in {tok!r}", lineno, col) from None
        values.append(vr)
    return values, domain


def parse_matrix(text: str) -> SquareMatrix:
    rows = _parse_rows(text)
    if not rows:
        raise MatrixParseError("empty matrix file")
    n = len(rows)
    for r in rows:
        if len(r) != n:
            raise MatrixParseError(f"expected {n} entries per row (square matrix), found {len(r)}", r[0][0])
    values, domain = _tokens_to_values(rows)
    try:
        return SquareMatrix.from_rows(values, domain)
    except DimensionError as exc:  # pragma: no cover - shape checked above
        raise MatrixParseError(str(exc)) from None


def format_matrix(m: SquareMatrix) -> str:
    return "".join(",".join(format_scalar(x) for x in r) + "\n" for r in m.rows)


def parse_vector(text: str) -> tuple:
    rows = _parse_rows(text)
    if len(rows) != 1:
        raise MatrixParseError(f"a vector file holds exactly one line, found {len(rows)}")
    values, _ = _tokens_to_values(rows)
    return tuple(values[0])


def format_vector(values) -> str:
    return ",".join(format_scalar(x) for x in values) + "\n"


def read_matrix(path) -> SquareMatrix:
    return parse_matrix(Path(path).read_text())


def write_matrix(path, m: SquareMatrix):
    Path(path).write_text(format_matrix(m))


def load_network(path) -> graph.DirectedNetwork:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise GraphError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return graph.from_json(data)


def network_to_json(g: graph.DirectedNetwork) -> dict:
    return {
        "nodes": list(g.labels) if g.labels is not None else g.node_count,
        "edges": [
            {"from": g.label(u), "to": g.label(v),
             "weight": format_scalar(w) if isinstance(w, Fraction) else w}
            for u, v, w in g.edges
        ],
    }
