"""Problem-file parsing and JSON encodings.

A problem file is line-oriented JSON: operator coefficients as integer
polynomial coefficient lists (lowest degree first, one list per
derivative order) with an optional common denominator, initial terms as
exact rational strings, and optional assertion fields.  No floating
point appears anywhere in inputs or certificates.
"""

from __future__ import annotations

import json
from typing import Dict, List, Tuple

from .errors import InputError
from .ore import DiffOp
from .polys import Poly
from .rationals import QQ, rat_from_str, rat_to_str
from .series import TruncSeries


def op_to_json(op: DiffOp) -> List[List[str]]:
    return [[rat_to_str(c) for c in p.coeffs] for p in op.coeffs]


def op_from_json(data, denominator: int = 1) -> DiffOp:
    coeffs = []
    for poly in data:
        cs = []
        for c in poly:
            if isinstance(c, str):
                cs.append(rat_from_str(c))
            elif isinstance(c, int):
                cs.append(QQ(c, denominator))
            else:
                raise InputError("coefficients must be integers or 'p/q' strings")
        coeffs.append(Poly(cs))
    return DiffOp(coeffs)


def series_to_json(f: TruncSeries) -> List[str]:
    return [rat_to_str(c) for c in f.coeffs]


def series_from_json(data) -> TruncSeries:
    out = []
    for c in data:
        if isinstance(c, str):
            out.append(rat_from_str(c))
        elif isinstance(c, int):
            out.append(QQ(c))
        else:
            raise InputError("series terms must be integers or 'p/q' strings")
    return TruncSeries(out)


def load_problem(path: str) -> Tuple[DiffOp, TruncSeries, Dict]:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as e:
        raise InputError("cannot read %s: %s" % (path, e))
    except json.JSONDecodeError as e:
        raise InputError("malformed JSON in %s: %s" % (path, e))
    if "operator" not in data or "initial_terms" not in data:
        raise InputError("problem file needs 'operator' and 'initial_terms'")
    den = data.get("denominator", 1)
    if not isinstance(den, int) or den == 0:
        raise InputError("'denominator' must be a nonzero integer")
    op = op_from_json(data["operator"], den)
    if op.is_zero():
        raise InputError("operator is zero")
    init = series_from_json(data["initial_terms"])
    assertions = data.get("assertions", {})
    if not isinstance(assertions, dict):
        raise InputError("'assertions' must be an object")
    return op, init, assertions


def bivar_to_json(p) -> List[List[str]]:
    return [[rat_to_str(c) for c in yc.coeffs] for yc in p.y_coeffs]
