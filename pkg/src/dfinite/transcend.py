"""Transcendence testing for D-finite power series.

``transcendence_test`` minimizes the input operator, then inspects each
singular point of the minimal operator: a non-Fuchsian point, an
indicial polynomial that fails to split into distinct rational linear
factors, or a logarithm in the local solution basis each certify
transcendence.  If every point passes, the test fails (no conclusion).

``globally_bounded_test`` is the same scan for series asserted to be
globally bounded; the logarithm check runs only at the origin, and a
clean pass is reported as algebraic, a verdict conditional on the
semisimple-local-monodromy conjecture for such series.

Verdicts carry machine-checkable certificates; ``verify_report`` replays
them step by step against the local analysis alone.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InputError, InvalidFactorization, PrecisionTooLow
from .local import (
    IndicialData,
    SingularPoint,
    formal_solutions,
    indicial_branches,
    singularities,
)
from .minimize import (
    MinimizationResult,
    MinimizeOptions,
    certify_annihilates,
    minimal_annihilator,
)
from .ore import DiffOp, op_mul
from .polys import Poly, format_poly
from .rationals import QQ, is_integer, rat_to_str
from .series import TruncSeries, apply_op, indicial_bound, unroll, validate_init, zero_test

VERDICT_T = "T"
VERDICT_A = "A"
VERDICT_FAIL = "FAIL"

CONF_CERTIFIED = "certified-modulo-minimality"
CONF_CONJECTURAL = "conjectural-christol-andre"
CONF_HEURISTIC = "heuristic"

STEP_MINIMAL = "minimal-operator"
STEP_NOT_FUCHSIAN = "not-fuchsian"
STEP_NONSPLITTING = "nonsplitting-indicial"
STEP_LOGARITHM = "logarithm-detected"
STEP_ALL_PASSED = "all-points-passed"
STEP_FACTOR_WITNESS = "factor-witness"


def _op_json(op: DiffOp) -> List[List[str]]:
    return [[rat_to_str(c) for c in p.coeffs] for p in op.coeffs]


def _point_json(point: SingularPoint):
    if point.kind == SingularPoint.RATIONAL:
        return {"kind": "rational", "value": rat_to_str(point.value)}
    if point.kind == SingularPoint.ALGEBRAIC:
        return {"kind": "algebraic",
                "modulus": [rat_to_str(c) for c in point.modulus.coeffs]}
    return {"kind": "infinity"}


def _point_from_json(obj) -> SingularPoint:
    from .rationals import rat_from_str

    if obj["kind"] == "rational":
        return SingularPoint.rational(rat_from_str(obj["value"]))
    if obj["kind"] == "algebraic":
        return SingularPoint.algebraic(Poly([rat_from_str(c) for c in obj["modulus"]]))
    return SingularPoint.infinity()


@dataclass
class CertificateStep:
    kind: str
    payload: Dict

    def to_json(self) -> Dict:
        out = {"kind": self.kind}
        out.update(self.payload)
        return out

    def display(self) -> str:
        p = self.payload
        if self.kind == STEP_NOT_FUCHSIAN:
            return "NotFuchsian(%s, deg %s < order %s)" % (
                p["point_label"], p["indicial_degree"], p["order"])
        if self.kind == STEP_NONSPLITTING:
            return "NonsplittingIndicial(%s, %s)" % (p["point_label"], p["indicial"])
        if self.kind == STEP_LOGARITHM:
            return "LogarithmDetected(%s, exponent %s)" % (
                p["point_label"], p.get("exponent", "?"))
        if self.kind == STEP_MINIMAL:
            return "MinimalOperator(order %s, %s)" % (p["order"], p["status"])
        if self.kind == STEP_FACTOR_WITNESS:
            return "FactorWitness(stage %s)" % p["stage"]
        return "AllPointsPassed"


@dataclass
class VerdictReport:
    verdict: str
    confidence: str
    certificate: List[CertificateStep]
    timings: Dict[str, float] = field(default_factory=dict)
    operator: Optional[DiffOp] = None

    def to_json(self) -> Dict:
        out = {
            "verdict": self.verdict,
            "confidence": self.confidence,
            "certificate": [s.to_json() for s in self.certificate],
            "certificate_display": [s.display() for s in self.certificate],
        }
        if self.operator is not None:
            out["minimal_operator"] = _op_json(self.operator)
        out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out


@dataclass
class TranscendOptions:
    minimize: MinimizeOptions = field(default_factory=MinimizeOptions)
    skip_minimization: bool = False
    crosscheck_globally_bounded: bool = False


def _indicial_display(data: IndicialData) -> str:
    try:
        return format_poly(data.monic_q_poly(), "x")
    except InputError:
        parts = []
        for j, e in enumerate(data.poly):
            parts.append("(%s)*x^%d" % (format_poly(Poly(e.coeffs), "a"), j))
        return " + ".join(parts)


def _integer_differences(roots: List[Tuple[object, int]]) -> List[int]:
    vals = [r for r, _ in roots]
    out = set()
    for a in vals:
        for b in vals:
            d = a - b
            if d > 0 and is_integer(d):
                out.add(int(d))
    return sorted(out)


def _scan_points(
    op: DiffOp,
    steps: List[CertificateStep],
    frobenius_at_origin_only: bool,
) -> Optional[CertificateStep]:
    """Run the local checks; returns the deciding step or None if all pass."""
    passed = []
    for point in singularities(op):
        for data in indicial_branches(op, point):
            label = data.point.label()
            if data.degree < op.order:
                return CertificateStep(STEP_NOT_FUCHSIAN, {
                    "point": _point_json(data.point),
                    "point_label": label,
                    "indicial_degree": data.degree,
                    "order": op.order,
                    "indicial": _indicial_display(data),
                })
            distinct = len(data.rational_roots)
            if distinct < data.degree:
                return CertificateStep(STEP_NONSPLITTING, {
                    "point": _point_json(data.point),
                    "point_label": label,
                    "indicial": _indicial_display(data),
                    "distinct_rational_roots": [
                        [rat_to_str(r), m] for r, m in data.rational_roots
                    ],
                    "degree": data.degree,
                })
            diffs = _integer_differences(data.rational_roots)
            run_frobenius = bool(diffs)
            if frobenius_at_origin_only:
                run_frobenius = run_frobenius and (
                    data.point.kind == SingularPoint.RATIONAL and data.point.value == 0
                )
            if run_frobenius:
                basis = formal_solutions(
                    op, data.point, max(diffs), mode="flag", branch=data.branch,
                )
                if basis.has_logarithms:
                    exponent, resonance = basis.obstructions[0]
                    return CertificateStep(STEP_LOGARITHM, {
                        "point": _point_json(data.point),
                        "point_label": label,
                        "exponent": rat_to_str(exponent),
                        "resonance": resonance,
                        "order_checked": max(diffs),
                    })
            passed.append(label)
    steps.append(CertificateStep(STEP_ALL_PASSED, {"points": passed}))
    return None


def _prepare(op: DiffOp, init: TruncSeries, opts: TranscendOptions, timings):
    if op.is_zero() or op.order == 0:
        raise InputError("operator must have positive order")
    ok, reason = validate_init(op, init)
    if not ok:
        raise InputError("initial terms do not pin down a solution: %s" % reason)
    t0 = time.perf_counter()
    if opts.skip_minimization:
        res = MinimizationResult(op, "input-returned", [], "not-searched")
    else:
        res = minimal_annihilator(op, init, opts.minimize)
    timings["minimization"] = time.perf_counter() - t0
    return res


def transcendence_test(
    op: DiffOp,
    init: TruncSeries,
    opts: Optional[TranscendOptions] = None,
) -> VerdictReport:
    """Transcendence test: T is proved (modulo heuristic minimality),
    FAIL is no conclusion."""
    opts = opts or TranscendOptions()
    timings: Dict[str, float] = {}
    res = _prepare(op, init, opts, timings)
    mop = res.operator
    steps = [CertificateStep(STEP_MINIMAL, {
        "order": mop.order,
        "status": res.status,
        "operator": _op_json(mop),
        "search_log": [list(t) for t in res.search_log],
        "minimality": res.minimality,
    })]
    t0 = time.perf_counter()
    deciding = _scan_points(mop, steps, frobenius_at_origin_only=False)
    timings["local_analysis"] = time.perf_counter() - t0
    if deciding is not None:
        steps.append(deciding)
        return VerdictReport(VERDICT_T, CONF_CERTIFIED, steps, timings, mop)
    return VerdictReport(VERDICT_FAIL, CONF_HEURISTIC, steps, timings, mop)


def globally_bounded_test(
    op: DiffOp,
    init: TruncSeries,
    opts: Optional[TranscendOptions] = None,
) -> VerdictReport:
    """Variant for globally bounded series (caller's assertion): the
    logarithm check runs only at the origin and a clean pass means
    algebraic, conditional on the semisimple-monodromy conjecture."""
    opts = opts or TranscendOptions()
    timings: Dict[str, float] = {}
    if opts.crosscheck_globally_bounded:
        from .heuristics import eisenstein_scan

        f = unroll(op, init, max(60, init.trunc_order))
        scan = eisenstein_scan(f)
        if scan.transcendence_evidence:
            raise InputError(
                "globally-bounded assertion vetoed: coefficient denominators "
                "keep acquiring new primes (e.g. %d)" % scan.primes[-1]
            )
    res = _prepare(op, init, opts, timings)
    mop = res.operator
    steps = [CertificateStep(STEP_MINIMAL, {
        "order": mop.order,
        "status": res.status,
        "operator": _op_json(mop),
        "search_log": [list(t) for t in res.search_log],
        "minimality": res.minimality,
    })]
    t0 = time.perf_counter()
    deciding = _scan_points(mop, steps, frobenius_at_origin_only=True)
    timings["local_analysis"] = time.perf_counter() - t0
    if deciding is not None:
        steps.append(deciding)
        return VerdictReport(VERDICT_T, CONF_CERTIFIED, steps, timings, mop)
    return VerdictReport(VERDICT_A, CONF_CONJECTURAL, steps, timings, mop)


def diagonal_grade_bound(mop: DiffOp) -> int:
    """Lower bound on the number of variables needed to realize the
    solution as a diagonal: multiplicity s+1 of the zero exponent at the
    origin gives the bound s+2; 0 when the origin carries no information."""
    if mop.is_zero():
        raise InputError("zero operator")
    for data in indicial_branches(mop, SingularPoint.rational(QQ(0))):
        mult = data.root_multiplicity(QQ(0))
        if mult >= 1:
            return mult + 1
    return 0


def iterated_factor_strategy(
    op: DiffOp,
    factors: Sequence[DiffOp],
    init: TruncSeries,
    no_algebraic_solutions: Sequence[bool],
) -> VerdictReport:
    """Transcendence via a supplied factorization op = A1 o A2 o ... o Ak.

    At each stage the tail product B is applied to f; a nonzero remainder
    g = B(f) is a nontrivial solution of the head factor A, so if the
    caller vouches that A has no nonzero algebraic solutions, f is
    transcendental.  A zero remainder recurses on B.  The verdict leans
    on the caller-supplied flags, hence the heuristic confidence.
    """
    factors = list(factors)
    flags = list(no_algebraic_solutions)
    if len(factors) != len(flags) or not factors:
        raise InputError("factors and flags must align and be nonempty")
    prod = factors[0]
    for fac in factors[1:]:
        prod = op_mul(prod, fac)
    if prod != op:
        raise InvalidFactorization("factor product does not reproduce the operator")
    timings: Dict[str, float] = {}
    steps: List[CertificateStep] = []
    t0 = time.perf_counter()
    current = list(range(len(factors)))
    while len(current) > 1:
        stage = len(factors) - len(current)
        head = factors[current[0]]
        tail = factors[current[1]]
        for idx in current[2:]:
            tail = op_mul(tail, factors[idx])
        need = max(
            indicial_bound(head) + tail.order + 4,
            tail.order + head.order + 4,
            init.trunc_order,
        )
        f = unroll(op, init, need + 8)
        g = apply_op(tail, f)
        try:
            g_is_zero = zero_test(head, g)
        except PrecisionTooLow as e:
            f = unroll(op, init, (e.needed or need) + tail.order + 8)
            g = apply_op(tail, f)
            g_is_zero = zero_test(head, g)
        if not g_is_zero:
            timings["factor_scan"] = time.perf_counter() - t0
            if flags[current[0]]:
                steps.append(CertificateStep(STEP_FACTOR_WITNESS, {
                    "stage": stage,
                    "head_order": head.order,
                    "remainder_nonzero": True,
                    "head_flagged_no_algebraic_solutions": True,
                }))
                return VerdictReport(VERDICT_T, CONF_HEURISTIC, steps, timings, op)
            steps.append(CertificateStep(STEP_ALL_PASSED, {
                "points": [], "reason": "head factor not flagged"}))
            return VerdictReport(VERDICT_FAIL, CONF_HEURISTIC, steps, timings, op)
        current = current[1:]
    timings["factor_scan"] = time.perf_counter() - t0
    steps.append(CertificateStep(STEP_ALL_PASSED, {
        "points": [], "reason": "solution exhausted the factorization"}))
    return VerdictReport(VERDICT_FAIL, CONF_HEURISTIC, steps, timings, op)


# ---------------------------------------------------------------------------
# Certificate replay
# ---------------------------------------------------------------------------


def verify_report(
    op: DiffOp,
    init: TruncSeries,
    report_json: Dict,
) -> Tuple[bool, str]:
    """Replay a report's certificate; (ok, reason).

    Local steps are recomputed with the local-analysis machinery on the
    reported minimal operator; the minimal-operator step is re-certified
    against the input operator by the annihilation certificate.
    """
    from .rationals import rat_from_str

    steps = report_json.get("certificate", [])
    if not steps or steps[0].get("kind") != STEP_MINIMAL:
        return False, "missing minimal-operator step"
    mop = DiffOp([Poly([rat_from_str(c) for c in p]) for p in steps[0]["operator"]])
    if mop.is_zero():
        return False, "empty minimal operator"
    if mop.order > op.order:
        return False, "minimal operator exceeds input order"
    if mop.order < op.order or mop != op:
        f = unroll(op, init, (op.order + 1) * (mop.degree() + op.degree() + 12))
        try:
            if not certify_annihilates(op, mop, f):
                return False, "reported operator does not annihilate the solution"
        except PrecisionTooLow as e:
            f = unroll(op, init, (e.needed or f.trunc_order) + mop.order + 8)
            if not certify_annihilates(op, mop, f):
                return False, "reported operator does not annihilate the solution"
    for step in steps[1:]:
        kind = step.get("kind")
        if kind == STEP_ALL_PASSED:
            continue
        if kind == STEP_FACTOR_WITNESS:
            return True, "factor witness accepted (caller-flagged)"
        point = _point_from_json(step["point"])
        branches = indicial_branches(mop, point)
        if kind == STEP_NOT_FUCHSIAN:
            if not any(b.degree < mop.order for b in branches):
                return False, "not-fuchsian step does not replay"
        elif kind == STEP_NONSPLITTING:
            if not any(len(b.rational_roots) < b.degree for b in branches):
                return False, "nonsplitting step does not replay"
        elif kind == STEP_LOGARITHM:
            replayed = False
            for b in branches:
                diffs = _integer_differences(b.rational_roots)
                if not diffs:
                    continue
                basis = formal_solutions(mop, b.point, max(diffs), mode="flag", branch=b.branch)
                if basis.has_logarithms:
                    replayed = True
                    break
            if not replayed:
                return False, "logarithm step does not replay"
        else:
            return False, "unknown step kind %r" % kind
    return True, "certificate replays"
