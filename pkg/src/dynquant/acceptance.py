"""Acceptance criteria, shared by the selftest command and the test suite.

Each criterion runs a list of timed cases.  A case passes when its report
passes and it finishes within its time limit; limits apply per case or to
the whole criterion, as stated in the criterion.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

from .reports import CheckReport

CaseFn = Callable[[], CheckReport]


@dataclass
class CaseResult:
    name: str
    ok: bool
    seconds: float
    limit: Optional[float]
    detail: str = ""


@dataclass
class CriterionResult:
    number: int
    title: str
    cases: List[CaseResult] = field(default_factory=list)
    total_limit: Optional[float] = None

    @property
    def seconds(self) -> float:
        return sum(c.seconds for c in self.cases)

    @property
    def ok(self) -> bool:
        within = self.total_limit is None or self.seconds < self.total_limit
        return within and all(c.ok for c in self.cases)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        limit = f" (limit {self.total_limit:g} s)" if self.total_limit else ""
        return f"[{status}] criterion {self.number:2d}: {self.title} [{self.seconds:.2f} s{limit}]"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "ok": self.ok, "seconds": round(self.seconds, 3),
                "limit": self.total_limit,
                "cases": [{"case": c.name, "ok": c.ok, "seconds": round(c.seconds, 3), "limit": c.limit,
                           "detail": c.detail} for c in self.cases]}


@dataclass
class Criterion:
    number: int
    title: str
    cases: List[Tuple[str, CaseFn, Optional[float]]]
    total_limit: Optional[float] = None

    def run(self) -> CriterionResult:
        result = CriterionResult(self.number, self.title, total_limit=self.total_limit)
        for name, fn, limit in self.cases:
            start = time.perf_counter()
            try:
                report = fn()
                ok, detail = report.ok, "" if report.ok else report.summary()
            except Exception as exc:  # a crash is a failed case, reported with its type
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            seconds = time.perf_counter() - start
            if limit is not None and seconds >= limit:
                ok = False
                detail = (detail + "; " if detail else "") + f"took {seconds:.2f} s, limit {limit:g} s"
            result.cases.append(CaseResult(name, ok, seconds, limit, detail))
        return result


# helpers

def _datum(name: str):
    from .rootdata import build_root_datum
    return build_root_datum(name)


def _irrep(n: int, mode: str = "classical"):
    from .repn import sl2_irrep
    return sl2_irrep(n, mode)


def _vector(mode: str = "classical"):
    from .repn import standard_rep
    return standard_rep(_datum("A2"), mode)


def _sl3_trivial():
    from .repn import trivial_rep
    return trivial_rep(_datum("A2"), "classical")


def _expected_sl2_A(mode: str):
    """A_s on the 2-dimensional sl2 module: v+ -> v-, v- -> -[λ+2]/[λ+1] v+."""
    from .linalg import RationalMatrix
    V = _irrep(2, mode)
    F = V.field
    num = F.qint(2, [1]) if mode == "quantum" else F.affine(2, [1])
    den = F.qint(1, [1]) if mode == "quantum" else F.affine(1, [1])
    return RationalMatrix(F, V.labels, V.labels, {(1, 0): F.one, (0, 1): -num / den})


def _weyl_case(mode: str) -> CheckReport:
    from .rootdata import WeylWord
    from .weyl import dynamical_weyl_A
    report = CheckReport(f"dynamical Weyl matrix, {mode} sl2")
    A = dynamical_weyl_A(WeylWord((1,)), _irrep(2, mode))
    report.compare("A_s on irrep(2)", A.matrix, _expected_sl2_A(mode))
    return report


# criteria

def _c1() -> CheckReport:
    from .cli import run
    from .linalg import RationalMatrix
    report = CheckReport("SL2 fusion matrix through the CLI")
    code, out = run(["fusion", "--type", "A1", "--mode", "quantum", "--reps", "irrep(2),irrep(2)"])
    report.add("exit status 0", code == 0, str(code))
    data = json.loads(out)
    V = _irrep(2, "quantum")
    F = V.field
    J = RationalMatrix.from_json(F, data["matrix"])
    entry = -F.qpow(-1, [-1]) / F.qint(1, [1])
    expected = RationalMatrix.identity(F, J.rows)
    expected.entries[(1, 2)] = entry
    report.compare("J(irrep(2), irrep(2))", J, expected)
    report.add("row v+⊗v-, column v-⊗v+", J.rows[1] == "v+⊗v-" and J.cols[2] == "v-⊗v+")
    return report


def _dybe(mode: str, dims: Tuple[int, int, int]) -> CaseFn:
    def case() -> CheckReport:
        from .rmatrix import dybe_check
        return dybe_check(*(_irrep(d, mode) for d in dims))
    return case


def _cocycle(reps_fn) -> CaseFn:
    def case() -> CheckReport:
        from .fusion import shifted_cocycle_check
        return shifted_cocycle_check(*reps_fn())
    return case


def _oracle(V_fn, W_fn) -> CaseFn:
    def case() -> CheckReport:
        from .fusion import conjugate_by_swap, fusion_matrix, fusion_via_intertwiners
        V, W = V_fn(), W_fn()
        report = CheckReport(f"oracle ({V.name}, {W.name}, {V.mode})")
        report.compare("J_{V,W} = τ J^EV_{W,V} τ", fusion_matrix(V, W),
                       conjugate_by_swap(fusion_via_intertwiners(W, V), V, W))
        return report
    return case


def _braid_case() -> CheckReport:
    from .weyl import zhelobenko_braid_check
    return zhelobenko_braid_check(_vector())


def _projector(V_fn, height: int = 4) -> CaseFn:
    def case() -> CheckReport:
        from .verma import truncated_verma, verify_projector
        V = V_fn()
        rep = verify_projector(V, truncated_verma(V.datum, V.mode, height))
        report = CheckReport(f"extremal projector on {V.name} ⊗ M, height {height}, {V.mode}")
        for name, ok, detail in rep.checks:
            report.add(name, ok, detail)
        return report
    return case


def _hc_case() -> CheckReport:
    from .rootdata import WeylWord
    from .verma import harish_chandra, sl2_casimir
    datum = _datum("A1")
    F = datum.field("classical")
    report = CheckReport("Harish-Chandra image of the sl2 Casimir")
    hc = harish_chandra(sl2_casimir(F), datum, "classical", N=4)
    lam = F.lam(0)
    report.add("hc(C) = λ(λ+2)/2 and C acts by hc(C) on the truncation", hc == lam * (lam + F(2)) / F(2), str(hc))
    report.add("invariant under λ -> -λ-2", datum.dot_substitute(WeylWord((1,)), hc) == hc)
    return report


def _ev_case() -> CheckReport:
    from .rootdata import WeylWord
    from .weyl import ev_compare, ev_normalized_A, multiplicativity_check
    V = _irrep(2, "quantum")
    A_ev, report = ev_compare(WeylWord((1,)), V)
    F = V.field
    A = _expected_sl2_A("quantum")
    report.add("A^EV = K_α^{-1} A", A_ev[(1, 0)] == F.qpow(1) and A_ev[(0, 1)] == A[(0, 1)] * F.qpow(-1))
    report.merge(multiplicativity_check(0, V, V, A_fn=ev_normalized_A), "A^EV")
    return report


def _mult(mode: str) -> CaseFn:
    def case() -> CheckReport:
        from .weyl import multiplicativity_check
        V = _irrep(2, mode)
        return multiplicativity_check(0, V, V)
    return case


def _scalar_properties(cases: int = 1000, seed: int = 7) -> CheckReport:
    from .rootdata import build_root_datum
    report = CheckReport("scalar field axioms and parse/print round trip")
    rng = random.Random(seed)
    fields = [build_root_datum(t).field(m) for t in ("A1", "A2") for m in ("classical", "quantum")]
    bad = {"axioms": 0, "round trip": 0}
    first = {}
    for k in range(cases):
        F = fields[k % len(fields)]
        a, b, c = (F.random(rng) for _ in range(3))
        ok = (a + b) * c == a * c + b * c and (a * b) * c == a * (b * c) and a + b == b + a and a - a == F.zero
        if not a.is_zero:
            ok &= a * (F.one / a) == F.one
        if not ok:
            bad["axioms"] += 1
            first.setdefault("axioms", str(a))
        if F.parse(F.format(a)) != a:
            bad["round trip"] += 1
            first.setdefault("round trip", F.format(a))
    for name, n in bad.items():
        report.add(f"{name} ({cases} cases)", n == 0, first.get(name, ""))
    return report


def _kostant_properties() -> CheckReport:
    from .verma import truncated_verma
    report = CheckReport("Verma weight spaces against Kostant partition counts")
    for t in ("A1", "A2", "B2", "G2"):
        datum = _datum(t)
        for mode in ("classical", "quantum"):
            M = truncated_verma(datum, mode, 4)
            betas = [b for b in itertools.product(range(5), repeat=datum.rank) if 0 < sum(b) <= 4]
            bad = [b for b in betas if len(M.basis_by_beta.get(b, [])) != datum.kostant_count(b)]
            report.add(f"{t} {mode} heights <= 4", not bad, str(bad))
    return report


def _relation_properties() -> CheckReport:
    from .repn import check_relations, dual, parse_rep_spec, tensor, trivial_rep
    report = CheckReport("representation relations for every constructor")
    for mode in ("classical", "quantum"):
        A1 = _datum("A1")
        reps = [_irrep(n, mode) for n in (1, 2, 3, 4)] + [trivial_rep(A1, mode), trivial_rep(_datum("A2"), mode),
                                                       _vector(mode), tensor(_irrep(2, mode), _irrep(3, mode)),
                                                       dual(_irrep(3, mode)), tensor(_vector(mode), _vector(mode)),
                                                       parse_rep_spec("dual(tensor(irrep(2),irrep(2)))", A1, mode)]
        for V in reps:
            rel = check_relations(V)
            report.add(f"{V.name} ({mode})", rel.ok, "" if rel.ok else str(rel.failures()[:1]))
    return report


def _braiding_properties() -> CheckReport:
    from .repn import tensor
    from .rmatrix import _is_module_map, braid_relation_check, braiding
    report = CheckReport("quantum sl2 braiding")
    reps = [_irrep(n, "quantum") for n in (1, 2, 3)]
    for V in reps:
        for W in reps:
            s = braiding(V, W, verify=False).matrix
            report.add(f"σ({V.name},{W.name}) is a module map", _is_module_map(s, tensor(V, W), tensor(W, V)) is None)
    for dims in ((2, 2, 2), (2, 3, 2), (3, 2, 2), (3, 3, 3)):
        report.merge(braid_relation_check(*(reps[d - 1] for d in dims)))
    return report


def _presentation(mode: str) -> CaseFn:
    def case() -> CheckReport:
        from .bialgebroid import check_dynamical_frt, comodule_check, emit_presentation, presentation_report
        V = _irrep(2, mode)
        pres = emit_presentation([V])
        report = CheckReport(f"presentation for {mode} sl2 irrep(2)")
        report.merge(check_dynamical_frt(pres, V, V))
        report.merge(comodule_check(pres, V))
        report.merge(presentation_report(pres, [V]))
        return report
    return case


def criteria() -> List[Criterion]:
    vec = _vector
    return [
        Criterion(1, "quantum sl2 fusion matrix", [("fusion quantum irrep(2) x irrep(2)", _c1, 5)]),
        Criterion(2, "classical sl2 dynamical Weyl matrix", [("A_s classical", lambda: _weyl_case("classical"), 5)]),
        Criterion(3, "quantum sl2 dynamical Weyl matrix", [("A_s quantum", lambda: _weyl_case("quantum"), 5)]),
        Criterion(4, "dynamical Yang-Baxter equation", [
            ("classical (2,2,2)", _dybe("classical", (2, 2, 2)), 60),
            ("classical (2,2,3)", _dybe("classical", (2, 2, 3)), 60),
            ("quantum (2,2,2)", _dybe("quantum", (2, 2, 2)), 60)]),
        Criterion(5, "shifted cocycle identity", [
            ("classical sl2 (2,2,2)", _cocycle(lambda: (_irrep(2),) * 3), None),
            ("classical sl3 vector^3", _cocycle(lambda: (vec(),) * 3), None),
            ("quantum sl2 (2,2,2)", _cocycle(lambda: (_irrep(2, "quantum"),) * 3), None)], total_limit=120),
        Criterion(6, "fusion oracle cross-validation", [
            ("classical sl2 (2,2)", _oracle(lambda: _irrep(2), lambda: _irrep(2)), None),
            ("classical sl2 (3,3)", _oracle(lambda: _irrep(3), lambda: _irrep(3)), None),
            ("classical sl2 (2,3)", _oracle(lambda: _irrep(2), lambda: _irrep(3)), None),
            ("classical sl3 vector", _oracle(vec, vec), None),
            ("quantum sl2 (2,2)", _oracle(lambda: _irrep(2, "quantum"), lambda: _irrep(2, "quantum")), None)],
            total_limit=120),
        Criterion(7, "Zhelobenko braid relation on the sl3 vector model", [("q1 q2 q1 = q2 q1 q2", _braid_case, 300)]),
        Criterion(8, "extremal projector", [
            ("sl2 irrep(2) classical", _projector(lambda: _irrep(2)), None),
            ("sl2 irrep(3) classical", _projector(lambda: _irrep(3)), None),
            ("sl2 irrep(2) quantum", _projector(lambda: _irrep(2, "quantum")), None),
            ("sl2 irrep(3) quantum", _projector(lambda: _irrep(3, "quantum")), None),
            ("sl3 vector classical", _projector(vec), None),
            ("sl3 trivial classical", _projector(_sl3_trivial), None)],
            total_limit=60),
        Criterion(9, "Harish-Chandra image of the Casimir", [("hc(C)", _hc_case, 5)]),
        Criterion(10, "EV normalization", [("quantum sl2 s", _ev_case, 5)]),
        Criterion(11, "multiplicativity of A", [
            ("classical (2,2)", _mult("classical"), 30), ("quantum (2,2)", _mult("quantum"), 30)]),
        Criterion(12, "property suites", [
            ("scalars", _scalar_properties, None), ("Kostant counts", _kostant_properties, None),
            ("representation relations", _relation_properties, None),
            ("quantum braiding", _braiding_properties, None)], total_limit=120),
        Criterion(13, "presentation consistency", [
            ("classical", _presentation("classical"), 30), ("quantum", _presentation("quantum"), 30)]),
    ]


def run_all(numbers: Optional[List[int]] = None, echo: Optional[Callable[[str], None]] = None) -> List[CriterionResult]:
    out = []
    for crit in criteria():
        if numbers and crit.number not in numbers:
            continue
        res = crit.run()
        if echo:
            echo(res.line())
            for c in res.cases:
                if not c.ok:
                    echo(f"      {c.name}: {c.detail}")
        out.append(res)
    return out
