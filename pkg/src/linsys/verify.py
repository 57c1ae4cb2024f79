"""Theorem harness: each claim becomes a predicate run over instances.

Every check returns a :class:`VerificationReport`.  Instances whose exact
solve runs out of budget are marked inconclusive and never count as
failures.  The first failing instance (by id) becomes the counterexample,
which carries the full instance so the failure can be replayed.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .core import LinearSystem, reduce_low_degree, stats
from .errors import BudgetExhausted, GroupError
from .generators import (
    chat,
    cnn,
    cnn_layout,
    enumerate_between,
    projective_plane,
    random_linear_system,
    example_c34,
)
from .groups import cyclic
from .solvers import (
    DEFAULT_BUDGET,
    Certificate,
    eq1_bounds,
    nu2_exact,
    tau_exact,
    thm21_hypothesis,
)

Corpus = Sequence[tuple[str, LinearSystem]]
Solver = Callable[[LinearSystem, int], Certificate]

PASS, FAIL, INCONCLUSIVE, ERROR = "pass", "fail", "inconclusive", "error"


@dataclass
class VerificationReport:
    theorem_id: str
    instances_checked: int = 0
    passed: bool = True
    counterexample: dict | None = None
    details: list[dict] = field(default_factory=list)
    inconclusive: int = 0
    skipped: int = 0
    summary: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        if not self.passed:
            return FAIL
        return INCONCLUSIVE if self.inconclusive else PASS

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "status": self.status,
            "passed": self.passed,
            "instances_checked": self.instances_checked,
            "inconclusive": self.inconclusive,
            "skipped": self.skipped,
            "counterexample": self.counterexample,
            "summary": self.summary,
            "details": self.details,
        }


def encode_instance(ls: LinearSystem) -> dict:
    pts, lines = ls.canonical_form()
    return {"points": pts, "lines": lines}


def _assemble(theorem_id: str, records: Iterable[tuple[str, LinearSystem, dict | None]],
              summary: dict | None = None) -> VerificationReport:
    """Build a report from ``(instance_id, system, record)``; ``None`` records are skipped."""
    report = VerificationReport(theorem_id, summary=dict(summary or {}))
    for inst_id, ls, rec in sorted(records, key=lambda r: r[0]):
        if rec is None:
            report.skipped += 1
            continue
        rec = {"instance": inst_id, **rec}
        report.details.append(rec)
        if rec["status"] in (INCONCLUSIVE, ERROR):
            report.inconclusive += 1
        elif rec["status"] == FAIL and report.counterexample is None:
            report.counterexample = {"instance_id": inst_id, "instance": encode_instance(ls),
                                     "record": rec}
    report.instances_checked = len(report.details)
    report.passed = report.counterexample is None
    return report


def _solve(ls: LinearSystem, solver: Solver, budget: int) -> tuple[Certificate | None, str | None]:
    """Run a solver; return (certificate, problem) where problem names what went wrong."""
    cert = solver(ls, budget)
    if not cert.verify(ls):
        return cert, "certificate does not verify"
    if not cert.optimal:
        return cert, "budget exhausted"
    return cert, None


def _solve_pair(ls, tau_solver, nu2_solver, budget):
    out = {}
    for name, solver in (("nu2", nu2_solver), ("tau", tau_solver)):
        cert, problem = _solve(ls, solver, budget)
        if problem == "certificate does not verify":
            return None, {"status": FAIL, "reason": f"{name} {problem}",
                          name: cert.value, f"{name}_witness": list(cert.witness)}
        if problem:
            return None, {"status": INCONCLUSIVE, "reason": f"{name} {problem}"}
        out[name] = cert
    return out, None


# -- corpora ------------------------------------------------------------------------

def corpus_params(seed: int) -> tuple[int, int, int, int]:
    """(points, lines, min_line, max_line) for a corpus seed: 8-14 points, 6-12 lines."""
    return 8 + seed % 7, 6 + (seed // 7) % 7, 2, 3 + seed % 2


def random_corpus(seeds: Iterable[int]) -> list[tuple[str, LinearSystem]]:
    return [(f"random-{s:04d}", random_linear_system(s, *corpus_params(s))) for s in seeds]


def standard_corpus(seeds: Iterable[int] = range(120)) -> list[tuple[str, LinearSystem]]:
    return [("c34", example_c34()), ("pp3", projective_plane(3))] + random_corpus(seeds)


# -- inequality (1) and the few-lines theorem -----------------------------------------

def verify_eq1(corpus: Corpus, tau_solver: Solver = tau_exact, nu2_solver: Solver = nu2_exact,
               node_budget: int = DEFAULT_BUDGET) -> VerificationReport:
    """ceil(nu2/2) <= tau <= nu2(nu2-1)/2 on every instance with more lines than nu2."""
    records = []
    for inst_id, ls in corpus:
        certs, bad = _solve_pair(ls, tau_solver, nu2_solver, node_budget)
        if bad:
            records.append((inst_id, ls, bad))
            continue
        tau, nu2 = certs["tau"].value, certs["nu2"].value
        if ls.num_lines <= nu2:
            records.append((inst_id, ls, None))
            continue
        lower, upper = eq1_bounds(nu2)
        ok = lower <= tau <= upper
        records.append((inst_id, ls, {
            "status": PASS if ok else FAIL, "tau": tau, "nu2": nu2,
            "lower": lower, "upper": upper, "num_lines": ls.num_lines,
        }))
    return _assemble("eq1", records)


def verify_thm21(corpus: Corpus, tau_solver: Solver = tau_exact, nu2_solver: Solver = nu2_exact,
                 node_budget: int = DEFAULT_BUDGET) -> VerificationReport:
    """tau <= nu2 - 1 whenever |L| > nu2 and |L| <= deg(p) + deg(q) + nu2 - 3."""
    records = []
    for inst_id, ls in corpus:
        if ls.num_points < 2:
            records.append((inst_id, ls, None))
            continue
        certs, bad = _solve_pair(ls, tau_solver, nu2_solver, node_budget)
        if bad:
            records.append((inst_id, ls, bad))
            continue
        tau, nu2 = certs["tau"].value, certs["nu2"].value
        hyp = thm21_hypothesis(ls, nu2=nu2)
        if ls.num_lines <= nu2 or not hyp.applies:
            records.append((inst_id, ls, None))
            continue
        ok = tau <= nu2 - 1
        records.append((inst_id, ls, {
            "status": PASS if ok else FAIL, "tau": tau, "nu2": nu2,
            "num_lines": ls.num_lines, "threshold": hyp.threshold,
            "tau_witness": [ls.points[x] for x in certs["tau"].witness],
        }))
    return _assemble("thm21", records)


# -- the C_{n,n+1} family ----------------------------------------------------------------

def _no_small_transversal_inside(ls: LinearSystem, n: int) -> bool:
    """No n points of Gamma x (Gamma minus e) meet every line (exhaustive)."""
    inner = range(n * (n - 1))
    masks = ls.masks
    for combo in itertools.combinations(inner, n):
        m = 0
        for x in combo:
            m |= 1 << x
        if all(line & m for line in masks):
            return False
    return True


def verify_props_31_32(n_list: Iterable[int], which: Sequence[str] = ("tau", "nu2"),
                       node_budget: int = DEFAULT_BUDGET, exhaustive_max_n: int = 5,
                       theorem_id: str | None = None) -> VerificationReport:
    """tau(C_{n,n+1}) = nu2(C_{n,n+1}) = n + 1, with the constructive witnesses."""
    records = []
    for n in n_list:
        inst_id = f"cnn-z{n:02d}"
        try:
            ls = cnn(cyclic(n))
        except GroupError as exc:
            records.append((inst_id, LinearSystem((), ()),
                            {"status": ERROR, "reason": f"{type(exc).__name__}: {exc}"}))
            continue
        lay = cnn_layout(n)
        rec = {"n": n}
        problems = []
        if "tau" in which:
            cert, problem = _solve(ls, tau_exact, node_budget)
            rec["tau"] = cert.value
            if problem:
                records.append((inst_id, ls, {**rec, "status": INCONCLUSIVE, "reason": problem}))
                continue
            if cert.value != n + 1:
                problems.append(f"tau = {cert.value}, expected {n + 1}")
            constructive = [min(ls.lines[j]) for j in lay.disjoint] + [lay.p, lay.q]
            if not ls.masks or not all(m & sum(1 << x for x in constructive) for m in ls.masks):
                problems.append("one point per disjoint line plus p, q is not a transversal")
            if n <= exhaustive_max_n:
                inside = _no_small_transversal_inside(ls, n)
                rec["no_inner_transversal_of_size_n"] = inside
                if not inside:
                    problems.append(f"a transversal of size {n} avoids p and q")
        if "nu2" in which:
            cert, problem = _solve(ls, nu2_exact, node_budget)
            rec["nu2"] = cert.value
            if problem:
                records.append((inst_id, ls, {**rec, "status": INCONCLUSIVE, "reason": problem}))
                continue
            if cert.value != n + 1:
                problems.append(f"nu2 = {cert.value}, expected {n + 1}")
            usage = [0] * ls.num_points
            for j in list(lay.disjoint) + list(lay.pencil_p)[:2]:
                for x in ls.lines[j]:
                    usage[x] += 1
            if max(usage) > 2:
                problems.append("disjoint lines plus two lines through p is not a 2-packing")
        if problems:
            rec.update(status=FAIL, reason="; ".join(problems))
        else:
            rec["status"] = PASS
        records.append((inst_id, ls, rec))
    if theorem_id is None:
        theorem_id = {("tau",): "prop31", ("nu2",): "prop32"}.get(tuple(which), "props31_32")
    return _assemble(theorem_id, records)


def verify_thm32_minimality(n_list: Iterable[int] | int,
                            node_budget: int = DEFAULT_BUDGET) -> VerificationReport:
    """|L| = 2*Delta + nu2 - 2 = deg(p) + deg(q) + nu2 - 2: one line above the threshold."""
    if isinstance(n_list, int):
        n_list = [n_list]
    records = []
    for n in n_list:
        inst_id = f"cnn-z{n:02d}"
        try:
            ls = cnn(cyclic(n))
        except GroupError as exc:
            records.append((inst_id, LinearSystem((), ()),
                            {"status": ERROR, "reason": f"{type(exc).__name__}: {exc}"}))
            continue
        cert, problem = _solve(ls, nu2_exact, node_budget)
        if problem:
            records.append((inst_id, ls, {"status": INCONCLUSIVE, "reason": problem}))
            continue
        nu2 = cert.value
        st = stats(ls)
        lay = cnn_layout(n)
        deg_p, deg_q = ls.degrees[lay.p], ls.degrees[lay.q]
        hyp = thm21_hypothesis(ls, nu2=nu2)
        ok = (ls.num_lines == 2 * st.max_degree + nu2 - 2 == deg_p + deg_q + nu2 - 2
              and not hyp.applies and ls.num_lines == hyp.threshold + 1)
        records.append((inst_id, ls, {
            "status": PASS if ok else FAIL, "n": n, "num_lines": ls.num_lines,
            "max_degree": st.max_degree, "deg_p": deg_p, "deg_q": deg_q, "nu2": nu2,
            "threshold": hyp.threshold,
        }))
    return _assemble("thm32", records)


# -- r-uniform intersecting systems with tau = nu2 = r --------------------------------------

def _membership(ls: LinearSystem, r: int | None, budget: int):
    """Return (r, None) for a member of L_r, (r, None-record) to skip, or (r, record)."""
    st = stats(ls)
    rank = st.rank if r is None else r
    if not st.is_intersecting or st.rank != rank or ls.num_lines == 0:
        return rank, "skip"
    for solver in (tau_exact, nu2_exact):
        cert, problem = _solve(ls, solver, budget)
        if problem:
            return rank, {"status": INCONCLUSIVE, "reason": problem}
        if cert.value != rank:
            return rank, "skip"
    return rank, None


def verify_lemma41(candidates: Corpus, r: int | None = None,
                   node_budget: int = DEFAULT_BUDGET) -> VerificationReport:
    """Members of L_r are r-uniform and every point on a line has degree >= 2."""
    records = []
    for inst_id, ls in candidates:
        rank, gate = _membership(ls, r, node_budget)
        if gate == "skip":
            records.append((inst_id, ls, None))
            continue
        if gate is not None:
            records.append((inst_id, ls, gate))
            continue
        sizes = sorted({len(l) for l in ls.lines})
        low = sorted({ls.points[x] for l in ls.lines for x in l if ls.degrees[x] < 2})
        reduced = reduce_low_degree(ls)
        ok = sizes == [rank] and not low and reduced.num_lines == ls.num_lines
        records.append((inst_id, ls, {
            "status": PASS if ok else FAIL, "r": rank, "line_sizes": sizes,
            "low_degree_points": low,
        }))
    return _assemble("lemma41", records)


def verify_lemmas_42_43(candidates: Corpus, r: int | None = None,
                        node_budget: int = DEFAULT_BUDGET) -> VerificationReport:
    """After reduction: <= 1 double point per line, Delta <= r, 3(r-1)+1 <= |L| <= r^2-r+1."""
    records = []
    for inst_id, ls in candidates:
        rank, gate = _membership(ls, r, node_budget)
        if gate == "skip":
            records.append((inst_id, ls, None))
            continue
        if gate is not None:
            records.append((inst_id, ls, gate))
            continue
        red = reduce_low_degree(ls)
        doubles = max((sum(1 for x in l if red.degrees[x] == 2) for l in red.lines), default=0)
        delta = max(red.degrees, default=0)
        lo, hi = 3 * (rank - 1) + 1, rank * rank - rank + 1
        ok = doubles <= 1 and delta <= rank and lo <= red.num_lines <= hi
        records.append((inst_id, ls, {
            "status": PASS if ok else FAIL, "r": rank, "max_double_points_per_line": doubles,
            "max_degree": delta, "num_lines": red.num_lines, "lower": lo, "upper": hi,
        }))
    return _assemble("lemmas4243", records)


# -- the lattice between the triangle-deleted plane and the plane of order 3 ---------------

@dataclass(frozen=True)
class LatticeMember:
    instance_id: str
    system: LinearSystem
    uniform4: bool
    intersecting: bool
    rank: int
    tau: int
    nu2: int

    @property
    def in_a(self) -> bool:
        return self.uniform4 and self.intersecting and self.nu2 == 4

    @property
    def in_b(self) -> bool:
        return self.intersecting and self.rank == 4 and self.tau == self.nu2 == 4


@lru_cache(maxsize=4)
def lattice_members(node_budget: int = DEFAULT_BUDGET) -> tuple[LatticeMember, ...]:
    """Every system between the triangle-deleted plane and the plane, solved exactly."""
    out = []
    for k, s in enumerate(enumerate_between(chat(), projective_plane(3))):
        st = stats(s)
        t = tau_exact(s, node_budget)
        v = nu2_exact(s, node_budget)
        if not (t.optimal and v.optimal):
            raise BudgetExhausted(f"lattice member {k} did not solve within budget")
        out.append(LatticeMember(f"member-{k:02d}", s, st.uniform_r == 4, st.is_intersecting,
                                 st.rank, t.value, v.value))
    return tuple(out)


def l4_members(node_budget: int = DEFAULT_BUDGET) -> list[tuple[str, LinearSystem]]:
    return [(m.instance_id, m.system) for m in lattice_members(node_budget) if m.in_b]


def verify_cor42(node_budget: int = DEFAULT_BUDGET) -> VerificationReport:
    """{4-uniform, intersecting, nu2 = 4} equals {intersecting, rank 4, tau = nu2 = 4}."""
    members = lattice_members(node_budget)
    plane_key = projective_plane(3).canonical_key()
    records = []
    for m in members:
        records.append((m.instance_id, m.system, {
            "status": PASS if m.in_a == m.in_b else FAIL,
            "points": m.system.num_points, "lines": m.system.num_lines,
            "tau": m.tau, "nu2": m.nu2, "in_a": m.in_a, "in_b": m.in_b,
        }))
    a = [m.instance_id for m in members if m.in_a]
    b = [m.instance_id for m in members if m.in_b]
    plane = [m.instance_id for m in members if m.system.canonical_key() == plane_key]
    chat_key = chat().canonical_key()
    chat_member = next(m for m in members if m.system.canonical_key() == chat_key)
    summary = {
        "members": len(members), "set_a": a, "set_b": b, "plane_member": plane,
        "chat_in_a": chat_member.in_a, "chat_in_b": chat_member.in_b,
    }
    report = _assemble("cor42", records, summary)
    if report.passed and not (plane and plane[0] in a and plane[0] in b):
        report.passed = False
        report.counterexample = {"instance_id": "pp3", "instance": encode_instance(projective_plane(3)),
                                 "record": {"reason": "plane of order 3 missing from A or B"}}
    return report
