import dataclasses

import pytest

from conftest import build
from linsys.generators import chat, cnn_cyclic, projective_plane
from linsys.solvers import Certificate, Kind, nu2_exact, tau_exact
from linsys.verify import (
    corpus_params,
    l4_members,
    lattice_members,
    random_corpus,
    standard_corpus,
    verify_cor42,
    verify_eq1,
    verify_lemma41,
    verify_lemmas_42_43,
    verify_props_31_32,
    verify_thm21,
    verify_thm32_minimality,
)


def small_tau(ls, budget):
    """A solver that claims a too-small transversal."""
    cert = tau_exact(ls, budget)
    return dataclasses.replace(cert, value=max(cert.value - 1, 0),
                               witness=cert.witness[1:])


def starved_nu2(ls, budget):
    return nu2_exact(ls, 0)


class TestCorpus:
    def test_params_ranges(self):
        for s in range(200):
            n, m, lo, hi = corpus_params(s)
            assert 8 <= n <= 14 and 6 <= m <= 12 and lo == 2 and hi in (3, 4)

    def test_ids_and_determinism(self):
        a = random_corpus(range(5))
        assert [i for i, _ in a] == [f"random-{s:04d}" for s in range(5)]
        assert a == random_corpus(range(5))
        assert [i for i, _ in standard_corpus(range(2))][:2] == ["c34", "pp3"]


class TestEq1:
    def test_passes_on_small_corpus(self):
        rep = verify_eq1(standard_corpus(range(30)))
        assert rep.passed and rep.status == "pass"
        assert rep.instances_checked + rep.skipped == 32
        assert all(d["status"] == "pass" for d in rep.details)

    def test_corrupted_certificate_is_caught(self):
        corpus = [("c34", cnn_cyclic(3))]
        rep = verify_eq1(corpus, tau_solver=small_tau)
        assert not rep.passed and rep.status == "fail"
        ce = rep.counterexample
        assert ce["instance_id"] == "c34"
        assert "does not verify" in ce["record"]["reason"]
        assert len(ce["instance"]["points"]) == 8

    def test_budget_is_inconclusive(self):
        rep = verify_eq1([("c34", cnn_cyclic(3))], nu2_solver=starved_nu2)
        assert rep.passed and rep.inconclusive == 1 and rep.status == "inconclusive"

    def test_all_lines_packed_is_skipped(self):
        rep = verify_eq1([("cycle", build(["ab", "bc", "cd", "da"]))])
        assert rep.skipped == 1 and rep.instances_checked == 0 and rep.passed


class TestThm21:
    def test_corpus(self):
        rep = verify_thm21(standard_corpus(range(30)))
        assert rep.passed
        assert all(d["status"] == "pass" for d in rep.details)

    def test_pencil_applies(self):
        rep = verify_thm21([("pencil", build(["cab", "cde", "cfg", "hi"]))])
        assert rep.passed and rep.instances_checked == 1

    def test_corrupted(self):
        rep = verify_thm21([("pencil", build(["cab", "cde", "cfg", "hi"]))], tau_solver=small_tau)
        assert not rep.passed


class TestFamily:
    def test_props(self):
        rep = verify_props_31_32([3, 5])
        assert rep.passed and rep.instances_checked == 2
        assert rep.details[0]["no_inner_transversal_of_size_n"] is True

    def test_even_order_is_an_error_not_a_failure(self):
        rep = verify_props_31_32([4], which=("tau",))
        assert rep.passed and rep.inconclusive == 1
        assert rep.details[0]["status"] == "error"
        assert "GroupNotNeutralSum" in rep.details[0]["reason"]
        assert rep.theorem_id == "prop31"

    def test_budget(self):
        rep = verify_props_31_32([5], which=("tau",), node_budget=5)
        assert rep.status == "inconclusive"

    def test_thm32(self):
        rep = verify_thm32_minimality([3, 5, 7])
        assert rep.passed and rep.instances_checked == 3
        for d in rep.details:
            assert d["num_lines"] == d["threshold"] + 1


class TestLattice:
    def test_members(self):
        members = lattice_members()
        assert len(members) == 64
        a = {m.instance_id for m in members if m.in_a}
        b = {m.instance_id for m in members if m.in_b}
        assert a == b and len(a) == 8
        for m in members:
            if m.in_b:
                assert m.system.num_points == 13

    def test_cor42(self):
        rep = verify_cor42()
        assert rep.passed
        s = rep.summary
        assert s["members"] == 64 and s["set_a"] == s["set_b"]
        assert s["plane_member"][0] in s["set_a"]
        assert s["chat_in_a"] is False and s["chat_in_b"] is False

    def test_lemmas_on_members(self):
        cands = l4_members()
        assert verify_lemma41(cands, r=4).passed
        rep = verify_lemmas_42_43(cands, r=4)
        assert rep.passed and rep.instances_checked == 8

    def test_lemmas_skip_non_members(self):
        cands = [("chat", chat()), ("c34", cnn_cyclic(3)), ("pp3", projective_plane(3))]
        rep = verify_lemma41(cands)
        assert rep.instances_checked == 1 and rep.skipped == 2 and rep.passed

    def test_to_dict_shape(self):
        d = verify_thm32_minimality(3).to_dict()
        assert set(d) == {"theorem_id", "status", "passed", "instances_checked", "inconclusive",
                          "skipped", "counterexample", "summary", "details"}
