"""Catalog evaluation, chain reporting, implication checks."""

import math

import jsonschema
import numpy as np
import pytest

from numrad import (
    BOUND_REPORT_SCHEMA,
    EnsembleSpec,
    QuantityCache,
    canonical_nilpotent_pair,
    catalog_entry,
    catalog_list,
    check_implication,
    draw,
    evaluate,
    evaluate_entries,
    mu,
    op_norm,
    worked_example,
)

_NORM_2X2 = math.sqrt((19 + math.sqrt(325)) / 2)
_A2_2X2 = math.sqrt(59 + 10 * math.sqrt(34))
_RHS_MAIN_2X2 = 0.5 * (_NORM_2X2 + 3.0)
_RHS_KIT_2X2 = 0.5 * (_NORM_2X2 + math.sqrt(_A2_2X2))


def _pairs(seed, count, n=3):
    spec = EnsembleSpec("ginibre", n, seed=seed, params={"count": 2})
    return [draw(spec, t) for t in range(count)]


# --- catalog shape -------------------------------------------------------------


def test_catalog_contents_and_stability():
    entries = catalog_list()
    ids = [e.inequality_id for e in entries]
    assert len(ids) == len(set(ids))
    assert len(entries) >= 22
    assert catalog_entry("I-MAIN").arity == 1
    assert catalog_entry("I-MUXY").arity == 4 and catalog_entry("I-MUXY").signed
    assert catalog_entry("I-HD-BLOCK").arity == 4
    assert [e.inequality_id for e in catalog_list()] == ids
    assert all(e.statement for e in entries)


def test_unknown_id_and_arity_mismatch():
    with pytest.raises(ValueError, match="unknown inequality id"):
        evaluate("I-NOPE", (np.eye(2),))
    with pytest.raises(ValueError, match="expects 2 matrices"):
        evaluate("I-MU", (np.eye(2),))


def test_sign_suffix_parsing():
    A, B = canonical_nilpotent_pair()
    rep = evaluate("I-COMM-MU+", (A, B))
    assert rep.sign == "+"
    rep = evaluate("I-COMM-MU", (A, B), "-")
    assert rep.sign == "-"
    with pytest.raises(ValueError, match="conflicting"):
        evaluate("I-COMM-MU+", (A, B), "-")
    unsigned = evaluate("I-MAIN", (np.eye(2),))
    assert unsigned.sign == "n/a"


# --- mu -------------------------------------------------------------------------


def test_mu_known_values():
    assert abs(mu(np.eye(2), np.eye(2)) - 2.0) <= 1e-12
    A = worked_example("example2x2")
    assert abs(mu(A, np.zeros((2, 2))) - op_norm(A) ** 2) <= 1e-12
    expected = _NORM_2X2**2 + _A2_2X2
    assert abs(mu(A, A) - expected) <= 1e-9
    with pytest.raises(ValueError, match="dimension mismatch"):
        mu(np.eye(2), np.eye(3))


# --- worked-example evaluations ----------------------------------------------------


def test_evaluate_main_on_2x2_example():
    rep = evaluate("I-MAIN", (worked_example("example2x2"),))
    assert rep.applicable and rep.holds
    assert abs(rep.lhs - 3.5) <= 1e-6
    assert abs(rep.rhs - _RHS_MAIN_2X2) <= 1e-6
    assert abs(rep.slack - (_RHS_MAIN_2X2 - 3.5)) <= 1e-6
    assert abs(rep.details["r_abs_product"] - 9.0) <= 1e-9


def test_evaluate_kit03_on_2x2_example_is_looser():
    cache = QuantityCache((worked_example("example2x2"),))
    rep_main = evaluate("I-MAIN", cache.mats, cache=cache)
    rep_kit = evaluate("I-KIT03", cache.mats, cache=cache)
    assert abs(rep_kit.rhs - _RHS_KIT_2X2) <= 1e-6
    assert rep_main.rhs < rep_kit.rhs


def test_commutator_mu_equality_on_canonical_pair():
    A, B = canonical_nilpotent_pair()
    for sign in ("+", "-"):
        rep = evaluate("I-COMM-MU", (A, B), sign)
        assert abs(rep.lhs - 1.0) <= 1e-9
        assert abs(rep.rhs - 1.0) <= 1e-9
        assert rep.holds


# --- chains --------------------------------------------------------------------------


def test_chain_reports_carry_links_and_binding():
    A = draw(EnsembleSpec("ginibre", 3, seed=1), 0)
    rep = evaluate("I-BP-CHAIN", (A,))
    links = rep.details["links"]
    assert len(links) == 3
    # consecutive links compose: each rhs is the next link's lhs
    assert links[0]["rhs"] == links[1]["lhs"]
    assert links[1]["rhs"] == links[2]["lhs"]
    assert all(lk["slack"] >= -1e-8 * max(1.0, abs(lk["rhs"])) for lk in links)
    assert rep.details["binding_link"] in {lk["name"] for lk in links}
    assert rep.holds


def test_chain_binding_link_controls_holds():
    A = draw(EnsembleSpec("ginibre", 3, seed=2), 1)
    for iid in ("I-EQV", "I-KIT05", "I-MAIN-DOM"):
        rep = evaluate(iid, (A,))
        assert rep.holds
        norm_slacks = [
            lk["slack"] / max(1.0, abs(lk["rhs"])) for lk in rep.details["links"]
        ]
        bind = rep.details["links"][int(np.argmin(norm_slacks))]
        assert rep.lhs == bind["lhs"] and rep.rhs == bind["rhs"]


def test_prod_chain_links_compose():
    for t in range(5):
        A, B = draw(EnsembleSpec("intertwined_pair", 3, seed=3), t)
        rep = evaluate("I-PROD", (A, B))
        assert rep.applicable and rep.holds
        links = rep.details["links"]
        assert links[0]["rhs"] == links[1]["lhs"]


# --- preconditions ----------------------------------------------------------------------


def test_ksum_requires_psd():
    rep = evaluate("I-KSUM", (np.diag([1.0, -1.0]), np.eye(2)))
    assert not rep.applicable
    assert rep.lhs is None and rep.rhs is None and rep.slack is None
    assert "not PSD" in rep.details["reason"]
    G = draw(EnsembleSpec("hermitian_gauss", 3, seed=4, params={"psd": True, "count": 2}), 0)
    rep = evaluate("I-KSUM", G)
    assert rep.applicable and rep.holds


def test_intertwined_entries_report_residual_when_inapplicable():
    A, B = _pairs(5, 1)[0]
    for iid in ("I-GEN-FG", "I-PROD", "I-ALOMARI"):
        rep = evaluate(iid, (A, B))
        assert not rep.applicable
        assert rep.details["intertwine_residual"] > 0
        assert "intertwining" in rep.details["reason"]


# --- identity cross-checks ----------------------------------------------------------------


def test_gen_fg_at_half_matches_prod_first_link():
    for t in range(20):
        A, B = draw(EnsembleSpec("intertwined_pair", 3, seed=6), t)
        cache = QuantityCache((A, B))
        rep_fg = evaluate("I-GEN-FG", (A, B), params={"s": 0.5}, cache=cache)
        rep_prod = evaluate("I-PROD", (A, B), cache=cache)
        first = rep_prod.details["links"][0]
        assert abs(rep_fg.rhs - first["rhs"]) <= 1e-8 * max(1.0, abs(first["rhs"]))


def test_gen_fg_specific_exponents_hold():
    for t in range(10):
        A, B = draw(EnsembleSpec("intertwined_pair", 3, seed=7), t)
        for s in (0.25, 0.5, 0.75):
            rep = evaluate("I-GEN-FG", (A, B), params={"s": s})
            assert rep.applicable and rep.holds
            assert rep.details["s"] == s
    with pytest.raises(ValueError, match=r"\[0, 1\]"):
        evaluate("I-GEN-FG", (A, B), params={"s": 1.5})


def test_main_rhs_never_looser_than_kit03():
    for t in range(50):
        A = draw(EnsembleSpec("ginibre", 3, seed=8), t)
        cache = QuantityCache((A,))
        r_main = evaluate("I-MAIN", (A,), cache=cache)
        r_kit = evaluate("I-KIT03", (A,), cache=cache)
        assert r_main.rhs <= r_kit.rhs + 1e-8 * max(1.0, abs(r_kit.rhs))


def test_comm_a_refines_fh():
    for t, (A, B) in enumerate(_pairs(9, 40)):
        cache = QuantityCache((A, B))
        for sign in ("+", "-"):
            tight = evaluate("I-COMM-A", (A, B), sign, cache=cache)
            loose = evaluate("I-FH", (A, B), sign, cache=cache)
            assert tight.rhs <= loose.rhs + 1e-8 * max(1.0, abs(loose.rhs))


# --- quick zero-violation smoke (the full battery lives in the acceptance suite) -----------


@pytest.mark.parametrize("n", [2, 3])
def test_all_entries_hold_on_small_random_battery(n):
    unary = [e.inequality_id for e in catalog_list() if e.arity == 1]
    binary = [
        e.inequality_id
        for e in catalog_list()
        if e.arity == 2 and not catalog_entry(e.inequality_id).precondition
    ]
    quads = [e.inequality_id for e in catalog_list() if e.arity == 4]
    for t in range(15):
        A = draw(EnsembleSpec("ginibre", n, seed=10), t)
        for rep in evaluate_entries(unary, (A,)):
            assert rep.holds, (rep.inequality_id, rep.slack)
        mats = draw(EnsembleSpec("ginibre", n, seed=11, params={"count": 2}), t)
        for rep in evaluate_entries(binary, mats):
            assert rep.holds, (rep.inequality_id, rep.sign, rep.slack)
        mats = draw(EnsembleSpec("ginibre", n, seed=12, params={"count": 4}), t)
        for rep in evaluate_entries(quads, mats):
            assert rep.holds, (rep.inequality_id, rep.sign, rep.slack)


# --- implications ----------------------------------------------------------------------------


def test_implication_c22_on_nilpotent_rank1():
    A = draw(EnsembleSpec("nilpotent_rank1", 3, seed=13), 0)
    rep = check_implication("C2.2", (A,))
    assert rep.details["hypothesis_holds"]
    assert rep.details["conclusion_holds"]
    assert rep.holds


def test_implication_c22_converse_fails_on_3x3_example():
    rep = check_implication("C2.2", (worked_example("example3x3"),))
    assert not rep.details["hypothesis_holds"]
    assert rep.details["conclusion_holds"]
    assert rep.holds  # implication is vacuously true
    assert abs(rep.details["r_abs_product"] - 1.0) <= 1e-9


def test_implication_c24_converse_fails_on_3x3_example():
    rep = check_implication("C2.4", (worked_example("example3x3"),))
    assert not rep.details["hypothesis_holds"]
    assert rep.details["conclusion_holds"]
    assert rep.holds


def test_implication_c24_holds_on_normal_matrices():
    for t in range(5):
        N = draw(EnsembleSpec("normal", 3, seed=14), t)
        rep = check_implication("C2.4", (N,))
        assert rep.details["hypothesis_holds"]
        assert rep.details["conclusion_holds"]


def test_implication_c34_flags_are_consistent():
    for t, (A, B) in enumerate(_pairs(15, 5)):
        for sign in ("+", "-"):
            rep = check_implication("C3.4", (A, B), sign)
            assert rep.holds == ((not rep.details["hypothesis_holds"]) or rep.details["conclusion_holds"])
            assert rep.details["c_re"] >= 0 and rep.details["c_im"] >= 0


def test_implication_p25_scalar_block_and_zero_radius():
    A = draw(EnsembleSpec("alpha_oplus_B", 3, seed=16), 0)
    rep = check_implication("P2.5", (A,))
    assert rep.details["hypothesis_holds"]
    assert rep.details["condition_scalar_block"]
    assert rep.details["conclusion_holds"]
    N = draw(EnsembleSpec("nilpotent_rank1", 3, seed=17), 0)
    rep = check_implication("P2.5", (N,))
    assert rep.details["condition_zero_product_radius"]
    assert rep.details["conclusion_holds"]


def test_implication_unknown_id():
    with pytest.raises(ValueError, match="unknown implication id"):
        check_implication("C9.9", (np.eye(2),))


# --- report JSON ------------------------------------------------------------------------------


def test_bound_report_json_matches_schema():
    A = draw(EnsembleSpec("ginibre", 3, seed=18), 0)
    rep = evaluate("I-MAIN", (A,))
    obj = rep.to_json()
    jsonschema.validate(obj, BOUND_REPORT_SCHEMA)
    assert obj["holds"] is True
    assert obj["slack"] == obj["rhs"] - obj["lhs"]
    # inapplicable reports omit the numeric fields entirely
    na = evaluate("I-KSUM", (np.diag([1.0, -1.0]), np.eye(2)))
    obj = na.to_json()
    jsonschema.validate(obj, BOUND_REPORT_SCHEMA)
    assert "lhs" not in obj and "rhs" not in obj and "slack" not in obj and "holds" not in obj


def test_holds_flag_definition():
    A = draw(EnsembleSpec("ginibre", 2, seed=19), 0)
    rep = evaluate("I-EQV", (A,))
    assert rep.holds == (rep.slack >= -1e-8 * max(1.0, abs(rep.rhs)))
    assert rep.inputs_digest == evaluate("I-EQV", (A,)).inputs_digest
