"""The expansion engine: splits, primed generators, constraints, atlas."""

import pytest

from ckexpand.expand import (
    ATLAS,
    ExpansionError,
    InconsistentSystemError,
    build_J,
    CasimirSplit,
    derive_constraints,
    make_problem,
    run_atlas,
    run_expansion,
    verify_with_values,
)
from ckexpand.groebner import ParamPoly, groebner_basis, ideal_equals
from ckexpand.liealg import LieAlgebra, builtin_algebra, make_ck_algebra
from ckexpand.poly import parse_scalar
from ckexpand.uea import UEAElement, parse_element

AB = ("a1", "a2")


def pp(text):
    return ParamPoly.from_scalar(parse_scalar(text), AB)


def gens(g):
    return {lab: UEAElement.generator(g, lab) for lab in g.generators}


def scal(text):
    return parse_scalar(text)


# the four symbolic seeds: only the expanded coefficient stays a symbol in
# the target, everything already present in the seed is kept symbolic too
def axis1_problem():
    return make_problem(make_ck_algebra(0, "w2"), 1)


def nh_problem():
    return make_problem(make_ck_algebra("w1", 0), 2)


def galilei_problem():
    return make_problem(make_ck_algebra(0, 0, name="galilei"), 2)


def ext_problem():
    return make_problem("ext-galilei", 1)


# -- problem setup ----------------------------------------------------------


def test_make_problem_invariants():
    p = axis1_problem()
    assert p.omega_symbol == "w1"
    assert p.target.meta["w1"] == scal("w1")
    assert p.target.meta["w2"] == scal("w2")
    with pytest.raises(ExpansionError):
        make_problem("poincare", 3)
    with pytest.raises(ExpansionError):
        make_problem("poincare", 1, omega=0)  # nothing to expand
    with pytest.raises(ExpansionError):
        make_problem("poincare", 2)  # w2 is already nonzero
    with pytest.raises(ExpansionError):
        make_problem("ext-galilei", 2)


def test_numeric_omega_targets_the_right_cell():
    p = make_problem("poincare", 1, omega=-1)
    assert p.target.same_brackets(make_ck_algebra(-1, -1))
    p = make_problem("galilei", 2, omega=1)
    assert p.target.same_brackets(builtin_algebra("euclid3"))


# -- Casimir splitting --------------------------------------------------------


def test_axis1_split():
    report = run_expansion(axis1_problem())
    g = report.problem.initial
    assert report.splits[0].jpiece == parse_element(
        g, "K1^2 + K2^2 + w2 * J^2"
    )
    assert report.splits[1].jpiece.is_zero
    assert report.J == parse_element(g, "a1 * K1^2 + a1 * K2^2 + a1*w2 * J^2")


def test_nh_split_uses_both_casimirs():
    report = run_expansion(nh_problem())
    g = report.problem.initial
    assert report.splits[0].jpiece == parse_element(g, "H^2 + w1 * J^2")
    assert report.splits[1].jpiece == parse_element(g, "H J")


def test_galilei_split():
    report = run_expansion(galilei_problem())
    g = report.problem.initial
    assert report.splits[0].jpiece == parse_element(g, "H^2")
    assert report.splits[1].jpiece == parse_element(g, "H J")


def test_ext_galilei_split():
    report = run_expansion(ext_problem())
    g = report.problem.initial
    assert report.splits[0].jpiece == parse_element(g, "K1^2 + K2^2")
    assert report.splits[1].jpiece.is_zero


def test_build_J_requires_a_nonzero_piece():
    g = make_ck_algebra(0, "w2")
    zero = CasimirSplit(1, UEAElement.zero(g), UEAElement.zero(g))
    with pytest.raises(ExpansionError):
        build_J((zero, zero))


# -- primed generators (frozen from the worked examples) -----------------------
#
# The expected elements are written as ordered products, exactly as the
# method defines them, and multiplied out independently of the
# commutator pipeline that produces report.primed.


def test_axis1_primed_generators():
    report = run_expansion(axis1_problem())
    x = gens(report.problem.initial)
    a1, w2 = scal("a1"), scal("w2")
    assert report.primed["K1"] == x["K1"]
    assert report.primed["K2"] == x["K2"]
    assert report.primed["J"] == x["J"]
    assert report.primed["H"] == (
        x["K1"] * x["P1"] + x["K2"] * x["P2"] + x["H"].scale(w2)
    ).scale(2 * a1)
    assert report.primed["P1"] == (
        x["J"] * x["P2"] - x["K1"] * x["H"] + x["P1"]
    ).scale(2 * w2 * a1)
    assert report.primed["P2"] == (
        -(x["J"] * x["P1"]) - x["K2"] * x["H"] + x["P2"]
    ).scale(2 * w2 * a1)


def test_nh_primed_generators():
    report = run_expansion(nh_problem())
    x = gens(report.problem.initial)
    a1, a2, w1 = scal("a1"), scal("a2"), scal("w1")
    assert report.primed["H"] == x["H"]
    assert report.primed["J"] == x["J"]
    assert report.primed["P1"] == (
        (x["K1"] * x["H"] + x["J"] * x["P2"]).scale(2 * w1 * a1)
        + (x["P2"] * x["H"] + (x["J"] * x["K1"]).scale(w1)).scale(a2)
    )
    assert report.primed["P2"] == (
        (x["K2"] * x["H"] - x["J"] * x["P1"]).scale(2 * w1 * a1)
        + (-(x["P1"] * x["H"]) + (x["J"] * x["K2"]).scale(w1)).scale(a2)
    )
    assert report.primed["K1"] == (
        (-(x["P1"] * x["H"]) + (x["J"] * x["K2"]).scale(w1)).scale(2 * a1)
        + (x["K2"] * x["H"] - x["J"] * x["P1"]).scale(a2)
    )
    assert report.primed["K2"] == (
        (-(x["P2"] * x["H"]) - (x["J"] * x["K1"]).scale(w1)).scale(2 * a1)
        + (-(x["K1"] * x["H"]) - x["J"] * x["P2"]).scale(a2)
    )


def test_galilei_primed_generators():
    report = run_expansion(galilei_problem())
    x = gens(report.problem.initial)
    a1, a2 = scal("a1"), scal("a2")
    assert report.primed["H"] == x["H"]
    assert report.primed["J"] == x["J"]
    assert report.primed["P1"] == (x["P2"] * x["H"]).scale(a2)
    assert report.primed["P2"] == -(x["P1"] * x["H"]).scale(a2)
    assert report.primed["K1"] == (
        -(x["P1"] * x["H"]).scale(2 * a1)
        + (x["K2"] * x["H"] - x["J"] * x["P1"]).scale(a2)
    )
    assert report.primed["K2"] == (
        -(x["P2"] * x["H"]).scale(2 * a1)
        - (x["K1"] * x["H"] + x["J"] * x["P2"]).scale(a2)
    )


def test_ext_galilei_primed_generators():
    report = run_expansion(ext_problem())
    x = gens(report.problem.initial)
    a1, m = scal("a1"), scal("m")
    for lab in ("K1", "K2", "J", "Xi"):
        assert report.primed[lab] == x[lab]
    assert report.primed["H"] == (
        x["K1"] * x["P1"] + x["K2"] * x["P2"]
        + UEAElement.one(report.problem.initial).scale(m) * x["Xi"]
    ).scale(2 * a1)
    assert report.primed["P1"] == -(x["Xi"] * x["K1"]).scale(2 * a1 * m)
    assert report.primed["P2"] == -(x["Xi"] * x["K2"]).scale(2 * a1 * m)


# -- constraint ideals ------------------------------------------------------


def test_axis1_constraint_is_the_principal_ideal():
    report = run_expansion(axis1_problem())
    assert report.verdict == "pass"
    expected = pp("4*w2*c1*a1^2 + w1")
    assert len(report.constraints.generators) == 1
    assert report.constraints.generators[0].proportional_to(expected)
    assert ideal_equals(report.constraints, groebner_basis([expected], AB))
    # all three bracket pairs that produce equations give the same one
    producing = {
        pair: eqs for pair, eqs in report.per_pair.items() if eqs
    }
    assert set(producing) == {"[H,P1]", "[H,P2]", "[P1,P2]"}
    for eqs in producing.values():
        assert len(eqs) == 1
        assert eqs[0].proportional_to(expected)


def test_nh_constraints_are_the_two_quadratics():
    report = run_expansion(nh_problem())
    assert report.verdict == "pass"
    q1 = pp("4*w1*c1*a1^2 + c1*a2^2 + 8*w1*c2*a1*a2 + w2")
    q2 = pp("4*w1*c2*a1^2 + c2*a2^2 + 2*c1*a1*a2")
    assert ideal_equals(report.constraints, groebner_basis([q1, q2], AB))
    # the two skew bracket pairs impose nothing
    assert report.per_pair["[P1,K2]"] == []
    assert report.per_pair["[P2,K1]"] == []


def test_galilei_constraints_involve_both_eigenvalues():
    report = run_expansion(galilei_problem())
    assert report.verdict == "pass"
    expected = groebner_basis([pp("c1*a2^2 + w2"), pp("2*c1*a1 + c2*a2")], AB)
    assert ideal_equals(report.constraints, expected)
    seen = "".join(
        str(eq) for eqs in report.per_pair.values() for eq in eqs
    )
    assert "c1" in seen and "c2" in seen


def test_ext_galilei_constraint_and_central_violations():
    report = run_expansion(ext_problem())
    assert report.verdict == "pass"
    assert not report.hypothesis.holds
    assert report.hypothesis.violations_central_only
    expected = pp("4*m^2*xi^2*a1^2 + w1")
    assert len(report.constraints.generators) == 1
    assert report.constraints.generators[0].proportional_to(expected)
    by_pair = {b.pair: b for b in report.brackets}
    assert by_pair["[P1,P2]"].mode == "exact" and by_pair["[P1,P2]"].ok
    assert by_pair["[H,P1]"].mode == "reduced" and by_pair["[H,P1]"].ok


def test_inconsistent_target_is_detected():
    problem = make_problem("euclid3", 1)
    report = run_expansion(problem)
    # tamper with the target: send [H,P1] to the wrong boost component
    g = problem.target
    bad = dict(g.brackets)
    i, j = g.index("H"), g.index("P1")
    bad[(i, j)] = {g.index("K2"): scal("w1")}
    problem.target = LieAlgebra(g.name, g.generators, bad, meta=g.meta)
    with pytest.raises(InconsistentSystemError):
        derive_constraints(problem, report.primed)


def test_degree_bound_too_small():
    from ckexpand.uea import BoundExceededError

    with pytest.raises(BoundExceededError):
        run_expansion(make_problem("poincare", 1), degree_bound=0)


# -- the shortcut theorem and the negative control -----------------------------


def test_shortcut_classes_are_exact_on_every_passing_arrow():
    for report in run_atlas():
        if report.hypothesis is None or not report.hypothesis.holds:
            continue
        for verdict in report.brackets:
            if verdict.klass in ("kk", "kt"):
                assert verdict.mode == "exact", (
                    report.problem.name,
                    verdict.pair,
                )


def test_negative_control_closes_but_is_no_ck_cell():
    problem = make_problem("galilei", 1, expected_failure=True)
    report = run_expansion(problem)
    assert report.verdict == "closes-but-not-ck"
    assert report.ok
    # the hypothesis fails non-centrally: [K_i, H] = P_i leaks into k
    assert not report.hypothesis.holds
    assert not report.hypothesis.violations_central_only
    leaked = {bad for _, _, bads in report.hypothesis.violations for bad in bads}
    assert leaked == {"P1", "P2"}
    assert report.closure.closes
    assert report.closure.matches_cell is None
    # H' became central, which no cell of the family allows
    assert not any("H" in key for key in report.closure.table)


# -- atlas ----------------------------------------------------------------------


def test_atlas_composition():
    assert len(ATLAS) == 13
    assert sum(1 for entry in ATLAS if entry[4]) == 1
    reports = run_atlas()
    assert all(r.ok for r in reports)
    assert sum(r.verdict == "pass" for r in reports) == 12
    assert all(r.order_independent for r in reports if r.per_pair is not None)
    # targets land on the advertised cells
    by_name = {r.problem.name: r for r in reports}
    assert by_name["iso(2,1)->so(3,1)"].problem.target.same_brackets(
        make_ck_algebra(-1, -1)
    )


def test_report_json_is_deterministic_and_stringly():
    import json

    a = run_expansion(make_problem("poincare", 1)).to_json_dict()
    b = run_expansion(make_problem("poincare", 1)).to_json_dict()
    assert json.dumps(a) == json.dumps(b)
    assert a["verdict"] == "pass"
    assert a["constraints"]["raw"] == ["4*c1*a1^2 - w1"]
    assert a["decomposition"] == {"k": ["K1", "K2", "J"], "t": ["H", "P1", "P2"]}


def test_verify_with_numeric_values():
    # galilei -> poincare with c1 = 1, c2 = 0 solves the constraints over
    # the rationals: a2^2 = -w2/c1 = 1, a1 = -c2*a2/(2*c1) = 0
    problem = make_problem("galilei", 2, omega=-1)
    report = run_expansion(problem)
    good = verify_with_values(
        report, {"a1": 0, "a2": 1, "c1": 1, "c2": 0}
    )
    assert all(ok for _, ok, _ in good)
    bad = verify_with_values(
        report, {"a1": 1, "a2": 1, "c1": 1, "c2": 0}
    )
    assert not all(ok for _, ok, _ in bad)
