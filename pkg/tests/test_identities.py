import json
from fractions import Fraction

from radialmasa.algebra import chi, inner_product, multiply, sandwich_project
from radialmasa.identities import (
    CheckReport,
    degree_pairs,
    fraction_str,
    pairing_closed,
    run_identity_sweep,
    sandwich_expansion_indices,
    sandwich_inner_closed,
    standard_test_vectors,
    sweep_tasks,
    run_sweep_task,
    verify_pairing_cases,
    verify_sandwich_expansion,
    verify_sandwich_inner,
)


def vec(rank, sign, idx=0):
    return standard_test_vectors(rank)[sign][idx]


def test_standard_vectors_satisfy_hypotheses():
    for rank in (2, 3):
        table = standard_test_vectors(rank)
        assert len(table[-1]) == 2
        # rank r has r-1 independent symmetric mean-zero vectors; rank 2 only one
        assert len(table[1]) == (1 if rank == 2 else 2)
        for sign, vs in table.items():
            for v in vs:
                assert v.sign == sign


def test_minus_vectors_independent():
    v1, v2 = standard_test_vectors(2)[-1]
    # disjoint supports, hence linearly independent
    assert set(v1.element.terms) & set(v2.element.terms) == set()


# ------------------------------------------------------- inner product closed form


def test_inner_closed_known_value():
    v = vec(2, -1)
    # brute force first: oracle value computed in the group algebra
    lhs = inner_product(sandwich_project(v.element, 1, 1), sandwich_project(v.element, 2, 0))
    assert lhs == 6
    assert sandwich_inner_closed(v, v, 1, 1, 2, 0) == 6


def test_inner_closed_sign_mismatch_is_zero():
    vm = vec(2, -1)
    vp = vec(2, 1)
    report = verify_sandwich_inner(vm, vp, 1, 1, 1, 1)
    assert report.passed
    assert report.lhs == "0/1"


def test_inner_closed_degree_mismatch_is_zero():
    v = vec(2, -1)
    report = verify_sandwich_inner(v, v, 2, 1, 1, 1)
    assert report.passed
    assert report.lhs == "0/1"


def test_inner_alternates_for_plus_sign():
    # sign +1 makes the geometric factor alternate: 3**(n+m) * (-3)**-|n-n2|
    v = vec(2, 1)
    brute = inner_product(
        sandwich_project(v.element, 1, 0), sandwich_project(v.element, 0, 1)
    )
    assert brute == -v.norm_sq()
    assert sandwich_inner_closed(v, v, 1, 0, 0, 1) == brute
    report = verify_sandwich_inner(v, v, 1, 0, 0, 1)
    assert report.passed


# ------------------------------------------------------- expansion


def test_expansion_trivial_case():
    v = vec(2, -1)
    report = verify_sandwich_expansion(v, 0, 0)
    assert report.passed


def test_expansion_indices_one_one():
    # chi_1 v chi_1 = v_{1,1} - sign * v  (all other components drop out)
    assert sorted(sandwich_expansion_indices(-1, 1, 1)) == sorted([(1, 1, 1), (1, 0, 0)])
    assert sorted(sandwich_expansion_indices(1, 1, 1)) == sorted([(1, 1, 1), (-1, 0, 0)])


def test_expansion_direct_small_cases():
    for rank in (2, 3):
        for sign in (-1, 1):
            v = vec(rank, sign)
            for n, m in [(1, 1), (3, 2), (0, 4)]:
                report = verify_sandwich_expansion(v, n, m)
                assert report.passed, report.params


# ------------------------------------------------------- six-case pairing


def test_pairing_case_values():
    norm = Fraction(2)
    assert pairing_closed(-1, 1, 1, norm) == 2
    assert pairing_closed(-1, 2, 2, norm) == 4
    assert pairing_closed(-1, 2, 1, norm) == 0
    assert pairing_closed(-1, 0, 0, norm) == 2
    assert pairing_closed(-1, 2, 0, norm) == -2
    assert pairing_closed(-1, 3, 1, norm) == -2
    assert pairing_closed(1, 1, 1, norm) == -2
    assert pairing_closed(1, 3, 3, norm) == -4
    assert pairing_closed(1, 4, 2, norm) == -2


def test_pairing_brute_force_matches():
    for rank in (2, 3):
        for sign in (-1, 1):
            v = vec(rank, sign)
            for n, m in [(0, 0), (1, 1), (2, 0), (2, 2), (2, 1), (3, 1), (4, 0)]:
                report = verify_pairing_cases(v, n, m)
                assert report.passed, report.params


def test_zero_cases_verified_not_assumed():
    # the "otherwise" rows of the case formula against brute force
    v = vec(2, -1)
    for n, m in [(1, 0), (0, 1), (2, 1), (3, 0), (4, 1), (5, 0)]:
        lhs = inner_product(
            multiply(multiply(chi(n, 2), v.element), chi(m, 2)), v.element
        )
        assert lhs == 0
        assert pairing_closed(-1, n, m, v.norm_sq()) == 0


# ------------------------------------------------------- sweeps and reports


def test_degree_pairs():
    pairs = degree_pairs(2)
    assert set(pairs) == {(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)}


def test_small_sweep_all_pass():
    reports = run_identity_sweep(2, max_total=3)
    assert reports
    assert all(r.passed for r in reports)


def test_sweep_tasks_cover_sweep():
    tasks = sweep_tasks(2, 3)
    from_tasks = [r for task in tasks for r in run_sweep_task(task)]
    direct = run_identity_sweep(2, max_total=3)
    assert len(from_tasks) == len(direct)
    key = lambda r: (r.lemma, json.dumps(r.params, sort_keys=True))
    assert sorted(map(key, from_tasks)) == sorted(map(key, direct))


def test_perturbed_sweep_fails():
    reports = run_identity_sweep(2, max_total=2, perturb=True)
    assert any(not r.passed for r in reports)


def test_report_serialization():
    report = CheckReport(
        lemma="pairing_cases",
        params={"rank": 2, "n": 1, "m": 1},
        lhs=fraction_str(Fraction(1, 3)),
        rhs=fraction_str(Fraction(1, 3)),
        passed=True,
        elapsed_ms=1.25,
    )
    blob = json.dumps(report.to_json_dict())
    parsed = json.loads(blob)
    assert parsed["pass"] is True
    assert parsed["lhs"] == "1/3"
    assert set(parsed) == {"lemma", "params", "lhs", "rhs", "pass", "elapsed_ms"}
