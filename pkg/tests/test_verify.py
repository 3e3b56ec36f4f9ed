import random
from fractions import Fraction

import pytest

from braidhopf import (CHECK_IDS, HermitianMatrix, Scalar, parse_presentation,
                       psd_exact, run_catalog)
from braidhopf.verify import fixture_path

from oracles import psd_by_minors


def load(name):
    return parse_presentation(fixture_path(name).read_text())


S0, S1 = Scalar(0), Scalar(1)


def check_against_minors(rows):
    G = HermitianMatrix(rows)
    verdict, wit = psd_exact(G)
    assert (verdict == "psd") == psd_by_minors(G.entries)
    if verdict == "psd":
        assert wit is None
    else:
        q = G.quadratic_form(wit)
        assert not q.im
        assert q.re < 0
    return verdict


# -- exact positive semidefiniteness ---------------------------------------


def test_psd_all_one_by_one():
    for a in range(-2, 3):
        v = check_against_minors([[Scalar(a)]])
        assert v == ("psd" if a >= 0 else "not-psd")


def test_psd_all_small_two_by_two():
    rng = [Scalar(k) for k in range(-2, 3)]
    ims = [Scalar(0, k) for k in (-1, 0, 1)]
    for a in rng:
        for d in rng:
            for br in rng:
                for bi in ims:
                    b = br + bi
                    check_against_minors([[a, b], [b.conj(), d]])


def random_hermitian(rng, n):
    rows = [[S0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = Scalar(Fraction(rng.randint(-4, 8), rng.randint(1, 3)))
        for j in range(i + 1, n):
            b = Scalar(Fraction(rng.randint(-3, 3), rng.randint(1, 2)),
                       Fraction(rng.randint(-2, 2)))
            rows[i][j] = b
            rows[j][i] = b.conj()
    return rows


def random_gram(rng, n):
    # B* B is positive semidefinite by construction
    b = [[Scalar(rng.randint(-2, 2), rng.randint(-1, 1)) for _ in range(n)]
         for _ in range(n)]
    rows = [[S0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = S0
            for k in range(n):
                acc = acc + b[k][i].conj() * b[k][j]
            rows[i][j] = acc
    return rows


def test_psd_random_three_and_four_by_four():
    rng = random.Random(20260823)
    for n in (3, 4):
        for _ in range(40):
            check_against_minors(random_hermitian(rng, n))
        for _ in range(15):
            assert check_against_minors(random_gram(rng, n)) == "psd"


def test_psd_spot_values():
    assert psd_exact(HermitianMatrix([[S1, S0], [S0, S0]])) == ("psd", None)
    assert psd_exact(HermitianMatrix([])) == ("psd", None)
    v, wit = psd_exact(HermitianMatrix([[Scalar(-1)]]))
    assert v == "not-psd" and wit == (S1,)
    # zero pivot with a nonzero off-diagonal entry can never be psd
    v, wit = psd_exact(HermitianMatrix([[S0, S1], [S1, S0]]))
    assert v == "not-psd"
    G = HermitianMatrix([[S0, S1], [S1, S0]])
    assert G.quadratic_form(wit).re < 0


def test_hermitian_matrix_validation():
    with pytest.raises(ValueError):
        HermitianMatrix([[S1, S0]])
    with pytest.raises(ValueError):
        HermitianMatrix([[S1, S1], [Scalar(2), S1]])
    with pytest.raises(ValueError):
        HermitianMatrix([[Scalar(0, 1)]])         # imaginary diagonal
    with pytest.raises(TypeError):
        HermitianMatrix([[0.5]])
    G = HermitianMatrix([[Scalar(2)]])
    assert G.quadratic_form((Scalar(1, 1),)) == Scalar(4)
    assert G.size == 1
    assert G[0, 0] == Scalar(2)


# -- the check catalog -----------------------------------------------------


def as_tuples(reports):
    return [(r.id, r.status, r.degree, r.witness) for r in reports]


def test_catalog_is_deterministic():
    pres = load("car.alg")
    assert as_tuples(run_catalog(pres, max_degree=2)) == \
        as_tuples(run_catalog(pres, max_degree=2))


def test_catalog_rejects_unknown_ids():
    with pytest.raises(ValueError, match="nosuch"):
        run_catalog(load("car.alg"), ids=["confluence", "nosuch"])


def test_catalog_selection_keeps_order():
    reps = run_catalog(load("car.alg"), ids=["coassoc", "confluence"],
                       max_degree=2)
    assert [r.id for r in reps] == ["confluence", "coassoc"]
    assert all(r.ok() for r in reps)


def test_unselected_prerequisites_count_as_satisfied():
    reps = run_catalog(load("car.alg"), ids=["assoc-mul"], max_degree=2)
    assert as_tuples(reps) == [("assoc-mul", "pass", 2, None)]


def test_report_to_dict_shape():
    rep = run_catalog(load("car.alg"), ids=["assoc-mul"], max_degree=2)[0]
    assert rep.to_dict() == {"id": "assoc-mul", "status": "pass",
                             "degree": 2}
    # the witness key only appears when there is one
    bad = run_catalog(load("car-badL.alg"), ids=["cocycle"], max_degree=3)[0]
    assert set(bad.to_dict()) == {"id", "status", "degree", "witness"}


def test_full_catalog_passes_on_the_fermion_algebra():
    reps = run_catalog(load("car.alg"), max_degree=3)
    assert [r.id for r in reps] == list(CHECK_IDS)
    assert all(r.status == "pass" for r in reps)


def test_full_catalog_passes_on_the_free_algebra():
    reps = run_catalog(load("free2.alg"), max_degree=2)
    assert all(r.status == "pass" for r in reps)


def test_negative_generator_passes_the_algebraic_catalog():
    # positivity lives in the Schoenberg layer, not here
    reps = run_catalog(load("car-negL.alg"), max_degree=2)
    assert all(r.status == "pass" for r in reps)


def test_bad_generator_fails_exactly_the_cocycle_check():
    reps = run_catalog(load("car-badL.alg"), max_degree=3)
    by_status = {}
    for r in reps:
        by_status.setdefault(r.status, []).append(r.id)
    assert by_status["fail"] == ["cocycle"]
    assert by_status["skipped"] == [
        "nilpotency", "delta-mu-t", "mu-t-assoc", "mu-t-assoc-eq3",
        "deformation-law", "star-deformation", "expL-semigroup",
        "expL-hermitian", "primitive-formula", "sigma-two-sided",
        "ft-agreement", "ft-commute", "antipode-deformed", "st-unit",
        "st-mu", "st-comul", "st-inverse", "st-star", "sesqui-conv",
        "sesqui-hermitian"]
    fail = next(r for r in reps if r.status == "fail")
    assert fail.witness == {"input": "x (x) x (x) xs xs",
                            "lhs": "1", "rhs": "0"}
    skipped = next(r for r in reps if r.status == "skipped")
    assert skipped.witness == {"reason": "requires cocycle"}


def test_wrong_sign_relation_fails_quotient_compatibility():
    reps = run_catalog(load("car-wrongsign.alg"), max_degree=3)
    statuses = [r.status for r in reps]
    assert statuses.count("pass") == 1 and reps[0].id == "confluence"
    fail = next(r for r in reps if r.status == "fail")
    assert fail.id == "quotient-compat"
    assert fail.witness["subcheck"] == "a"
    assert fail.witness["input"] == "xs x"
    assert statuses.count("skipped") == len(CHECK_IDS) - 2


def test_q_deformed_plane_fails_only_cocommutativity():
    reps = run_catalog(load("q2.alg"), max_degree=3)
    by_status = {}
    for r in reps:
        by_status.setdefault(r.status, []).append(r.id)
    assert by_status["fail"] == ["cocommutative"]
    assert by_status["skipped"] == ["antipode-squared", "st-inverse"]
    fail = next(r for r in reps if r.status == "fail")
    assert fail.witness == {
        "input": "x x",
        "lhs": "1 (x) x x + 6 (x (x) x) + x x (x) 1",
        "rhs": "1 (x) x x + 3 (x (x) x) + x x (x) 1"}
