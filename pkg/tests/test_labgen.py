import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lcplab import labgen
from lcplab.hiddenz import verify_certificate
from lcplab.labgen import (KINDS, SCHEMA, GenSpec, TrialResult, UnknownTheoremError, generate,
                           run_suite, run_trial, trial_seed)
from lcplab.matclass import is_type_d, is_z_matrix, minor_profile
from lcplab.ratmat import RatMatrix, det


def test_spec_validation():
    for bad in (dict(kind="Q", n=2, seed=0), dict(kind="K", n=0, seed=0),
                dict(kind="K", n=2, seed=0, entry_bound=0)):
        with pytest.raises(ValueError):
            GenSpec(**bad)


@given(st.sampled_from(KINDS), st.integers(1, 4), st.integers(0, 2 ** 64 - 1))
def test_generation_is_deterministic(kind, n, seed):
    a, b = generate(GenSpec(kind, n, seed)), generate(GenSpec(kind, n, seed))
    assert a == b and a.A.shape == (n, n)


@given(st.integers(1, 5), st.integers(0, 2 ** 32))
def test_k_draws_are_k_matrices(n, seed):
    A = generate(GenSpec("K", n, seed)).A
    assert is_z_matrix(A) and minor_profile(A).is_P


@given(st.sampled_from(["HiddenZ", "HiddenZWeak", "SingularHiddenZ", "TypeD"]),
       st.integers(1, 4), st.integers(0, 2 ** 32))
def test_emitted_certificates_verify(kind, n, seed):
    g = generate(GenSpec(kind, n, seed))
    assert verify_certificate(g.A, g.certificate)
    if kind == "HiddenZ":
        assert all(v == 0 for v in g.certificate.r)
    if kind == "SingularHiddenZ":
        assert det(g.A) == 0


@given(st.integers(1, 4), st.integers(0, 2 ** 32), st.sampled_from(["Z", "P", "Singular"]))
def test_other_kinds(n, seed, kind):
    A = generate(GenSpec(kind, n, seed)).A
    if kind == "Z":
        assert is_z_matrix(A)
    elif kind == "P":
        assert minor_profile(A).is_P
    else:
        assert det(A) == 0


@given(st.integers(1, 5), st.integers(0, 2 ** 32))
def test_type_d_pattern(n, seed):
    A = generate(GenSpec("TypeD", n, seed)).A
    res = is_type_d(A)
    assert res and res.profile.positive
    alphas = res.profile.alphas
    assert all(A[i, j] == alphas[min(i, j)] for i in range(n) for j in range(n))


def test_type_d_fill_example():
    A = RatMatrix([[1, 1, 1], [1, 2, 2], [1, 2, 3]])
    assert is_type_d(A).profile.alphas == (1, 2, 3)


def test_trial_seeds_are_stable_and_distinct():
    assert trial_seed("T3.4", 0, 0) == trial_seed("T3.4", 0, 0)
    seeds = {trial_seed("T3.4", 0, i) for i in range(1000)}
    assert len(seeds) == 1000 and all(0 <= s < 2 ** 64 for s in seeds)
    assert trial_seed("T3.4", 0, 0) != trial_seed("T3.3", 0, 0)


def test_unknown_theorem():
    with pytest.raises(UnknownTheoremError, match="T3.4"):
        run_suite("T9.9", 1)
    with pytest.raises(ValueError):
        run_trial("bogus", 0, 3)


def test_report_schema_and_reproducibility():
    a = run_suite("T3.4", 30, n_max=3, seed=5)
    b = run_suite("T3.4", 30, n_max=3, seed=5)
    assert a.to_json() == b.to_json()
    d = json.loads(a.to_json())
    assert d["schema"] == SCHEMA
    assert {"theorem_id", "trials", "violations", "skipped", "seed"} <= set(d)
    assert d["passed"] + d["skipped"] + len(d["violations"]) == 30


def test_report_independent_of_jobs():
    a = run_suite("T3.2", 24, n_max=3, seed=1, jobs=1)
    b = run_suite("T3.2", 24, n_max=3, seed=1, jobs=3)
    assert a.to_json() == b.to_json()


def test_violations_replay_from_seed(monkeypatch):
    def fake(rng, n_max):
        v = rng.randrange(4)
        return TrialResult("violation", f"v={v}") if v == 0 else TrialResult("pass")

    monkeypatch.setitem(labgen.SUITES, "fake", fake)
    rep = run_suite("fake", 40, seed=3)
    assert rep.violations and not rep.ok
    for v in rep.violations:
        v = dict(v)
        assert v["seed"] == trial_seed("fake", 3, v["trial"])
        assert run_trial("fake", v["seed"], 4).detail == v["detail"]


@pytest.mark.parametrize("theorem_id", sorted(labgen.SUITES))
def test_every_suite_smoke(theorem_id):
    rep = run_suite(theorem_id, 8, n_max=3, seed=11)
    assert rep.ok, rep.violations
