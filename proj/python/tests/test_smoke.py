import pytest

import tsq


def test_s3_tensor_square_is_cyclic_of_order_6():
    r = tsq.compute("a,b | a^3, b^2, (a b)^2")
    assert r["tensor_square"]["order"] == 6
    assert r["tensor_square"]["structure"] == "Z6"
    assert r["schur_multiplier"]["invariant_factors"] == []
    assert all(c["status"] in ("pass", "not_applicable", "skipped") for c in r["checks"])


def test_family_descriptor():
    r = tsq.compute(family="A4")
    assert r["tensor_square"]["structure"] == "Z3 x Q8"
    assert r["schur_multiplier"]["invariant_factors"] == [2]
    assert "wall_seconds" not in r["stats"]


def test_order_only():
    r = tsq.order_only(family="dihedral(6)")
    assert r["tensor_square"]["order"] == 48
    assert r["structure_computed"] is False


def test_verify_theorem_a():
    r = tsq.verify("A")
    assert r["summary"] == {"pass": 4, "fail": 0, "degraded": 0, "total": 4}


def test_degraded_under_a_tight_table_budget():
    r = tsq.verify(case="D.i/140-noncyclic", max_table_entries=100_000, nu_check_limit=0)
    (c,) = r["cases"]
    assert c["verdict"] == "degraded"
    assert c["report"]["tensor_square"]["order"] == 560


def test_gamma_and_abelian_tensor():
    g = tsq.gamma([2, 2])
    assert (g["order"], g["exponent"]) == (32, 4)
    assert tsq.tensor_abelian([2, 4], [6]) == [2, 2]


def test_coset_index():
    assert tsq.coset_index("a,b | a^2, b^3, (a b)^5") == 60
    assert tsq.coset_index("a,b | a^2, b^3, (a b)^5", ["b"], strategy="felsch") == 20


def test_catalog_ids():
    ids = tsq.case_ids()
    assert "remark/60" in ids and "C.iii/75" in ids and len(ids) == len(set(ids))


def test_errors():
    with pytest.raises(tsq.ParseError):
        tsq.compute("a | a^")
    with pytest.raises(tsq.FamilyError):
        tsq.compute(family="nosuch(3)")
    with pytest.raises(tsq.ResourceLimitError):
        tsq.compute(family="A4", max_cosets=40)
    with pytest.raises(ValueError):
        tsq.compute("a | a^2", family="A4")
