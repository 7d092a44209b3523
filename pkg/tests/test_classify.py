import itertools

import numpy as np
import pytest

from quivercm.classify import (
    classify,
    gamma_type,
    is_cm_finite_type,
    orbit_count,
    s_count,
    tubular_boundary,
)
from quivercm.quiver import load_fixture, parse_quiver_spec
from quivercm.roots import (
    DynkinDescriptor,
    cartan_matrix,
    detect_dynkin,
    parse_dynkin,
    positive_root_count,
    positive_roots,
)


def brute_positive_roots_a(n):
    """Oracle for type A_n: the positive roots are the interval vectors."""
    roots = set()
    for i in range(n):
        for j in range(i, n):
            v = [0] * n
            for t in range(i, j + 1):
                v[t] = 1
            roots.add(tuple(v))
    return roots


def test_positive_roots_type_a_oracle():
    for n in (1, 2, 3, 4, 5):
        t = DynkinDescriptor("A", n)
        assert set(map(tuple, positive_roots(t))) == brute_positive_roots_a(n)
        assert positive_root_count(t) == n * (n + 1) // 2


def test_positive_root_counts_deh():
    assert positive_root_count(DynkinDescriptor("D", 4)) == 12
    assert positive_root_count(DynkinDescriptor("E", 6)) == 36
    assert positive_root_count(DynkinDescriptor("E", 7)) == 63
    assert positive_root_count(DynkinDescriptor("E", 8)) == 120


def test_parse_dynkin():
    assert parse_dynkin("A2") == DynkinDescriptor("A", 2)
    assert parse_dynkin("d4") == DynkinDescriptor("D", 4)
    with pytest.raises(ValueError):
        parse_dynkin("F4")
    with pytest.raises(ValueError):
        DynkinDescriptor("E", 9)


def test_detect_dynkin_fixtures():
    assert detect_dynkin(load_fixture("ka2")) == DynkinDescriptor("A", 2)
    assert detect_dynkin(load_fixture("ka3")) == DynkinDescriptor("A", 3)
    assert detect_dynkin(load_fixture("ka4")) == DynkinDescriptor("A", 4)
    assert detect_dynkin(load_fixture("kd4")) == DynkinDescriptor("D", 4)
    assert detect_dynkin(load_fixture("sec5_3_tilted")) is None  # has a relation
    cyclic = parse_quiver_spec(
        "vertices: 1 2\narrow a: 1 -> 2\narrow b: 2 -> 1\n"
    )
    assert detect_dynkin(cyclic) is None


def test_s_count_values():
    assert [s_count(k) for k in (1, 2, 3, 4, 5)] == [2, 5, 10, 20, 50]
    with pytest.raises(ValueError):
        s_count(6)


def test_orbit_count_cross_derivation():
    # orbit formula equals the closed A_2 formula for k = 2..5
    for k in (2, 3, 4, 5):
        gam = gamma_type(DynkinDescriptor("A", 2), k)
        assert orbit_count(gam, k, 2) == s_count(k)


def test_orbit_count_examples():
    assert orbit_count(DynkinDescriptor("D", 4), 3, 2) == 10
    assert orbit_count(DynkinDescriptor("E", 8), 5, 2) == 50
    assert orbit_count(DynkinDescriptor("E", 6), 3, 3) == 27
    assert orbit_count(DynkinDescriptor("E", 8), 3, 4) == 84
    assert orbit_count(DynkinDescriptor("D", 4), 2, 4) == 16
    with pytest.raises(ValueError):
        orbit_count(DynkinDescriptor("A", 2), 4, 2)  # 6 not divisible by 4


def test_gamma_type_a1_any_k():
    for k in (2, 3, 4, 5, 6, 7):
        gam = gamma_type(DynkinDescriptor("A", 1), k)
        assert gam == DynkinDescriptor("A", k - 1)
        assert orbit_count(gam, k, 1) == k  # R_k has k indecomposables


def test_classification_table():
    """The classification on {(A_n, k)}_{n<=5,k<=7} and {(D_4, k)}_{k<=3}."""
    expected_finite = set()
    for n in range(1, 6):
        expected_finite.add((f"A{n}", 1))
        expected_finite.add((f"A{n}", 2))
    for k in (1, 2):
        expected_finite.add(("D4", k))
    for n in (1, 2, 3, 4):
        expected_finite.add((f"A{n}", 3))
    for k in (4, 5):
        expected_finite.add(("A1", k))
        expected_finite.add(("A2", k))
    for k in (6, 7):
        expected_finite.add(("A1", k))
    cases = [(f"A{n}", k) for n in range(1, 6) for k in range(1, 8)]
    cases += [("D4", k) for k in (1, 2, 3)]
    for name, k in cases:
        t = parse_dynkin(name)
        rep = classify(t, k)
        want = "CM-finite" if (name, k) in expected_finite else "CM-infinite"
        assert rep.verdict == want, (name, k, rep.verdict)
        assert "derived_equivalence_reading" in rep.metadata


def test_classify_counts_and_boundaries():
    rep = classify(parse_dynkin("A2"), 5)
    assert rep.verdict == "CM-finite" and rep.expected_count == 50
    rep = classify(parse_dynkin("A2"), 6)
    assert rep.verdict == "CM-infinite" and rep.boundary_note == (2, 3, 6)
    rep = classify(parse_dynkin("A3"), 4)
    assert rep.verdict == "CM-infinite" and rep.boundary_note == (2, 4, 4)
    rep = classify(parse_dynkin("A5"), 3)
    assert rep.verdict == "CM-infinite" and rep.boundary_note == (2, 3, 6)
    rep = classify(parse_dynkin("D4"), 3)
    assert rep.verdict == "CM-infinite" and rep.boundary_note == (3, 3, 3)
    rep = classify(parse_dynkin("A2"), 3)
    assert rep.boundary_note is None and rep.expected_count == 10
    rep = classify(parse_dynkin("D4"), 2)
    assert rep.expected_count == 16
    rep = classify(parse_dynkin("A3"), 3)
    assert rep.expected_count == 27


def test_classify_presentation_inputs():
    rep = classify(load_fixture("ka3"), 3)
    assert rep.verdict == "CM-finite" and rep.expected_count == 27
    rep = classify(load_fixture("sec5_3_tilted"), 2)
    assert rep.verdict == "unknown"
    rep = classify(None, 4)
    assert rep.verdict == "unknown"


def test_tubular_boundary_none_inside_finite_region():
    assert tubular_boundary(parse_dynkin("A2"), 3) is None
    assert is_cm_finite_type(parse_dynkin("A4"), 3)
    assert not is_cm_finite_type(parse_dynkin("A5"), 3)
