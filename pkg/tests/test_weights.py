from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from critsurf import samples
from critsurf.weights import (
    DomainError,
    HypothesisViolated,
    NotCritical,
    check_main_inequality,
    check_maingen_inequality,
    default_kappa,
    face_weight,
    gen,
    s,
    s_multiset,
    surf,
    surfineq_audit,
    total_weight,
)


def test_s_values():
    assert [s(l) for l in range(5, 9)] == [Fraction(4, 4113), Fraction(72, 4113), Fraction(540, 4113), Fraction(2184, 4113)]
    assert s(4) == s(3) == s(2) == 0
    assert s(9) == 1 and s(12) == 4
    with pytest.raises(DomainError):
        s(1)


def test_surf_values():
    assert surf(0, 2, 0, 2) == 0
    assert surf(0, 2, 0, 1) == 2
    assert gen(1, 0, 0, 0) == 0
    assert surf(1, 1, 0, 0) == gen(1, 1, 0, 0) == 48
    assert surf(0, 1, 0, 0) == gen(0, 1, 0, 0) + 114 - 42
    with pytest.raises(DomainError):
        surf(0, 1, 1, 1)


@given(st.integers(5, 64), st.integers(5, 64))
def test_s_superadditive(a, b):
    assert s(a) + s(b) <= s(a + b - 4)


@given(st.integers(2, 64), st.integers(2, 64))
def test_s_lipschitz(a, b):
    a, b = max(a, b), min(a, b)
    assert s(a) - s(b) <= a - b


def test_multiset_weight():
    assert s_multiset((5, 5)) == Fraction(8, 4113)
    assert s_multiset(()) == 0


def test_face_weights_of_disk():
    G = samples.c8_two_chords()
    assert sorted(G.face_length(f) for f in G.internal_faces()) == [4, 4, 4]
    assert total_weight(G) == 0
    from critsurf.census import disk_catalog

    for H in disk_catalog(4, 8, 10).graphs:
        assert total_weight(H) == sum(s(H.face_length(f)) for f in H.internal_faces())
        assert all(face_weight(H, f) == s(H.face_length(f)) for f in H.internal_faces())


def test_main_inequality_projective_groetzsch():
    rep = check_main_inequality(samples.groetzsch_projective())
    assert rep.values["lhs"] == 0 and rep.verdict
    assert rep.values["kappa"] == default_kappa()
    with pytest.raises(NotCritical):
        check_main_inequality(samples.cube())


def test_maingen_on_tripod():
    rep = check_maingen_inequality(samples.hexagon_tripod())
    assert rep.verdict and rep.values["w"] == 0
    assert "verdict = pass" in rep.text()


def test_maingen_hypotheses():
    with pytest.raises(HypothesisViolated):
        check_maingen_inequality(samples.figure1_cylinder(), certify=False)


def test_surfineq_audit():
    rep = surfineq_audit()
    assert rep.verdict, rep.failures[:5]
