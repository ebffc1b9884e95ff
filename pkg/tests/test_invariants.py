"""Dimension, depth, regular sequences, Euler characteristics, rank,
canonical module, type."""

import warnings

import pytest

from frobcheck import (PresentedModule, PreconditionError, RingModel,
                       canonical_module, cm_type_and_gorenstein,
                       depth_of_module, depth_of_ring, dimension_of_module,
                       euler_characteristic, is_mcm, is_regular_sequence,
                       is_sop, min_generators, minimalize, module_invariants,
                       module_length, rank_of_module, residue_field,
                       ring_as_module)
from frobcheck.cli import parse_polynomial
from frobcheck.criteria import pd_is_finite
from frobcheck.invariants import quotient_by_sequence


def P(ring, s):
    return parse_polynomial(ring, s)


def MF_of(model_b):
    return model_b.module("MF")


# ---------------------------------------------------------------------------
# dimension / depth

def test_dimension_examples(model_b):
    B = model_b.ring
    assert dimension_of_module(ring_as_module(B)) == 2
    assert dimension_of_module(residue_field(B)) == 0
    assert dimension_of_module(PresentedModule.from_rows(B, [[P(B, "x")]])) == 1
    zero = PresentedModule(B, 1, [{0: B.one()}])
    assert dimension_of_module(zero) == -1


def test_depth_examples(model_a, model_b):
    assert depth_of_ring(model_a.ring) == 2
    T = RingModel(2, ["x", "y"],
                  ideal_gens=[P(RingModel(2, ["x", "y"]), "x^2"),
                              P(RingModel(2, ["x", "y"]), "x*y")])
    assert depth_of_ring(T) == 0
    assert depth_of_module(MF_of(model_b)) == 2


def test_depth_of_zero_module_raises(model_a):
    zero = PresentedModule(model_a.ring, 1, [{0: model_a.ring.one()}])
    with pytest.raises(PreconditionError):
        depth_of_module(zero)


def test_is_mcm_examples(model_b):
    B = model_b.ring
    assert is_mcm(ring_as_module(B))
    assert not is_mcm(residue_field(B))
    assert is_mcm(MF_of(model_b))
    zero = PresentedModule(B, 1, [{0: B.one()}])
    with warnings.catch_warnings(record=True) as recorded:
        warnings.simplefilter("always")
        assert not is_mcm(zero)
    assert recorded


# ---------------------------------------------------------------------------
# sequences

def test_regular_sequence_examples(model_b):
    B = model_b.ring
    assert is_regular_sequence([P(B, "y"), P(B, "z")], ring_as_module(B))
    assert is_sop([P(B, "y"), P(B, "z")], B)
    assert not is_regular_sequence([P(B, "x"), P(B, "x")], ring_as_module(B))
    T = RingModel(2, ["x", "y"],
                  ideal_gens=[P(RingModel(2, ["x", "y"]), "x^2"),
                              P(RingModel(2, ["x", "y"]), "x*y")])
    assert not is_regular_sequence([T.variable(0)], ring_as_module(T))


def test_sop_requires_full_length(model_b):
    B = model_b.ring
    assert not is_sop([P(B, "y")], B)
    assert is_sop([P(B, "y+z"), P(B, "x")], B)


# ---------------------------------------------------------------------------
# Euler characteristics

def test_chi_of_ring_is_colength(model_b):
    B = model_b.ring
    e = euler_characteristic(ring_as_module(B), [P(B, "y"), P(B, "z")])
    assert e.value == 2
    assert e.homology_lengths == (2, 0, 0)


def test_chi_vanishes_below_codimension():
    S = RingModel(3, ["x", "y"], is_domain=True, expected_CM=True)
    M = PresentedModule.from_rows(S, [[P(S, "x")]])
    e = euler_characteristic(M, [P(S, "x"), P(S, "y")])
    assert e.value == 0
    assert e.homology_lengths == (1, 1, 0)


def test_chi1_vanishes_for_mcm(model_b):
    B = model_b.ring
    e = euler_characteristic(MF_of(model_b), [P(B, "y"), P(B, "z")], i=1)
    assert e.value == 0
    assert e.homology_lengths[1] == 0 and e.homology_lengths[2] == 0


def test_chi_rejects_irregular_sequence(model_b):
    B = model_b.ring
    with pytest.raises(PreconditionError):
        euler_characteristic(ring_as_module(B), [P(B, "x"), P(B, "x")])


# ---------------------------------------------------------------------------
# rank

def test_rank_examples(model_b):
    B = model_b.ring
    assert rank_of_module(PresentedModule.free(B, 3)) == 3
    assert rank_of_module(MF_of(model_b)) == 1
    assert rank_of_module(residue_field(B)) == 0


def test_rank_none_for_non_domain(model_e):
    assert rank_of_module(residue_field(model_e.ring)) is None


def test_rank_equals_mu_implies_free(model_b, model_d):
    # corpus instances of the rank lemma
    for mf in (model_b, model_d):
        for name, M in sorted(mf.modules.items()):
            if M.ambient_rank == 0:
                continue
            r = rank_of_module(M)
            mu = min_generators(M)
            if r is not None and r == mu:
                assert minimalize(M).num_relations == 0, name


# ---------------------------------------------------------------------------
# canonical module and type

def test_canonical_of_hypersurface_is_free(model_b):
    om = canonical_module(model_b.ring)
    assert min_generators(om) == 1
    assert minimalize(om).num_relations == 0


def test_canonical_of_semigroup_ring(model_c):
    om = canonical_module(model_c.ring)
    assert min_generators(om) == 2


def test_canonical_artinian_hypersurface():
    R0 = RingModel(2, ["x"])
    H = RingModel(2, ["x"], ideal_gens=[P(R0, "x^2")], expected_CM=True)
    om = canonical_module(H)
    assert min_generators(om) == 1
    assert minimalize(om).num_relations == 0


def test_type_examples(model_a, model_c, model_d):
    assert cm_type_and_gorenstein(model_a.ring) == (1, True)
    assert cm_type_and_gorenstein(model_d.ring) == (1, True)
    assert cm_type_and_gorenstein(model_c.ring) == (2, False)


def test_type_matches_mu_omega(corpus):
    for key, mf in sorted(corpus.items()):
        t, _ = cm_type_and_gorenstein(mf.ring)
        assert t == min_generators(canonical_module(mf.ring)), key


def test_type_of_artinian_complete_intersection():
    # k[x,y]/(x^2, y^2): socle spanned by xy, type 1
    R0 = RingModel(2, ["x", "y"])
    H = RingModel(2, ["x", "y"],
                  ideal_gens=[P(R0, "x^2"), P(R0, "y^2")], expected_CM=True)
    assert cm_type_and_gorenstein(H) == (1, True)


def test_type_of_fat_point():
    # k[x,y]/(x^2, xy, y^2): socle is all of m, type 2
    R0 = RingModel(3, ["x", "y"])
    H = RingModel(3, ["x", "y"],
                  ideal_gens=[P(R0, "x^2"), P(R0, "x*y"), P(R0, "y^2")],
                  expected_CM=True)
    assert cm_type_and_gorenstein(H) == (2, False)


def test_canonical_requires_cm():
    R0 = RingModel(2, ["x", "y"])
    T = RingModel(2, ["x", "y"],
                  ideal_gens=[P(R0, "x^2"), P(R0, "x*y")])
    with pytest.raises(PreconditionError):
        canonical_module(T)


# ---------------------------------------------------------------------------
# Auslander-Buchsbaum and bundles

def test_auslander_buchsbaum(corpus):
    checked = 0
    for key, mf in sorted(corpus.items()):
        ring = mf.ring
        for name, M in sorted(mf.modules.items()):
            finite, pd = pd_is_finite(M)
            if finite and not M.is_zero():
                assert depth_of_module(M) + pd == depth_of_ring(ring), \
                    (key, name)
                checked += 1
    assert checked >= 8


def test_module_invariants_bundle(model_b):
    b = module_invariants(MF_of(model_b))
    assert (b.dim, b.depth, b.codim, b.is_MCM, b.rank, b.mu) == \
        (2, 2, 0, True, 1, 2)


def test_length_identity_for_modules_with_rank(corpus):
    # chi(M, R/x) = rank(M) * len(R/x); for MCM M also len(M/xM) equals it
    sop_for = {"A": "xy", "B": "yz", "C": "x", "D": "x"}
    checked_chi = checked_mcm = 0
    for key, sop_name in sorted(sop_for.items()):
        mf = corpus[key]
        ring = mf.ring
        x = mf.sop(sop_name)
        len_rx = euler_characteristic(ring_as_module(ring), x).value
        for name in sorted(mf.modules):
            M = mf.module(name)
            if M.ambient_rank == 0:
                continue
            r = rank_of_module(M)
            if r is None:
                continue
            chi = euler_characteristic(M, x).value
            assert chi == r * len_rx, (key, name, chi, r, len_rx)
            checked_chi += 1
            if is_mcm(M):
                lm = module_length(quotient_by_sequence(minimalize(M), x))
                assert lm == r * len_rx, (key, name, lm)
                checked_mcm += 1
    assert checked_chi >= 10 and checked_mcm >= 5
