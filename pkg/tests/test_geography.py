"""The triplet geography: the 75-entry table, existence rules, fixtures,
block-sum witnesses, and isogeny glue."""

import time

import pytest

from k3lat.errors import NotRealizable
from k3lat.geography import (
    geography_table,
    k3_triplet_realizable,
    lattice_exists,
    NAMED_TRIPLETS,
    GeographyEntry,
    geometric_invariants,
    find_isogeny_glue,
    block_sum_witness,
    fixture_catalog,
    duality_chain_check,
)
from k3lat.lattice import (
    parse_lattice,
    main_invariant,
    overlattice,
    discriminant_form,
)
from k3lat.finiteform import form_invariants


def test_count_is_75():
    assert len(geography_table()) == 75


def test_table_entries_unique_and_realizable():
    table = geography_table()
    triplets = [e.triplet for e in table]
    assert len(set(triplets)) == 75
    for r, a, d in triplets:
        assert k3_triplet_realizable(r, a, d)


def test_boundary_exclusions():
    assert not k3_triplet_realizable(1, 1, 0)
    assert not k3_triplet_realizable(2, 0, 1)
    assert not k3_triplet_realizable(1, 3, 1)
    assert k3_triplet_realizable(2, 0, 0)
    assert k3_triplet_realizable(10, 10, 0)
    assert k3_triplet_realizable(20, 2, 1)


def test_r_plus_a_22_family():
    for r, a, d in [(11, 11, 1), (12, 10, 1), (13, 9, 1), (14, 8, 1),
                    (15, 7, 1), (16, 6, 1), (17, 5, 1)]:
        assert k3_triplet_realizable(r, a, d)


def test_named_triplets_realizable():
    assert len(NAMED_TRIPLETS) == 21
    for r, a, d in NAMED_TRIPLETS:
        assert k3_triplet_realizable(r, a, d), (r, a, d)


def test_geometric_invariants():
    g, k, kind = geometric_invariants(10, 10, 0)
    assert (g, k) == (1, 0)
    assert kind == "empty"
    g, k, kind = geometric_invariants(10, 8, 0)
    assert kind == "two-elliptic-curves"
    g, k, kind = geometric_invariants(17, 5, 1)
    assert (g, k) == (0, 6)


def test_block_sum_witness_covers_table():
    """Both sides of every triplet admit an explicit block-sum lattice whose
    main invariant is the requested one (independent of the rule deriving
    the table)."""
    for e in geography_table():
        r, a, d = e.triplet
        wit = block_sum_witness(1, r - 1, a, d)
        assert wit is not None, (r, a, d)
        assert main_invariant(wit).as_tuple() == (1, r - 1, a, d)
        wit = block_sum_witness(2, 20 - r, a, d)
        assert wit is not None, (r, a, d)
        assert main_invariant(wit).as_tuple() == (2, 20 - r, a, d)


def test_lattice_exists_matches_examples():
    """lattice_exists agrees with explicit constructions."""
    samples = [
        ("<2>^2 + <-2>^8", True),
        ("E8(2)", True),
        ("U(2) + E8(2)", True),
        ("M10", True),
    ]
    for expr, expected in samples:
        L = parse_lattice(expr)
        q = discriminant_form(L)
        assert lattice_exists(L.signature(), q) == expected, expr
    # no even 2-elementary lattice of signature (0, 8) can have a = 7:
    # the parity/boundary rules forbid it
    q = discriminant_form(parse_lattice("<-2>^7"))
    assert not lattice_exists((0, 8), q)


def test_fixture_catalog_invariants():
    for fix in fixture_catalog():
        if not fix.lattice.is_even():
            continue
        assert main_invariant(fix.lattice).as_tuple() == fix.expected, fix.name
        if fix.expected_index is not None:
            assert fix.index == fix.expected_index, fix.name


def test_duality_chain():
    keys = duality_chain_check()
    assert len(set(keys)) == 1
    rank, sig, disc, even = keys[0]
    assert (rank, sig, disc, even) == (12, (2, 10), 4, False)


def test_find_isogeny_glue_round_trip():
    """Quotients by isotropic subgroups land on the target invariant; the
    overlattice confirms it."""
    cases = [
        ("U(2) + U(2)", 2, 0),
        ("U(2) + U(2)", 0, 0),
        ("<2>^2 + <-2>^8", 8, 1),
        ("U(2) + E8(2)", 8, 0),
        ("U(2) + E8(2)", 6, 0),
    ]
    for expr, a_t, d_t in cases:
        L = parse_lattice(expr)
        hit = find_isogeny_glue(L, a_t, d_t)
        assert hit is not None, (expr, a_t, d_t)
        G, M = hit
        q = discriminant_form(M)
        a, d, s = form_invariants(q)
        assert (a, d) == (a_t, d_t)
        assert M.signature() == L.signature()


def test_find_isogeny_glue_can_fail():
    L = parse_lattice("U(2)")
    assert find_isogeny_glue(L, 2, 1) is None


def test_geography_runtime():
    start = time.time()
    geography_table()
    assert time.time() - start < 10
