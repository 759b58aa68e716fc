import itertools

import pytest

from mereotime.boolean import FiniteBA
from mereotime.contact import (
    Clan,
    PrecontactAlgebra,
    Relation,
    canonical_relation,
    check_axioms,
    check_compositional,
    clans,
    clusters,
    contact_from_adjacency,
    factor_by_clanset,
    maximal_clans,
    possibility_image,
    satisfies_cluster_condition,
)
from mereotime.errors import CapabilityError, DimensionMismatch, PreconditionError, ValidationError

from conftest import (
    all_atom_relations,
    brute_clans,
    slow_c1,
    slow_c2,
    slow_c3_left,
    slow_c3_right,
    slow_c4,
    slow_c5,
    slow_ce,
    slow_interpolation,
)

X, Y, Z = 1, 2, 4


def alg(n, pairs):
    return PrecontactAlgebra.from_atom_pairs(FiniteBA(n), pairs)


def test_total_adjacency_gives_contact():
    p = contact_from_adjacency(Relation.total(2))
    assert p.related(X, Y)
    assert p.axiom_report.ok


def test_identity_adjacency_is_overlap():
    p = contact_from_adjacency(Relation.identity(2))
    for a in p.base.elements():
        for b in p.base.elements():
            assert p.related(a, b) == bool(a & b)
    assert not p.related(X, Y)


def test_one_directed_pair_fails_symmetry_and_reflexivity():
    p = contact_from_adjacency(Relation.of(2, {(0, 1)}))
    report = p.axiom_report
    assert not report["C4"].holds
    assert report["C4"].witness == (X, Y)
    assert not report["C5"].holds
    assert report["C5"].witness == (X, X)
    assert report["C1"].holds and report["C2"].holds


def test_axiom_checks_match_slow_oracles_on_all_two_atom_relations():
    b = FiniteBA(2)
    for rel in all_atom_relations(2):
        p = PrecontactAlgebra(b, rel)
        report = check_axioms(p)
        assert report["C1"].holds == slow_c1(b, p.related)
        assert report["C2"].holds == slow_c2(b, p.related)
        assert report["C3'"].holds == slow_c3_left(b, p.related)
        assert report["C3''"].holds == slow_c3_right(b, p.related)
        assert report["C4"].holds == slow_c4(b, p.related)
        assert report["C5"].holds == slow_c5(b, p.related)
        assert report["CE"].holds == slow_ce(b, p.related)
        # C5 and C5' agree whenever C1-C3 hold (always, for atom normal forms)
        assert report["C5"].holds == report["C5'"].holds


def test_axiom_checks_match_slow_oracles_on_raw_relations():
    b = FiniteBA(2)
    from mereotime.contact import relation_axiom_checks

    elements = list(b.elements())
    pair_space = list(itertools.product(elements, elements))
    # 100 deterministic raw relations, not required to be monotone
    import random

    rng = random.Random(42)
    for _ in range(100):
        table = {p for p in pair_space if rng.random() < 0.4}
        rel = lambda a, c: (a, c) in table
        checks = {c.name: c for c in relation_axiom_checks(b, rel)}
        assert checks["C1"].holds == slow_c1(b, rel)
        assert checks["C2"].holds == slow_c2(b, rel)
        assert checks["C3'"].holds == slow_c3_left(b, rel)
        assert checks["C3''"].holds == slow_c3_right(b, rel)
        assert checks["C4"].holds == slow_c4(b, rel)
        assert checks["C5"].holds == slow_c5(b, rel)
        assert checks["CE"].holds == slow_ce(b, rel)


def test_largest_contact_satisfies_everything_including_ce():
    p = PrecontactAlgebra.largest(FiniteBA(3))
    report = p.axiom_report
    assert report.ok
    assert report["CE"].holds


def test_possibility_image():
    rel = Relation.of(2, {(0, 1)})
    assert possibility_image(rel, 0) == 0
    assert possibility_image(Relation.identity(3), 5) == 5
    assert possibility_image(rel, Y) == X
    # aCb iff a meets the image of b
    p = contact_from_adjacency(rel)
    for a in p.base.elements():
        for b in p.base.elements():
            assert p.related(a, b) == bool(a & possibility_image(rel, b))


def test_from_element_relation_normalizes_and_rejects():
    b = FiniteBA(2)
    table = {
        (a, c)
        for a in b.elements()
        for c in b.elements()
        if a & c
    }
    p = PrecontactAlgebra.from_element_relation(b, table)
    assert p.relation == Relation.identity(2)

    with pytest.raises(ValidationError) as err:
        PrecontactAlgebra.from_element_relation(b, {(3, 3)})
    assert err.value.witness is not None


def test_compositional_axioms():
    b = FiniteBA(2)
    r = PrecontactAlgebra(b, Relation.of(2, {(0, 1)}))
    s_empty = PrecontactAlgebra(b, Relation.empty(2))
    report = check_compositional(r, s_empty)
    assert report["C_RC_S"].holds and report["C_SC_R"].holds

    identity = PrecontactAlgebra(b, Relation.identity(2))
    s = PrecontactAlgebra(b, Relation.of(2, {(1, 0)}))
    report = check_compositional(identity, s)
    assert report["C_RC_S"].holds and report["R.S<=S"].holds

    report = check_compositional(r, s)
    assert not report["C_RC_S"].holds
    assert report["C_RC_S"].witness is not None
    assert not report["R.S<=S"].holds
    assert report["C_RC_S agrees with R.S<=S"].holds

    with pytest.raises(DimensionMismatch):
        check_compositional(r, PrecontactAlgebra.largest(FiniteBA(3)))


def test_compositional_matches_slow_interpolation_everywhere():
    b = FiniteBA(2)
    for rel_r, rel_s in itertools.product(list(all_atom_relations(2))[:32], repeat=2):
        pr, ps = PrecontactAlgebra(b, rel_r), PrecontactAlgebra(b, rel_s)
        report = check_compositional(pr, ps)
        assert report["C_RC_S"].holds == slow_interpolation(b, ps.related, pr.related, ps.related)
        assert report["C_SC_R"].holds == slow_interpolation(b, ps.related, ps.related, pr.related)


def test_canonical_relation_special_cases_and_round_trip():
    b = FiniteBA(3)
    assert canonical_relation(PrecontactAlgebra.overlap(b)) == Relation.identity(3)
    assert canonical_relation(PrecontactAlgebra.largest(b)) == Relation.total(3)
    for n in (1, 2):
        for rel in all_atom_relations(n):
            p = PrecontactAlgebra(FiniteBA(n), rel)
            assert canonical_relation(p) == rel


def test_clans_of_overlap_are_ultrafilters():
    p = PrecontactAlgebra.overlap(FiniteBA(3))
    assert [c.support for c in clans(p)] == [X, Y, Z]
    assert [c.support for c in clusters(p)] == [X, Y, Z]


def test_largest_contact_has_single_cluster():
    p = PrecontactAlgebra.largest(FiniteBA(3))
    assert len(clusters(p)) == 1
    assert clusters(p)[0].support == p.base.one
    assert len(clans(p)) == p.base.size - 1  # every nonempty subset


def test_clans_with_one_edge():
    pairs = {(0, 0), (1, 1), (2, 2), (0, 1), (1, 0)}
    p = alg(3, pairs)
    assert [c.support for c in clans(p)] == [X, X | Y, Y, Z]
    assert [c.support for c in clusters(p)] == [X | Y, Z]
    assert [c.support for c in maximal_clans(p)] == [X | Y, Z]


def test_clans_match_brute_force_on_contact_sweep(contact_sweep_3):
    for p in contact_sweep_3:
        assert [c.support for c in clans(p)] == brute_clans(p)


def test_clans_require_contact_axioms():
    p = alg(2, {(0, 1)})
    with pytest.raises(CapabilityError) as err:
        clans(p)
    assert err.value.missing in ("C4", "C5")


def test_clusters_require_ce():
    # path graph: reflexive, symmetric, not transitive
    pairs = {(0, 0), (1, 1), (2, 2), (0, 1), (1, 0), (1, 2), (2, 1)}
    p = alg(3, pairs)
    assert p.axiom_report["C4"].holds and p.axiom_report["C5"].holds
    assert not p.axiom_report["CE"].holds
    with pytest.raises(CapabilityError) as err:
        clusters(p)
    assert err.value.missing == "CE"


def test_cluster_condition_direct_check(contact_sweep_3):
    for p in contact_sweep_3:
        if not p.axiom_report["CE"].holds:
            continue
        for clan in clans(p):
            is_max = clan.support in {c.support for c in maximal_clans(p)}
            assert satisfies_cluster_condition(p, clan) == is_max


def test_factor_by_all_clans_is_isomorphic():
    p = alg(3, {(0, 0), (1, 1), (2, 2), (0, 1), (1, 0)})
    factored = factor_by_clanset(p, clans(p))
    assert factored.kept_atoms == (0, 1, 2)
    assert factored.algebra.relation == p.relation
    assert factored.kernel() == {0}


def test_factor_by_single_ultrafilter():
    p = PrecontactAlgebra.overlap(FiniteBA(3))
    factored = factor_by_clanset(p, [Clan(p.base, X)])
    assert factored.algebra.base.atom_count == 1
    assert factored.project(X) == 1
    assert factored.project(Y) == 0


def test_factor_validation():
    p = PrecontactAlgebra.overlap(FiniteBA(2))
    with pytest.raises(PreconditionError):
        factor_by_clanset(p, [])
    with pytest.raises(ValidationError):
        factor_by_clanset(p, [Clan(p.base, X | Y)])  # not a clan of overlap


def test_contact_between_elements_iff_shared_clan(contact_sweep_3):
    for p in contact_sweep_3:
        all_clans = clans(p)
        maximal = maximal_clans(p)
        for a in p.base.elements():
            for b in p.base.elements():
                shared = any(c.contains(a) and c.contains(b) for c in all_clans)
                shared_max = any(c.contains(a) and c.contains(b) for c in maximal)
                assert p.related(a, b) == shared == shared_max


def test_every_contact_sits_between_overlap_and_largest(contact_sweep_3):
    for p in contact_sweep_3:
        smallest = PrecontactAlgebra.overlap(p.base)
        largest = PrecontactAlgebra.largest(p.base)
        for a in p.base.elements():
            for b in p.base.elements():
                if smallest.related(a, b):
                    assert p.related(a, b)
                if p.related(a, b):
                    assert largest.related(a, b)


def test_interesting_property_of_contact(contact_sweep_3):
    for algebra in contact_sweep_3:
        b = algebra.base
        rel = algebra.related
        for p in b.elements():
            for q in b.elements():
                if not rel(p, q):
                    continue
                for a in b.elements():
                    for c in b.elements():
                        if rel(a, c):
                            continue
                        na, nc = b.compl(a), b.compl(c)
                        assert rel(p & na, q & na) or rel(p & nc, q & nc)


def test_cluster_identity_lemma(contact_sweep_3):
    for p in contact_sweep_3:
        if not p.axiom_report["CE"].holds:
            continue
        cluster_list = clusters(p)
        for left in cluster_list:
            for right in cluster_list:
                differ = left.support != right.support
                separated = any(
                    left.contains(a) and right.contains(b) and not p.related(a, b)
                    for a in p.base.elements()
                    for b in p.base.elements()
                )
                split = any(
                    not left.contains(c) and not right.contains(p.base.compl(c))
                    for c in p.base.elements()
                )
                assert differ == separated == split


def test_every_clan_in_unique_cluster_under_ce(contact_sweep_3):
    for p in contact_sweep_3:
        if not p.axiom_report["CE"].holds:
            continue
        cluster_list = clusters(p)
        for clan in clans(p):
            enclosing = [c for c in cluster_list if clan.support & ~c.support == 0]
            assert len(enclosing) == 1
