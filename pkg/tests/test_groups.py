import pytest

from nilweight.perms import MalformedPermError, Perm
from nilweight.groups import PermGroup, ResourceLimitError, bsgs_construct
from nilweight.sigma import PrimeSet, sigma_part

import bruteforce as bf
from conftest import group, perm


def brute_order(G):
    return len(bf.closure([g.images for g in G.generators], G.degree))


class TestConstruction:
    def test_s3_order(self, s3):
        assert s3.order == 6
        assert brute_order(s3) == 6

    def test_empty_generators(self):
        G = bsgs_construct([], degree=4)
        assert G.order == 1
        assert G.degree == 4

    def test_a5_order(self, a5):
        assert a5.order == 60
        assert brute_order(a5) == 60

    def test_inconsistent_degrees(self):
        with pytest.raises(MalformedPermError):
            bsgs_construct([Perm.parse("(1,2)", 2), Perm.parse("(1,2,3)", 3)])

    def test_orders_match_bruteforce_on_small_groups(self):
        cases = [
            group(4, "(1,2)", "(1,2,3,4)"),
            group(4, "(1,2,3)", "(1,2)(3,4)"),
            group(4, "(1,2,3,4)", "(1,3)"),
            group(8, "(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)"),
            group(5, "(1,2,3,4,5)"),
            group(6, "(1,2,3)", "(4,5,6)", "(1,4)(2,5)(3,6)"),
            group(7, "(1,2,3,4,5,6,7)", "(2,3,5)"),
            group(6, "(1,2,3,4,5,6)", "(2,6)(3,5)"),
        ]
        for G in cases:
            assert G.order == brute_order(G), G

    def test_order_certificate_product_of_orbits(self, s4):
        import math

        assert s4.order == math.prod(
            len(lvl.transversal) for lvl in s4._levels
        )


class TestMembership:
    def test_generator_is_member(self, s3):
        assert s3.contains(perm("(1,2)", 3))

    def test_identity_is_member(self, s3, a5):
        assert s3.contains(Perm.identity(3))
        assert a5.contains(Perm.identity(5))

    def test_odd_perm_not_in_a5(self, a5):
        assert not a5.contains(perm("(1,2)", 5))

    def test_membership_matches_bruteforce(self, a4):
        elems = bf.closure([g.images for g in a4.generators], 4)
        from itertools import permutations

        for images in permutations(range(4)):
            assert a4.contains(Perm(images)) == (images in elems)

    def test_degree_mismatch(self, s3):
        with pytest.raises(MalformedPermError):
            s3.contains(perm("(1,2)", 4))


class TestElements:
    def test_element_listing(self, s4):
        elems = s4.elements()
        assert len(elems) == 24
        assert len(set(elems)) == 24
        assert bf.closure([g.images for g in s4.generators], 4) == {
            e.images for e in elems
        }


class TestConjugacyClasses:
    def test_s3_classes(self, s3):
        cls = s3.conjugacy_classes()
        assert [c.size for c in cls] == [1, 3, 2]
        assert [c.element_order for c in cls] == [1, 2, 3]

    def test_trivial_group(self):
        G = bsgs_construct([], degree=3)
        assert len(G.conjugacy_classes()) == 1

    def test_a5_classes(self, a5):
        assert [c.size for c in a5.conjugacy_classes()] == [1, 15, 20, 12, 12]

    def test_classes_match_bruteforce(self, s4, a4, q8):
        for G in (s4, a4, q8):
            elems = bf.closure([g.images for g in G.generators], G.degree)
            expected = {
                frozenset(c) for c in bf.conjugacy_classes(elems)
            }
            got = {c.members for c in G.conjugacy_classes()}
            assert got == expected

    def test_class_sizes_sum_to_order(self, s4, a5, c3xc3_c2):
        for G in (s4, a5, c3xc3_c2):
            assert sum(c.size for c in G.conjugacy_classes()) == G.order

    def test_minimal_representatives(self, s4):
        for c in s4.conjugacy_classes():
            assert c.representative.images == min(c.members)

    def test_bound(self, s4):
        with pytest.raises(ResourceLimitError):
            s4.conjugacy_classes(bound=10)


class TestCentralizer:
    def test_s3_three_cycle(self, s3):
        C = s3.centralizer(perm("(1,2,3)", 3))
        assert C.order == 3

    def test_identity_gives_group(self, s4):
        assert s4.centralizer(Perm.identity(4)).order == 24

    def test_s4_double_transposition(self, s4):
        assert s4.centralizer(perm("(1,2)(3,4)", 4)).order == 8

    def test_not_a_member(self, a5):
        with pytest.raises(ValueError):
            a5.centralizer(perm("(1,2)", 5))

    def test_matches_bruteforce(self, s4):
        elems = bf.closure([g.images for g in s4.generators], 4)
        for images in sorted(elems)[:10]:
            C = s4.centralizer(Perm(images))
            assert C.element_set() == frozenset(bf.centralizer(elems, images))

    def test_class_equation(self, s4, a5):
        for G in (s4, a5):
            for c in G.conjugacy_classes():
                C = G.centralizer(c.representative)
                assert c.size * C.order == G.order


class TestNormalizer:
    def test_v4_normal_in_s4(self, s4):
        H = s4.subgroup([perm("(1,2)(3,4)", 4), perm("(1,3)(2,4)", 4)])
        assert s4.normalizer(H).order == 24

    def test_sylow3_self_normalizing_in_a4(self, a4):
        H = a4.subgroup([perm("(1,2,3)", 4)])
        assert a4.normalizer(H).order == 3

    def test_contains_subgroup(self, s4):
        H = s4.subgroup([perm("(1,2)", 4)])
        N = s4.normalizer(H)
        assert H.is_subset(N)

    def test_matches_bruteforce(self, s4):
        elems = bf.closure([g.images for g in s4.generators], 4)
        for gens in [["(1,2)"], ["(1,2,3)"], ["(1,2,3,4)"], ["(1,2)(3,4)"], ["(1,2)", "(3,4)"]]:
            H = s4.subgroup([perm(s, 4) for s in gens])
            N = s4.normalizer(H)
            assert N.element_set() == frozenset(
                bf.normalizer(elems, [h.images for h in H.elements()])
            )

    def test_not_a_subgroup(self, a5):
        H = bsgs_construct([perm("(1,2)", 5)], 5)
        with pytest.raises(ValueError):
            a5.normalizer(H)


class TestQuotients:
    def test_s4_mod_v4(self, s4):
        V = s4.subgroup([perm("(1,2)(3,4)", 4), perm("(1,3)(2,4)", 4)])
        Q, project = s4.quotient(V)
        assert Q.order == 6
        assert not Q.is_abelian()
        # surjective homomorphism with kernel V
        kernel = [g for g in s4.elements() if project(g).is_identity()]
        assert frozenset(k.images for k in kernel) == V.element_set()

    def test_quotient_by_self(self, s4):
        Q, _ = s4.quotient(s4)
        assert Q.order == 1

    def test_d8_mod_center(self, d8):
        Z = d8.center()
        assert Z.order == 2
        Q, _ = d8.quotient(Z)
        assert Q.order == 4
        assert all(c.element_order <= 2 for c in Q.conjugacy_classes())

    def test_non_normal_rejected(self, s4):
        H = s4.subgroup([perm("(1,2)", 4)])
        with pytest.raises(ValueError):
            s4.quotient(H)

    def test_homomorphism_property(self, s4):
        V = s4.subgroup([perm("(1,2)(3,4)", 4), perm("(1,3)(2,4)", 4)])
        _, project = s4.quotient(V)
        elems = s4.elements()
        for a in elems[::5]:
            for b in elems[::7]:
                assert project(a * b) == project(a) * project(b)


class TestStructure:
    def test_s4(self, s4):
        f = s4.structure_flags()
        assert f.is_solvable and not f.is_nilpotent
        assert f.derived_length == 3

    def test_d8_nilpotent(self, d8):
        assert d8.is_nilpotent()

    def test_a5_neither(self, a5):
        f = a5.structure_flags()
        assert not f.is_solvable and not f.is_nilpotent
        assert f.derived_length is None
        assert a5.derived_subgroup().order == 60

    def test_nilpotent_implies_solvable(self, q8, d8, s3):
        for G in (q8, d8, s3):
            f = G.structure_flags()
            assert not f.is_nilpotent or f.is_solvable


class TestNormalStructure:
    def test_o2_of_s4(self, s4):
        O = s4.o_sigma(PrimeSet([2]))
        assert O.order == 4
        assert all(g.order() in (1, 2) for g in O.elements())

    def test_o3_of_s4(self, s4):
        assert s4.o_sigma(PrimeSet([3])).order == 1

    def test_sigma_group_case(self, d8):
        assert d8.o_sigma(PrimeSet([2])).order == 8

    def test_o_sigma_maximal(self, s4, a4, q8, c3xc3_c2):
        for G in (s4, a4, q8, c3xc3_c2):
            for sigma in (PrimeSet([2]), PrimeSet([3]), PrimeSet([2, 3])):
                O = G.o_sigma(sigma)
                assert G.is_normal(O)
                assert sigma.is_sigma_number(O.order)
                for N in G.normal_subgroups():
                    if sigma.is_sigma_number(N.order):
                        assert N.is_subset(O)

    def test_normal_subgroups_of_s4(self, s4):
        orders = sorted(N.order for N in s4.normal_subgroups())
        assert orders == [1, 4, 12, 24]

    def test_composition_factors(self, s4, a5, q8):
        assert s4.composition_factor_orders() == (2, 2, 2, 3)
        assert a5.composition_factor_orders() == (60,)
        assert q8.composition_factor_orders() == (2, 2, 2)

    def test_separability(self, s4, a5):
        assert s4.is_sigma_separable(PrimeSet([2]))
        assert not a5.is_sigma_separable(PrimeSet([2]))
        assert a5.is_sigma_separable(PrimeSet([2, 3, 5]))
        assert a5.is_sigma_separable(PrimeSet())


class TestHallAndSigmaClasses:
    def test_hall_2_of_s4(self, s4):
        H = s4.hall_sigma_subgroup(PrimeSet([2]))
        assert H.order == 8

    def test_hall_full(self, s4):
        assert s4.hall_sigma_subgroup(PrimeSet([2, 3])).order == 24

    def test_hall_3_of_a4(self, a4):
        assert a4.hall_sigma_subgroup(PrimeSet([3])).order == 3

    def test_hall_missing_in_a5(self, a5):
        assert a5.find_hall_sigma_subgroup(PrimeSet([2, 5])) is None
        with pytest.raises(RuntimeError):
            a5.hall_sigma_subgroup(PrimeSet([2, 5]))

    def test_hall_consistency(self, s4, a4, d8, c3xc3_c2):
        for G in (s4, a4, d8, c3xc3_c2):
            for sigma in (PrimeSet([2]), PrimeSet([3]), PrimeSet([2, 3])):
                H = G.find_hall_sigma_subgroup(sigma)
                assert H is not None
                assert H.order == sigma_part(G.order, sigma)

    def test_sigma_classes(self, s4, s3, a5):
        assert len(s4.sigma_element_classes(PrimeSet([3]))) == 2
        assert len(s3.sigma_element_classes(PrimeSet([2]))) == 2
        assert len(a5.sigma_element_classes(PrimeSet())) == 1


class TestCosetAction:
    def test_image_of_coset_action(self, s4):
        H = s4.subgroup([perm("(1,2)", 4), perm("(1,2,3)", 4)])  # S3, index 4
        image, project = s4.coset_action(H)
        assert image.degree == 4
        assert image.order == 24  # faithful: core of S3 in S4 is trivial


class TestMoreInvariants:
    def test_normalizer_idempotent(self, s4):
        H = s4.subgroup([perm("(1,2)", 4)])
        N = s4.normalizer(H)
        NN = s4.normalizer(N)
        assert N.is_subset(NN)

    def test_exponent_divides_order(self, s4, a5, q8, c3xc3_c2):
        for G in (s4, a5, q8, c3xc3_c2):
            assert G.order % G.exponent() == 0

    def test_composition_factors_of_solvable_groups_are_prime_multiset(self):
        # for solvable G the factor multiset equals the prime factorization
        from nilweight.corpus import builtin_corpus
        from nilweight.sigma import factorize

        for d in builtin_corpus():
            G = d.build()
            if not G.is_solvable() or G.order > 150:
                continue
            expected = sorted(p for p, e in factorize(G.order) for _ in range(e))
            assert list(G.composition_factor_orders()) == expected, d.name
