import numpy as np
import pytest

from qmetric.errors import ConfigError, GroupError
from qmetric.groups import (FiniteGroupTable, FreeAbelian, GroupElement,
                            GroupSpec, InfiniteDihedral, ProductZFinite,
                            builtin_finite_table, decode_element,
                            encode_element, group_from_json, make_group,
                            word_eval)

from conftest import random_element


def dihedral_oracle(a, b):
    # direct evaluation of the semidirect rule (m,s)(m',s') = (m+(-1)^s m', s xor s')
    m, s = a.z[0], a.f
    mp, sp = b.z[0], b.f
    return GroupElement((m + (mp if s == 0 else -mp),), s ^ sp)


class TestFiniteGroupTable:
    def test_cyclic_groups_valid(self):
        for n in (1, 2, 3, 6):
            t = FiniteGroupTable.cyclic(n)
            assert t.order == n
            assert t.table[t.identity_index] == tuple(range(n))

    def test_s3_nonabelian(self):
        t = FiniteGroupTable.symmetric(3)
        assert t.order == 6
        assert any(t.table[i][j] != t.table[j][i]
                   for i in range(6) for j in range(6))

    def test_inverses(self):
        t = FiniteGroupTable.symmetric(3)
        for i in range(t.order):
            assert t.table[i][t.inverse[i]] == t.identity_index

    def test_non_associative_rejected_with_triple(self):
        # order-5 loop with identity and inverses that fails (1*1)*2 = 1*(1*2)
        rows = [[0, 1, 2, 3, 4],
                [1, 0, 3, 4, 2],
                [2, 4, 0, 1, 3],
                [3, 2, 4, 0, 1],
                [4, 3, 1, 2, 0]]
        with pytest.raises(GroupError, match="associative"):
            FiniteGroupTable.from_table(rows)

    def test_missing_inverse_rejected(self):
        rows = [[0, 1], [1, 1]]
        with pytest.raises(GroupError):
            FiniteGroupTable.from_table(rows)

    def test_builtins(self):
        assert builtin_finite_table("z2").order == 2
        assert builtin_finite_table("z3").order == 3
        assert builtin_finite_table("s3").order == 6
        with pytest.raises(ConfigError):
            builtin_finite_table("q8")


class TestMul:
    def test_z2_componentwise(self, z2_group):
        a = GroupElement((1, 2))
        b = GroupElement((3, -5))
        assert z2_group.mul(a, b) == GroupElement((4, -3))

    def test_dihedral_examples(self, dihedral):
        assert dihedral.mul(GroupElement((2,), 0), GroupElement((3,), 1)) \
            == GroupElement((5,), 1)
        assert dihedral.mul(GroupElement((2,), 1), GroupElement((3,), 0)) \
            == GroupElement((-1,), 1)

    def test_dihedral_involution(self, dihedral):
        flip = GroupElement((0,), 1)
        assert dihedral.mul(flip, flip) == dihedral.identity

    def test_product_direct(self, z_x_z2):
        assert z_x_z2.mul(GroupElement((2,), 1), GroupElement((3,), 1)) \
            == GroupElement((5,), 0)

    def test_shape_mismatch_rejected(self, z2_group, dihedral):
        with pytest.raises(GroupError):
            z2_group.mul(GroupElement((1,)), GroupElement((1, 2)))
        with pytest.raises(GroupError):
            dihedral.mul(GroupElement((1,)), GroupElement((0,), 1))

    def test_dihedral_matches_oracle(self, dihedral):
        rng = np.random.default_rng(3)
        for _ in range(500):
            a = random_element(rng, dihedral)
            b = random_element(rng, dihedral)
            assert dihedral.mul(a, b) == dihedral_oracle(a, b)

    @pytest.mark.parametrize("family", ["z", "z2", "zxz2", "dihedral"])
    def test_associativity_random(self, family, z_group, z2_group, z_x_z2, dihedral):
        group = {"z": z_group, "z2": z2_group, "zxz2": z_x_z2,
                 "dihedral": dihedral}[family]
        rng = np.random.default_rng(7)
        for _ in range(1000):
            a, b, c = (random_element(rng, group) for _ in range(3))
            assert group.mul(group.mul(a, b), c) == group.mul(a, group.mul(b, c))


class TestInv:
    def test_z2(self, z2_group):
        assert z2_group.inv(GroupElement((4, -3))) == GroupElement((-4, 3))

    def test_dihedral_reflection_oracle(self, dihedral):
        # oracle: solve (m,1)(x,s) = e with the semidirect rule
        for m in range(-6, 7):
            a = GroupElement((m,), 1)
            inv = dihedral.inv(a)
            assert dihedral_oracle(a, inv) == dihedral.identity
            assert inv == a

    def test_product(self, z_x_z2):
        assert z_x_z2.inv(GroupElement((1,), 1)) == GroupElement((-1,), 1)

    @pytest.mark.parametrize("family", ["z2", "zxz2", "dihedral"])
    def test_involution(self, family, z2_group, z_x_z2, dihedral):
        group = {"z2": z2_group, "zxz2": z_x_z2, "dihedral": dihedral}[family]
        rng = np.random.default_rng(11)
        for _ in range(300):
            a = random_element(rng, group)
            assert group.inv(group.inv(a)) == a
            assert group.mul(a, group.inv(a)) == group.identity


class TestWordEval:
    def test_z_cancellation(self, z_group):
        # generators are [+1, -1]
        assert word_eval(z_group, [0, 0, 1]) == GroupElement((1,))

    def test_empty_word(self, dihedral):
        assert word_eval(dihedral, []) == dihedral.identity

    def test_dihedral_word_matches_fold(self, dihedral):
        rng = np.random.default_rng(13)
        for _ in range(200):
            word = list(rng.integers(0, len(dihedral.generators),
                                     size=rng.integers(0, 9)))
            expected = dihedral.identity
            for idx in word:
                expected = dihedral_oracle(expected, dihedral.generators[idx])
            assert word_eval(dihedral, word) == expected

    def test_index_out_of_range(self, z_group):
        with pytest.raises(GroupError, match="out of range"):
            word_eval(z_group, [5])

    def test_canonicality(self, z2_group):
        # two different words with the same abelianized content agree exactly
        assert word_eval(z2_group, [0, 2, 0]) == word_eval(z2_group, [0, 0, 2])


class TestConstruction:
    def test_make_group_families(self):
        assert make_group(GroupSpec("free_abelian", rank=3)).family == "free_abelian"
        spec = GroupSpec("product_z_finite", finite=FiniteGroupTable.cyclic(1))
        g = make_group(spec)
        # trivial finite factor behaves like Z
        assert g.mul(GroupElement((1,), 0), GroupElement((2,), 0)) \
            == GroupElement((3,), 0)
        assert len(g.generators) == 2
        assert make_group(GroupSpec("infinite_dihedral")).shell_bound == 4

    def test_unknown_family(self):
        with pytest.raises(GroupError):
            make_group(GroupSpec("free_group"))

    def test_default_generators_symmetric(self, z2_group, z_x_z2, dihedral):
        for group in (z2_group, z_x_z2, dihedral):
            gens = set(group.generators)
            assert all(group.inv(g) in gens for g in gens)

    def test_generator_override_must_be_symmetric(self):
        with pytest.raises(GroupError, match="symmetric"):
            FreeAbelian(1, [GroupElement((1,))])

    def test_generator_override(self):
        gens = [GroupElement((2,)), GroupElement((-2,))]
        group = FreeAbelian(1, gens)
        assert group.generators == tuple(gens)


class TestJson:
    def test_round_trip_families(self):
        g = group_from_json({"family": "free_abelian", "rank": 2})
        assert isinstance(g, FreeAbelian) and g.rank == 2
        g = group_from_json({"family": "product_z_finite",
                             "finite": {"name": "s3"}})
        assert isinstance(g, ProductZFinite) and g.finite.order == 6
        g = group_from_json({"family": "product_z_finite",
                             "finite": {"order": 2, "table": [[0, 1], [1, 0]]}})
        assert g.finite.order == 2
        assert isinstance(group_from_json({"family": "infinite_dihedral"}),
                          InfiniteDihedral)

    def test_generators_override_via_json(self):
        g = group_from_json({"family": "free_abelian", "rank": 1,
                             "generators": [[2], [-2]]})
        assert g.generators == (GroupElement((2,)), GroupElement((-2,)))

    def test_bad_specs(self):
        with pytest.raises(ConfigError):
            group_from_json({"family": "free_product"})
        with pytest.raises(ConfigError):
            group_from_json({"family": "free_abelian", "rank": 0})
        with pytest.raises(ConfigError):
            group_from_json({"family": "product_z_finite", "finite": {}})
        with pytest.raises(ConfigError):
            group_from_json("not valid json {")

    def test_element_codec(self, z2_group, z_x_z2):
        el = decode_element(z2_group, [1, -2])
        assert el == GroupElement((1, -2))
        assert encode_element(z2_group, el) == [1, -2]
        el = decode_element(z_x_z2, [3, 1])
        assert el == GroupElement((3,), 1)
        assert encode_element(z_x_z2, el) == [3, 1]
        with pytest.raises(ConfigError):
            decode_element(z_x_z2, [3, 7])
