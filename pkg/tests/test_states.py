import numpy as np
import pytest

from qmetric.errors import ConfigError, ResourceError, StateError
from qmetric.groups import FreeAbelian, GroupElement
from qmetric.opalgebra import AlgebraElement
from qmetric.states import (CharacterState, DensityState, OneState, TableState,
                            TraceState, VectorState, kappa_bounds, pd_check,
                            state_from_json)
from qmetric.wordlength import enumerate_ball


class TestBasicStates:
    def test_trace(self, z2_group):
        phi = TraceState(z2_group)
        assert phi.coeff(z2_group.identity) == 1.0
        assert phi.coeff(GroupElement((1, 0))) == 0.0
        ball = enumerate_ball(z2_group, 2)
        arr = phi.coeff_array(ball)
        assert arr[0] == 1.0 and np.all(arr[1:] == 0.0)

    def test_one(self, dihedral):
        phi = OneState(dihedral)
        ball = enumerate_ball(dihedral, 3)
        assert np.all(phi.coeff_array(ball) == 1.0)

    def test_character_closed_form(self, z_group):
        phi = CharacterState(z_group, [np.exp(1j * 0.3)])
        for m in range(-5, 6):
            assert phi.coeff(GroupElement((m,))) == pytest.approx(np.exp(1j * 0.3 * m))

    def test_character_array_matches_pointwise(self, z2_group):
        phi = CharacterState(z2_group, [np.exp(1j * 0.7), np.exp(-1j * 1.1)])
        ball = enumerate_ball(z2_group, 4)
        arr = phi.coeff_array(ball)
        for i, g in enumerate(ball.elements):
            assert arr[i] == pytest.approx(phi.coeff(g), abs=1e-12)

    def test_character_requires_free_abelian(self, dihedral):
        with pytest.raises(StateError):
            CharacterState(dihedral, [1.0])

    def test_character_unit_circle(self, z_group):
        with pytest.raises(StateError):
            CharacterState(z_group, [1.5])
        with pytest.raises(StateError):
            CharacterState(z_group, [1.0, 1.0])


class TestTableState:
    def test_lookup_and_zero_extension(self, z_group):
        g = GroupElement((1,))
        phi = TableState(z_group, {g: 0.5})
        assert phi.coeff(g) == 0.5
        assert phi.coeff(GroupElement((9,))) == 0.0
        assert phi.coeff(z_group.identity) == 1.0

    def test_strict_mode_raises(self, z_group):
        phi = TableState(z_group, {GroupElement((1,)): 0.5}, extend_zero=False)
        with pytest.raises(StateError, match="outside"):
            phi.coeff(GroupElement((2,)))

    def test_identity_must_be_one(self, z_group):
        with pytest.raises(StateError, match="unital"):
            TableState(z_group, {z_group.identity: 0.9})


class TestVectorState:
    def test_delta_vector_is_trace(self, dihedral):
        phi = VectorState(dihedral, {dihedral.identity: 1.0})
        ball = enumerate_ball(dihedral, 3)
        assert np.allclose(phi.coeff_array(ball), TraceState(dihedral).coeff_array(ball))

    def test_two_point_vector_closed_form(self, z_group):
        # xi = (delta_0 + delta_1)/sqrt(2): phi(lam_m) = <lam_m xi, xi>
        s = 1 / np.sqrt(2)
        phi = VectorState(z_group, {GroupElement((0,)): s, GroupElement((1,)): s})
        assert phi.coeff(GroupElement((0,))) == pytest.approx(1.0)
        assert phi.coeff(GroupElement((1,))) == pytest.approx(0.5)
        assert phi.coeff(GroupElement((-1,))) == pytest.approx(0.5)
        assert phi.coeff(GroupElement((2,))) == pytest.approx(0.0)

    def test_normalization_enforced(self, z_group):
        with pytest.raises(StateError, match="normalized"):
            VectorState(z_group, {GroupElement((0,)): 0.9})

    def test_hermitian_symmetry(self, dihedral):
        xi = {GroupElement((0,), 0): 0.6, GroupElement((1,), 1): 0.8j}
        phi = VectorState(dihedral, xi)
        ball = enumerate_ball(dihedral, 3)
        for g in ball.elements:
            assert phi.coeff(dihedral.inv(g)) \
                == pytest.approx(np.conj(phi.coeff(g)), abs=1e-12)


class TestDensityState:
    def test_reference_density(self, z_group):
        # b = lam_0 + lam_1: rho = (2 lam_0 + lam_1 + lam_-1)/2, phi(lam_g) = rho(g^-1)
        b = AlgebraElement({GroupElement((0,)): 1.0, GroupElement((1,)): 1.0})
        phi = DensityState(z_group, b)
        assert phi.coeff(GroupElement((0,))) == pytest.approx(1.0)
        assert phi.coeff(GroupElement((1,))) == pytest.approx(0.5)
        assert phi.coeff(GroupElement((-1,))) == pytest.approx(0.5)
        assert phi.coeff(GroupElement((2,))) == 0.0

    def test_rho_is_normalized_and_positive_type(self, dihedral):
        b = AlgebraElement({GroupElement((0,), 0): 1.0,
                            GroupElement((1,), 0): 1j,
                            GroupElement((0,), 1): 0.5})
        phi = DensityState(dihedral, b)
        assert phi.coeff(dihedral.identity) == pytest.approx(1.0)
        assert pd_check(phi, enumerate_ball(dihedral, 3)).passed

    def test_zero_b_rejected(self, z_group):
        with pytest.raises(StateError):
            DensityState(z_group, AlgebraElement({}))


class TestPdCheck:
    def test_positive_states_pass(self, z_group):
        ball = enumerate_ball(z_group, 6)
        for phi in (TraceState(z_group), OneState(z_group),
                    CharacterState(z_group, [np.exp(2j)])):
            result = pd_check(phi, ball)
            assert result.passed
            assert result.min_eigenvalue >= -1e-10

    def test_non_positive_table_fails(self, z_group):
        # phi(lam_1) = 2 violates |phi(lam_g)| <= 1
        phi = TableState(z_group, {GroupElement((1,)): 2.0,
                                   GroupElement((-1,)): 2.0})
        result = pd_check(phi, enumerate_ball(z_group, 3))
        assert not result.passed
        assert result.min_eigenvalue < -0.5

    def test_cap(self, z2_group):
        phi = TraceState(z2_group)
        with pytest.raises(ResourceError):
            pd_check(phi, enumerate_ball(z2_group, 40))


class TestKappaBounds:
    def test_reference_interval(self, z_group):
        b = AlgebraElement({GroupElement((0,)): 1.0, GroupElement((1,)): 1.0})
        phi = DensityState(z_group, b)
        kb = kappa_bounds(phi, enumerate_ball(z_group, 100))
        assert kb.kappa_upper == pytest.approx(4.0, abs=1e-12)
        assert kb.kappa_lower <= kb.kappa_upper
        # the operator norm of rho is 2 exactly; the truncation closes in on 4
        assert kb.kappa_lower == pytest.approx(4.0, abs=1e-3)

    def test_trace_density(self, z_group):
        phi = DensityState(z_group, AlgebraElement.lam(GroupElement((0,))))
        kb = kappa_bounds(phi, enumerate_ball(z_group, 10))
        assert kb.kappa_lower == pytest.approx(1.0, abs=1e-9)
        assert kb.kappa_upper == pytest.approx(1.0, abs=1e-12)

    def test_requires_density_state(self, z_group):
        with pytest.raises(StateError):
            kappa_bounds(TraceState(z_group), enumerate_ball(z_group, 3))


class TestJson:
    def test_all_kinds(self, z_group):
        assert isinstance(state_from_json(z_group, {"kind": "trace"}), TraceState)
        assert isinstance(state_from_json(z_group, {"kind": "one"}), OneState)
        phi = state_from_json(z_group, {"kind": "character",
                                        "z": [{"re": -1.0, "im": 0.0}]})
        assert phi.coeff(GroupElement((1,))) == pytest.approx(-1.0)
        s = 1 / np.sqrt(2)
        phi = state_from_json(z_group, {"kind": "vector", "support": [
            {"element": [0], "re": s}, {"element": [1], "re": s}]})
        assert isinstance(phi, VectorState)
        phi = state_from_json(z_group, {"kind": "density", "b": [
            {"element": [0], "re": 1.0}, {"element": [1], "re": 1.0}]})
        assert phi.coeff(GroupElement((1,))) == pytest.approx(0.5)
        phi = state_from_json(z_group, {"kind": "table", "extend_zero": True,
                                        "entries": [{"element": [2], "re": 0.25}]})
        assert phi.coeff(GroupElement((2,))) == 0.25

    def test_json_text_input(self, z_group):
        phi = state_from_json(z_group, '{"kind": "trace"}')
        assert isinstance(phi, TraceState)

    def test_errors_become_config_errors(self, z_group):
        with pytest.raises(ConfigError):
            state_from_json(z_group, {"kind": "spectral"})
        with pytest.raises(ConfigError):
            state_from_json(z_group, {"kind": "character"})
        with pytest.raises(ConfigError):
            state_from_json(z_group, {"kind": "character",
                                      "z": [{"re": 2.0, "im": 0.0}]})
        with pytest.raises(ConfigError):
            state_from_json(z_group, {"kind": "vector",
                                      "support": [{"element": [0], "re": 0.5}]})
        with pytest.raises(ConfigError):
            state_from_json(z_group, "{bad json")
