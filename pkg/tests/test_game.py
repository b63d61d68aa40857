import dataclasses

import numpy as np
import pytest

from qminority import channels, game, linalg


def noiseless(kind="phase_flip"):
    return channels.ChannelSpec(kind, 0.0, 0.0)


def ne_config(kind, p, mu, gamma=np.pi / 2):
    spec = channels.ChannelSpec(kind, p, mu)
    return game.GameConfig(gamma=gamma, noise_pre=spec, noise_post=spec)


class TestEntangler:
    def test_gamma_zero_is_identity(self):
        assert np.array_equal(game.entangler(0.0), np.eye(16))

    def test_max_entangling_on_ground_state(self):
        # J|0000> = (|0000> + i|1111>)/sqrt(2) at gamma = pi/2
        v = game.entangler(np.pi / 2)[:, 0]
        expected = np.zeros(16, dtype=complex)
        expected[0] = 1 / np.sqrt(2)
        expected[15] = 1j / np.sqrt(2)
        assert np.allclose(v, expected, atol=1e-15)

    @pytest.mark.parametrize("gamma", np.linspace(0, np.pi / 2, 7))
    def test_matches_matrix_exponential(self, gamma):
        # oracle: exponentiate i*gamma/2 * X^(x)4 through its eigenbasis
        x4 = linalg.tensor([linalg.pauli(1)] * 4)
        evals, evecs = np.linalg.eigh(x4)
        expm = evecs @ np.diag(np.exp(1j * gamma / 2 * evals)) @ evecs.conj().T
        assert np.max(np.abs(game.entangler(gamma) - expm)) < 1e-14

    @pytest.mark.parametrize("gamma", [-0.1, np.pi / 2 + 0.01, 3.0])
    def test_range(self, gamma):
        with pytest.raises(ValueError):
            game.entangler(gamma)


class TestStrategyUnitary:
    def test_identity(self):
        u = game.strategy_unitary(game.StrategyTriple(0.0, 0.0, 0.0))
        assert np.array_equal(u, np.eye(2))

    def test_full_flip(self):
        u = game.strategy_unitary(game.StrategyTriple(np.pi, 0.0, 0.0))
        assert np.allclose(u, 1j * linalg.pauli(1), atol=1e-15)

    def test_structure(self):
        theta, alpha, beta = 1.1, 0.7, -2.0
        u = game.strategy_unitary(game.StrategyTriple(theta, alpha, beta))
        assert abs(u[0, 0] - np.cos(theta / 2) * np.exp(1j * alpha)) < 1e-15
        assert abs(u[0, 1] - 1j * np.sin(theta / 2) * np.exp(1j * beta)) < 1e-15
        # special unitary: the determinant is exactly cos^2 + sin^2
        assert abs(np.linalg.det(u) - 1.0) < 1e-14
        assert np.max(np.abs(u @ u.conj().T - np.eye(2))) < 1e-14

    @pytest.mark.parametrize("triple", [
        (-0.1, 0.0, 0.0), (np.pi + 0.1, 0.0, 0.0),
        (1.0, -np.pi - 0.1, 0.0), (1.0, 0.0, np.pi + 0.1),
    ])
    def test_range(self, triple):
        with pytest.raises(ValueError):
            game.strategy_unitary(game.StrategyTriple(*triple))

    def test_ne_strategy(self):
        ne = game.ne_strategy()
        assert ne == (np.pi / 2, -np.pi / 16, np.pi / 16)


class TestMinorityPayoff:
    def test_truth_table(self):
        # sole minority: exactly one player differs from the other three
        for outcome in range(16):
            bits = [(outcome >> (3 - i)) & 1 for i in range(4)]
            ones = sum(bits)
            for player in (1, 2, 3, 4):
                expected = 0.0
                if ones == 1 and bits[player - 1] == 1:
                    expected = 1.0
                if ones == 3 and bits[player - 1] == 0:
                    expected = 1.0
                assert game.minority_payoff(outcome, player) == expected

    def test_examples(self):
        assert game.minority_payoff(0b0111, 1) == 1.0
        assert game.minority_payoff(0b1000, 1) == 1.0
        assert game.minority_payoff(0b0111, 2) == 0.0
        assert game.minority_payoff(0b0000, 3) == 0.0
        assert game.minority_payoff(0b0101, 4) == 0.0

    def test_complement_invariance(self):
        for outcome in range(16):
            for player in (1, 2, 3, 4):
                assert (game.minority_payoff(outcome, player)
                        == game.minority_payoff(15 - outcome, player))

    def test_at_most_one_winner(self):
        for outcome in range(16):
            assert sum(game.minority_payoff(outcome, k) for k in (1, 2, 3, 4)) <= 1.0

    def test_validation(self):
        with pytest.raises(ValueError):
            game.minority_payoff(16, 1)
        with pytest.raises(ValueError):
            game.minority_payoff(0, 5)


class TestGameConfig:
    def test_defaults_to_ne_profile(self):
        cfg = game.GameConfig(gamma=np.pi / 2, noise_pre=noiseless(), noise_post=noiseless())
        assert cfg.strategies == (game.ne_strategy(),) * 4

    def test_rejects_mixed_kinds(self):
        with pytest.raises(ValueError, match="kind"):
            game.GameConfig(gamma=0.5,
                            noise_pre=channels.ChannelSpec("bit_flip", 0.1, 0.0),
                            noise_post=channels.ChannelSpec("phase_flip", 0.1, 0.0))

    def test_rejects_wrong_player_count(self):
        with pytest.raises(ValueError):
            game.GameConfig(gamma=0.5, noise_pre=noiseless(), noise_post=noiseless(),
                            strategies=(game.ne_strategy(),) * 3)


class TestRunGame:
    @pytest.mark.parametrize("kind", channels.KINDS)
    def test_noiseless_ne_payoff(self, kind):
        _, payoffs = game.run_game(ne_config(kind, 0.0, 0.0))
        assert payoffs == pytest.approx((0.25,) * 4, abs=1e-12)

    def test_final_state_is_valid(self):
        rho, _ = game.run_game(ne_config("depolarizing", 0.4, 0.6))
        assert linalg.validate_density(rho).ok

    def test_no_entanglement_uniform(self):
        # gamma=0 and balanced moves: sixteen equally likely outcomes
        _, payoffs = game.run_game(ne_config("phase_flip", 0.0, 0.0, gamma=0.0))
        assert payoffs == pytest.approx((0.125,) * 4, abs=1e-12)

    def test_no_entanglement_same_move_loses(self):
        cfg = game.GameConfig(gamma=0.0, noise_pre=noiseless(), noise_post=noiseless(),
                              strategies=(game.StrategyTriple(0.0, 0.0, 0.0),) * 4)
        _, payoffs = game.run_game(cfg)
        assert payoffs == pytest.approx((0.0,) * 4, abs=1e-14)

    def test_classical_unilateral_flip_wins(self):
        flip = game.StrategyTriple(np.pi, 0.0, 0.0)
        stay = game.StrategyTriple(0.0, 0.0, 0.0)
        cfg = game.GameConfig(gamma=0.0, noise_pre=noiseless(), noise_post=noiseless(),
                              strategies=(flip, stay, stay, stay))
        _, payoffs = game.run_game(cfg)
        assert payoffs == pytest.approx((1.0, 0.0, 0.0, 0.0), abs=1e-12)

    def test_full_depolarizing_randomizes(self):
        _, payoffs = game.run_game(ne_config("depolarizing", 1.0, 0.0))
        assert payoffs == pytest.approx((0.125,) * 4, abs=1e-12)

    def test_balanced_phase_flip(self):
        _, payoffs = game.run_game(ne_config("phase_flip", 0.5, 0.0))
        assert payoffs == pytest.approx((0.125,) * 4, abs=1e-12)

    def test_phase_flip_memory_curve_point(self):
        # frozen value; equals (1 + f)/8 with f = 0.3831424 at p=0.4, mu=0.6
        _, payoffs = game.run_game(ne_config("phase_flip", 0.4, 0.6))
        assert payoffs == pytest.approx((0.1728928,) * 4, abs=1e-12)

    def test_deterministic_flip_noise_kills_payoff(self):
        # p=1 bit flip applies X on all four qubits at both noise stages.
        # The flip before the moves turns the shared resource into its
        # phase-inverted twin, the moves do not commute with it, and every
        # outcome lands on an even split: payoff zero, not a cancellation.
        for kind in ("bit_flip", "bit_phase_flip"):
            _, payoffs = game.run_game(ne_config(kind, 1.0, 0.0))
            assert payoffs == pytest.approx((0.0,) * 4, abs=1e-12)

    def test_full_damping_kills_payoff(self):
        # everything relaxes to |0000> which the final gate spreads over
        # the two unanimous outcomes only
        _, payoffs = game.run_game(ne_config("amplitude_damping", 1.0, 0.0))
        assert payoffs == pytest.approx((0.0,) * 4, abs=1e-12)

    @pytest.mark.parametrize("kind", channels.KINDS)
    def test_players_equal_at_symmetric_profile(self, kind):
        _, payoffs = game.run_game(ne_config(kind, 0.4, 0.6))
        assert max(payoffs) - min(payoffs) < 1e-12

    def test_payoffs_bounded(self):
        for kind in channels.KINDS:
            for p in (0.0, 0.3, 1.0):
                _, payoffs = game.run_game(ne_config(kind, p, 0.5))
                assert all(0.0 <= x <= 1.0 for x in payoffs)
                assert sum(payoffs) <= 1.0 + 1e-12

    def test_asymmetric_noise_stages(self):
        cfg = game.GameConfig(gamma=np.pi / 2,
                              noise_pre=channels.ChannelSpec("phase_flip", 0.3, 0.5),
                              noise_post=channels.ChannelSpec("phase_flip", 0.0, 0.0))
        rho, payoffs = game.run_game(cfg)
        assert linalg.validate_density(rho).ok
        assert all(0.0 <= x <= 1.0 for x in payoffs)


class TestPayoffCurve:
    def test_vary_p_endpoints(self):
        curve = game.payoff_curve("phase_flip", "p",
                                  {"mu": 0.0, "gamma": np.pi / 2}, points=11)
        assert len(curve) == 11
        assert curve[0].p == 0.0 and curve[-1].p == 1.0
        assert curve[0].payoffs == pytest.approx((0.25,) * 4, abs=1e-12)
        assert curve[5].payoffs == pytest.approx((0.125,) * 4, abs=1e-12)

    def test_vary_gamma_range(self):
        curve = game.payoff_curve("depolarizing", "gamma",
                                  {"p": 0.3, "mu": 0.3}, points=5)
        assert curve[0].gamma == 0.0
        assert curve[-1].gamma == pytest.approx(np.pi / 2)
        # entanglement can only help at the symmetric profile
        assert curve[-1].payoffs[0] > curve[0].payoffs[0]

    def test_vary_mu(self):
        curve = game.payoff_curve("bit_flip", "mu",
                                  {"p": 0.7, "gamma": np.pi / 2}, points=3)
        assert [pt.mu for pt in curve] == [0.0, 0.5, 1.0]
        assert all(pt.p == 0.7 for pt in curve)

    def test_rejects_bad_axis(self):
        with pytest.raises(ValueError):
            game.payoff_curve("bit_flip", "q", {"mu": 0.0, "gamma": 0.0}, points=3)

    def test_rejects_wrong_fixed_keys(self):
        with pytest.raises(ValueError):
            game.payoff_curve("bit_flip", "p", {"mu": 0.0}, points=3)
        with pytest.raises(ValueError):
            game.payoff_curve("bit_flip", "p", {"mu": 0.0, "gamma": 0.0, "p": 0.1}, points=3)

    def test_rejects_too_few_points(self):
        with pytest.raises(ValueError):
            game.payoff_curve("bit_flip", "p", {"mu": 0.0, "gamma": 0.0}, points=1)


class TestBestResponseSearch:
    def test_classical_flip_dominates(self):
        # gamma=0 against three stay-players: flipping wins outright, and
        # every (pi, alpha, beta) ties at payoff 1, so the tie-break must
        # return the lowest alpha and beta lattice points
        stay = game.StrategyTriple(0.0, 0.0, 0.0)
        cfg = game.GameConfig(gamma=0.0, noise_pre=noiseless(), noise_post=noiseless(),
                              strategies=(stay,) * 4)
        best, payoff = game.best_response_search(cfg, player=1, grid_points=9)
        assert payoff == pytest.approx(1.0, abs=1e-12)
        assert best == pytest.approx((np.pi, -np.pi, -np.pi))

    def test_ne_profile_is_stable(self):
        cfg = ne_config("phase_flip", 0.0, 0.0)
        best, payoff = game.best_response_search(cfg, player=2, grid_points=9)
        assert payoff <= 0.25 + 1e-6

    def test_deterministic(self):
        cfg = ne_config("phase_flip", 0.0, 0.0)
        a = game.best_response_search(cfg, player=1, grid_points=5)
        b = game.best_response_search(cfg, player=1, grid_points=5)
        assert a == b

    def test_validation(self):
        cfg = ne_config("phase_flip", 0.0, 0.0)
        with pytest.raises(ValueError):
            game.best_response_search(cfg, player=0, grid_points=5)
        with pytest.raises(ValueError):
            game.best_response_search(cfg, player=1, grid_points=1)
