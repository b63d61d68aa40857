"""Four-player Minority game played through an entangling protocol.

The register starts in |0000>, passes through the entangling gate, takes a
noise hit, the players apply their local moves, the noise hits again, and
the inverse gate closes the protocol. Payoffs read off the computational
basis: a player scores 1 exactly when alone on the minority side of a 3-1
split. Player k owns qubit k, with player 1 on the most significant bit.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import channels, linalg


class StrategyTriple(NamedTuple):
    theta: float
    alpha: float
    beta: float


class GameResult(NamedTuple):
    state: np.ndarray
    payoffs: tuple


class CurvePoint(NamedTuple):
    p: float
    mu: float
    gamma: float
    payoffs: tuple


_X4 = linalg.tensor([linalg.pauli(1)] * 4)


def entangler(gamma: float) -> np.ndarray:
    """Collective entangling gate: exp(i gamma/2 XXXX) on the four qubits."""
    if not 0.0 <= gamma <= np.pi / 2:
        raise ValueError(f"gamma must be in [0, pi/2], got {gamma}")
    return np.cos(gamma / 2) * np.eye(16) + 1j * np.sin(gamma / 2) * _X4


def strategy_unitary(triple: StrategyTriple) -> np.ndarray:
    """SU(2) move for one player.

    theta in [0, pi] sets the mixing between staying and flipping, alpha and
    beta in [-pi, pi] are the relative phases of the two branches.
    """
    theta, alpha, beta = triple
    if not 0.0 <= theta <= np.pi:
        raise ValueError(f"theta must be in [0, pi], got {theta}")
    if not -np.pi <= alpha <= np.pi:
        raise ValueError(f"alpha must be in [-pi, pi], got {alpha}")
    if not -np.pi <= beta <= np.pi:
        raise ValueError(f"beta must be in [-pi, pi], got {beta}")
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([
        [np.exp(1j * alpha) * c, 1j * np.exp(1j * beta) * s],
        [1j * np.exp(-1j * beta) * s, np.exp(-1j * alpha) * c],
    ])


def ne_strategy() -> StrategyTriple:
    """Symmetric equilibrium move of the noiseless maximally entangled game."""
    return StrategyTriple(np.pi / 2, -np.pi / 16, np.pi / 16)


def minority_payoff(outcome: int, player: int) -> float:
    """1.0 if ``player`` is the sole minority in basis state ``outcome``."""
    if not 0 <= outcome <= 15:
        raise ValueError(f"outcome must be a 4-bit index, got {outcome}")
    if player not in (1, 2, 3, 4):
        raise ValueError(f"player must be 1..4, got {player}")
    ones = bin(outcome).count("1")
    own = (outcome >> (4 - player)) & 1
    if ones == 1:
        return 1.0 if own == 1 else 0.0
    if ones == 3:
        return 1.0 if own == 0 else 0.0
    return 0.0


_PAYOFF_TABLE = np.array([[minority_payoff(outcome, k + 1) for outcome in range(16)]
                          for k in range(4)])


@dataclass(frozen=True)
class GameConfig:
    """Full parametrization of one protocol run.

    Both noise stages must use the same channel kind; their strengths may
    differ. ``strategies`` defaults to the symmetric equilibrium profile.
    """

    gamma: float
    noise_pre: channels.ChannelSpec
    noise_post: channels.ChannelSpec
    strategies: tuple = None

    def __post_init__(self):
        if self.noise_pre.kind != self.noise_post.kind:
            raise ValueError("noise stages must share one channel kind")
        strategies = self.strategies
        if strategies is None:
            strategies = (ne_strategy(),) * 4
        if len(strategies) != 4:
            raise ValueError(f"need exactly 4 strategies, got {len(strategies)}")
        object.__setattr__(self, "strategies",
                           tuple(StrategyTriple(*s) for s in strategies))


def run_game(config: GameConfig) -> GameResult:
    """Run the protocol once and score all four players."""
    rho = np.zeros((16, 16), dtype=complex)
    rho[0, 0] = 1.0
    gate = entangler(config.gamma)
    rho = linalg.conjugate(rho, gate)
    rho = linalg.apply_kraus(rho, channels.build_channel(config.noise_pre))
    moves = linalg.tensor([strategy_unitary(s) for s in config.strategies])
    rho = linalg.conjugate(rho, moves)
    rho = linalg.apply_kraus(rho, channels.build_channel(config.noise_post))
    rho = linalg.conjugate(rho, gate.conj().T)
    report = linalg.validate_density(rho)
    if not report.ok:
        raise RuntimeError(f"final state failed validation: {report}")
    # the diagonal is real up to rounding; clamp so the scores stay in [0, 1]
    probs = np.clip(np.diag(rho).real, 0.0, None)
    payoffs = tuple(min(float(probs @ row), 1.0) for row in _PAYOFF_TABLE)
    return GameResult(rho, payoffs)


_AXES = ("p", "mu", "gamma")


def payoff_curve(kind: str, vary: str, fixed: dict, points: int = 101) -> list:
    """Sweep one axis at the symmetric equilibrium profile.

    ``vary`` is one of p, mu, gamma; ``fixed`` must hold the other two.
    p and mu run over [0, 1], gamma over [0, pi/2], all on uniform grids.
    """
    if points < 2:
        raise ValueError(f"need at least 2 points, got {points}")
    if vary not in _AXES:
        raise ValueError(f"vary must be one of {_AXES}, got {vary!r}")
    if set(fixed) != set(_AXES) - {vary}:
        raise ValueError(f"fixed must supply exactly {sorted(set(_AXES) - {vary})}")
    high = np.pi / 2 if vary == "gamma" else 1.0
    curve = []
    for x in np.linspace(0.0, high, points):
        vals = dict(fixed)
        vals[vary] = float(x)
        spec = channels.ChannelSpec(kind, vals["p"], vals["mu"])
        cfg = GameConfig(gamma=vals["gamma"], noise_pre=spec, noise_post=spec)
        curve.append(CurvePoint(vals["p"], vals["mu"], vals["gamma"],
                                run_game(cfg).payoffs))
    return curve


def best_response_search(config: GameConfig, player: int, grid_points: int):
    """Exhaustive lattice search over one player's move, others held fixed.

    Returns the best triple and its payoff. The lattice covers theta over
    [0, pi] and both phases over [-pi, pi], endpoints included. Ties keep
    the earliest lattice point, theta-major, then alpha, then beta.
    """
    if player not in (1, 2, 3, 4):
        raise ValueError(f"player must be 1..4, got {player}")
    if grid_points < 2:
        raise ValueError(f"need at least 2 grid points, got {grid_points}")
    thetas = np.linspace(0.0, np.pi, grid_points)
    phases = np.linspace(-np.pi, np.pi, grid_points)
    best = None
    best_payoff = -1.0
    for theta in thetas:
        for alpha in phases:
            for beta in phases:
                candidate = StrategyTriple(float(theta), float(alpha), float(beta))
                strategies = tuple(candidate if i == player - 1 else s
                                   for i, s in enumerate(config.strategies))
                trial = dataclasses.replace(config, strategies=strategies)
                payoff = run_game(trial).payoffs[player - 1]
                if payoff > best_payoff:
                    best = candidate
                    best_payoff = payoff
    return best, best_payoff
