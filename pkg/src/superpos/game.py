"""Channel-discrimination game: free selective operation plus unambiguous
state discrimination.

Alice's informative outcomes n = 1..d use the Fourier-phased free operators
``sqrt(p/d) sum_j exp(2 pi i j n / d) |c_j><c_j^perp|`` at the largest
feasible p; the restart outcome is their free completion. On free inputs the
outcome distribution is uniform and the post-measurement states carry no
information; on the uniform superposition input the d post-measurement
states are linearly independent, so a zero-error discrimination strategy
wins every conclusive round.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import FreeBasis, filter_probability
from .errors import LinearlyDependentEnsemble
from .kraus import Channel, complete_free
from .sampling import make_rng
from .states import PureState

_ENSEMBLE_THRESHOLD = 1e-8


@dataclass(frozen=True)
class GameSpec:
    """Alice's operation: d informative free operators plus their completion."""

    basis: FreeBasis
    p: float
    informative: tuple   # Kraus operators for outcomes 1..d
    restart: tuple       # free completion, outcome 0

    @property
    def channel(self) -> Channel:
        return Channel(self.informative + self.restart)


@dataclass(frozen=True)
class GameStats:
    """Counters of one simulated game."""

    turns: int
    conclusive_turns: int
    wins: int
    losses: int

    @property
    def win_rate(self) -> float:
        answered = self.wins + self.losses
        return self.wins / answered if answered else 0.0


def build_game(basis: FreeBasis) -> GameSpec:
    """Assemble the selective operation at the maximum feasible p.

    p is the filter probability of the basis, which saturates
    ``sum_n K_n'K_n = p sum_j |c_j^perp><c_j^perp| <= 1``.
    """
    d = basis.d
    p = filter_probability(basis)
    w = basis.reciprocal
    v = basis.vectors
    ops = []
    for n in range(1, d + 1):
        k = np.zeros((d, d), dtype=complex)
        for j in range(1, d + 1):
            k += np.exp(2j * np.pi * j * n / d) * np.outer(v[:, j - 1], w[:, j - 1].conj())
        ops.append(np.sqrt(p / d) * k)
    restart = complete_free(ops, basis)
    return GameSpec(basis=basis, p=p, informative=tuple(ops), restart=tuple(restart))


def uniform_superposition(basis: FreeBasis) -> PureState:
    """The equal-weight superposition of all free states, normalized."""
    return PureState.normalized(basis.vectors.sum(axis=1))


def outcome_states(spec: GameSpec, state: PureState) -> list[tuple[float, PureState]]:
    """Informative-outcome probabilities and normalized post-measurement states."""
    out = []
    for k in spec.informative:
        vec = k @ state.amp
        p = float(np.linalg.norm(vec) ** 2)
        out.append((p, PureState.normalized(vec)))
    return out


def _usd_povm(states: list[PureState]) -> tuple[np.ndarray, float]:
    """Reciprocal-frame vectors and the largest uniform scaling keeping the POVM valid."""
    mat = np.column_stack([s.amp for s in states])
    smin = float(np.linalg.svd(mat, compute_uv=False)[-1])
    if smin <= _ENSEMBLE_THRESHOLD:
        raise LinearlyDependentEnsemble(f"ensemble smallest singular value {smin:.3e}")
    reciprocal = np.linalg.inv(mat.conj().T)
    return reciprocal, smin ** 2


def _discriminate(states: list[PureState], received: PureState,
                  rng: np.random.Generator) -> int | None:
    reciprocal, scaling = _usd_povm(states)
    amps = reciprocal.conj().T @ received.amp
    probs = np.clip(scaling * np.abs(amps) ** 2, 0.0, None)
    inconclusive = max(0.0, 1.0 - probs.sum())
    full = np.append(probs, inconclusive)
    full /= full.sum()
    outcome = int(rng.choice(len(full), p=full))
    return None if outcome == len(states) else outcome


def discriminate(states: list[PureState], received: PureState,
                 rng_seed: int) -> int | None:
    """Unambiguous discrimination among linearly independent pure states.

    A conclusive result identifies the received state with zero error; None
    signals the inconclusive outcome. Deterministic for a given seed.
    """
    return _discriminate(states, received, make_rng(rng_seed))


def simulate(spec: GameSpec, input_kind: str, turns: int, rng_seed: int) -> GameStats:
    """Play the game for a number of turns.

    ``superposed``: Bob hands in the uniform superposition each turn and
    answers only on conclusive discrimination of the post-measurement state.
    ``free``: Bob hands in a uniformly random pure free state and is forced
    to guess the outcome whenever the turn is informative.
    """
    if turns < 1:
        raise ValueError(f"turns must be >= 1, got {turns}")
    if input_kind not in ("free", "superposed"):
        raise ValueError(f"input_kind must be 'free' or 'superposed', got {input_kind!r}")
    rng = make_rng(rng_seed)
    d = spec.basis.d
    all_ops = list(spec.informative) + list(spec.restart)
    superposed = uniform_superposition(spec.basis)
    candidates = [s for _, s in outcome_states(spec, superposed)]

    conclusive = wins = losses = 0
    for _ in range(turns):
        if input_kind == "free":
            state = PureState(spec.basis.state(int(rng.integers(d))))
        else:
            state = superposed
        vecs = [k @ state.amp for k in all_ops]
        probs = np.array([np.linalg.norm(v) ** 2 for v in vecs])
        probs = np.clip(probs, 0.0, None)
        probs /= probs.sum()
        outcome = int(rng.choice(len(all_ops), p=probs))
        if outcome >= d:
            continue  # restart outcome: new turn, no answer
        if input_kind == "free":
            conclusive += 1
            guess = int(rng.integers(d))
            if guess == outcome:
                wins += 1
            else:
                losses += 1
        else:
            post = PureState.normalized(vecs[outcome])
            verdict = _discriminate(candidates, post, rng)
            if verdict is None:
                continue
            conclusive += 1
            if verdict == outcome:
                wins += 1
            else:
                losses += 1
    return GameStats(turns=turns, conclusive_turns=conclusive, wins=wins, losses=losses)
