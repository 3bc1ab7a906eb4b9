"""A channel-discrimination game where superposition turns loss into win.

Alice applies a selective free operation with Fourier-phased outcomes. Free
inputs leak nothing: every outcome is equally likely and the post-measurement
state equals the input, so the guesser wins a d-th of the time. The uniform
superposition input makes the d post-measurement states linearly
independent, so unambiguous discrimination identifies the outcome with zero
error and every conclusive round is a win.
"""

import superpos as sp

basis = sp.symmetric_basis_d3()
spec = sp.build_game(basis)
print(f"selective operation at p = {spec.p} (d = {basis.d})")

free_probs = [p for p, _ in sp.outcome_states(spec, sp.PureState(basis.state(0)))]
print("free-input outcome probabilities:", [round(p, 9) for p in free_probs])

stats_free = sp.simulate(spec, "free", turns=10_000, rng_seed=1)
print(f"\nfree input, forced guessing: {stats_free.wins} wins / "
      f"{stats_free.wins + stats_free.losses} answers "
      f"(rate {stats_free.win_rate:.4f}, ideal 1/3)")

stats_super = sp.simulate(spec, "superposed", turns=10_000, rng_seed=2)
print(f"superposed input: {stats_super.wins} wins, {stats_super.losses} losses "
      f"over {stats_super.conclusive_turns} conclusive turns")
print("zero losses:", stats_super.losses == 0)
