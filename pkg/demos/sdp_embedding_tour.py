"""
A tour of the block SDP embedding
=================================

The minimax problem embeds into one standard-form semidefinite program
over block-diagonal matrices of size n + m + 1: the original n x n
block, one diagonal slack per payoff matrix, and a single slot whose
value delta is minimized. Feasible points of the original problem lift
to feasible points of the SDP and back, and any primal-dual pair brackets
the optimum. This script builds the embedding, inspects both lifts, and
prints the sparse SDPA text an external solver would consume.
"""

import numpy as np

from specmm import (
    SimplexPoint,
    build_embedding,
    extract_dual,
    interior_dual_point,
    interior_primal_point,
    lambda_min,
    lift_dual,
    lift_primal,
    load_instance,
    sample_spectraplex,
    sdpa_text,
    weak_duality_check,
    weighted_combination,
)

inst, _ = load_instance("demos/data/pauli_pair.json")

# payoff matrices with negative eigenvalues are shifted up front so that
# the SDP variable can stay PSD; the shift is recorded and subtracted
# from every number reported back
emb = build_embedding(inst)
print(f"blocks: {inst.n} x {inst.n} original, {inst.m} slacks, 1 objective"
      f" (total {emb.n_prime}); diagonal shift {emb.shift}")

# lift a random density matrix: the slacks absorb the gap between each
# payoff and the worst one, and the last slot carries the objective
x = sample_spectraplex(inst.n, np.random.default_rng(0))
p = lift_primal(x, inst, emb)
print("\nprimal lift: objective delta =", p.objective)
print("constraint residuals:", p.residuals.max())

# the canonical interior point is the normalized identity with headroom
# in every slack; its existence is what makes strong duality automatic
p0 = interior_primal_point(inst, emb)
print("interior primal slacks:",
      np.diag(p0.matrix.array)[inst.n:inst.n + inst.m])

# dual side: a weight vector y lifts to multipliers whose slack matrix
# must stay PSD; the certified lower bound rides in the t coordinate
y = SimplexPoint.uniform(inst.m)
t = lambda_min(weighted_combination(y, inst)) + emb.shift
d = lift_dual(y, t, inst, emb)
print("\ndual lift: lambda_min of slack =", lambda_min(d.slack))

d0 = interior_dual_point(inst, emb)
print("interior dual residual:", d0.residual)

# weak duality: every primal objective sits above every dual objective
print("\nweak duality margins (must be >= 0):")
for name, pl in (("random", p), ("interior", p0)):
    for dname, dl in (("uniform", d), ("interior", d0)):
        print(f"  {name:8s} vs {dname:8s} {weak_duality_check(pl, dl, emb):.6f}")

# round-trip: the extracted weights and bound match what went in
back = extract_dual(d, emb)
print("\nextracted weights:", back.weights, " bound:", back.lower_bound)

# the whole embedding serializes to sparse SDPA text, byte-stable across
# runs, so external SDP solvers can confirm the value independently
print("\nSDPA text:")
print(sdpa_text(emb), end="")
