# coding: utf-8

# # Certifying an equilibrium
#
# The verifier fixes one player's mixed strategy and searches the other's
# pure deviations. Expected utility is additive across items, so the search
# runs per item over a candidate set (atoms, breakpoints, a grid) and then
# combines the items under the budget.

# In[1]:

import json

import budgeted_allpay as ba


# In[2]:

prof = ba.AuctionProfile.create((5, 2), [[3.5, 3.2], [4, 3]])
cert = ba.verify_equilibrium(prof, *ba.solve(prof).strategies)
print(json.dumps(cert.to_dict(), indent=1))


# A perturbed candidate is caught. Here player 1 moves its mass onto one
# point on the anti-diagonal of the symmetric two-item game.

# In[3]:

sym = ba.AuctionProfile.create((1, 1), [[3, 3], [3, 3]])
_, s2 = ba.solve(sym).strategies
bad = ba.MixedStrategy.build(1, atoms=[((1.0, 0.0), 1.0)])
cert = ba.verify_equilibrium(sym, bad, s2)
print(cert.passed, cert.player2.deviation_gain, cert.player2.witness_bid)


# The grid resolution is configurable; finer grids tighten the bound on
# off-critical gains at the cost of time.

# In[4]:

for step in (0.05, 0.005, 0.0005):
    c = ba.verify_equilibrium(prof, *ba.solve(prof).strategies, ba.VerifierConfig(grid_step=step))
    print(step, c.passed, max(c.player1.deviation_gain, c.player2.deviation_gain))
