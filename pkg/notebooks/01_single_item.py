# coding: utf-8

# # One item, two budget-constrained bidders
#
# Each player bids at most its budget; the higher bid takes the item and
# both pay. With a single item the equilibrium lives on [0, L] where L is
# the smallest of the two budgets and two values.

# In[1]:

import numpy as np

import budgeted_allpay as ba


# Player 1 has the larger budget. Its value (4) exceeds L = 1, so it plays
# the "strong, high value" structure: uniform on [0, 1) with an atom at 1.

# In[2]:

prof = ba.AuctionProfile.create((3, 1), [[4], [2]])
print(ba.classify_single(prof))
s, w = ba.solve_single(prof)
print(ba.marginal_of(s, 0))
print(ba.marginal_of(w, 0))


# Values come in closed form. The strong player gets v_s - L, the weak
# player gets nothing.

# In[3]:

print(ba.equilibrium_value(prof, s, w))


# The weak player is indifferent over its whole support: every bid in
# [0, 1] earns the same expected payoff against F_s.

# In[4]:

xs = np.linspace(0, 1, 6)
print([round(ba.pure_vs_mixed_utility(prof, 2, [x], s), 12) for x in xs])


# ## Equal budgets
#
# Below half the smaller value both players simply bid their budget.

# In[5]:

pure = ba.AuctionProfile.create((1, 1), [[4], [3]])
print(ba.case_tag(pure), ba.equilibrium_value(pure, *ba.solve_single(pure)))


# Exactly at half the smaller value there is a one-parameter family: the
# lower-value player may put up to 1 - 2L/v_other at zero.

# In[6]:

boundary = ba.AuctionProfile.create((1.5, 1.5), [[3], [4]])
for mass in (0.0, 0.1, 0.25):
    pair = ba.solve_single(boundary, mass)
    print(mass, ba.equilibrium_value(boundary, *pair), ba.verify_equilibrium(boundary, *pair).passed)


# Above that, no equilibrium exists. The solver refuses, and the verifier
# shows why the obvious pure candidate fails: player 2 would rather bid 0.

# In[7]:

bad = ba.AuctionProfile.create((2, 2), [[4], [3]])
try:
    ba.solve_single(bad)
except ba.NoEquilibrium as exc:
    print(exc.reason)

candidate = [ba.MixedStrategy.build(i, atoms=[((2.0,), 1.0)]) for i in (1, 2)]
cert = ba.verify_equilibrium(bad, *candidate)
print(cert.player2.deviation_gain, cert.player2.witness_bid)
