# coding: utf-8

# # Two items
#
# With two items, each player's strategy is a joint distribution over bid
# vectors whose coordinates must sum to at most the budget. The
# constructions place mass on line segments in the bid plane, arranged so
# that each item's marginal matches the single-item equilibrium.

# In[1]:

import numpy as np

import budgeted_allpay as ba


# ## Symmetric players
#
# Equal budgets and equal values: both players spread uniformly along the
# anti-diagonal from (0, c) to (c, 0).

# In[2]:

sym = ba.AuctionProfile.create((1, 1), [[3, 3], [3, 3]])
s1, s2 = ba.solve(sym).strategies
print(s1)
print(ba.marginal_of(s1, 0))


# Each marginal is uniform on [0, 1], which is *not* the single-item
# equilibrium for the same budgets (that one bids 1 with certainty). The
# budget couples the items.

# In[3]:

print(ba.marginal_of(ba.solve_single(sym.sub_profile(0))[0], 0))


# ## Asymmetric budgets
#
# The stronger player's extra budget lets it cover both items. The case
# (C1 through C4) is decided by four thresholds.

# In[4]:

c1 = ba.AuctionProfile.create((5, 2), [[3.5, 3.2], [4, 3]])
th = ba.compute_thresholds(c1)
print(th.case_tag, th.T1, th.T2, th.T3, th.T4)
sol = ba.solve(c1)
for strat in sol.strategies:
    print(strat.owner, [(a.point, round(a.prob, 4)) for a in strat.atoms])
    for seg in strat.segments:
        print("   ", seg.a, "->", seg.b, round(seg.prob, 4))


# Marginals agree with the single-item sub-games item by item, and so do
# the values.

# In[5]:

for j in range(2):
    single = ba.solve_single(c1.sub_profile(j))
    print(j, [ba.marginal_of(x, j).sup_distance(ba.marginal_of(y, 0))
              for x, y in zip(sol.strategies, single)])
print(ba.equilibrium_value(c1, *sol.strategies))


# Sampled bid vectors always respect the budget.

# In[6]:

draws = ba.sample(sol.strategies[1], seed=3, count=10_000)
print(draws.sum(axis=1).max(), c1.budget(2))


# Outside the valid region the thresholds go negative and the solver says
# exactly which conditions failed.

# In[7]:

try:
    ba.solve(ba.AuctionProfile.create((5, 2), [[6, 5], [4, 3]]))
except ba.ConstructionInvalid as exc:
    print(exc.failures)
