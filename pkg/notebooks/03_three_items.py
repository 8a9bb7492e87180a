# coding: utf-8

# # Three items, symmetric players
#
# Sort values v1 >= v2 >= v3 and let z = (v1 + v2 + v3) / 2. If z > v1
# the equilibrium lives on a triangle in the plane x1 + x2 + x3 = z;
# otherwise on a single chord. Every marginal is uniform on [0, v_j].

# In[1]:

import numpy as np

import budgeted_allpay as ba


# In[2]:

spec = ba.triangle_spec((4, 3, 3))
print(spec.case_tag, spec.z)
print(spec.A, spec.B, spec.C)
print(spec.seg_probs)


# In[3]:

prof = ba.AuctionProfile.create((6, 5), [[4, 3, 3], [4, 3, 3]])
strategies = ba.solve(prof).strategies
draws = ba.sample(strategies[0], seed=0, count=200_000)
for j, v in enumerate((4, 3, 3)):
    hist, _ = np.histogram(draws[:, j], bins=8, range=(0, v), density=True)
    print(j, np.round(hist * v, 3))  # ~1 everywhere: uniform


# Both players' expected payoff is zero, and every bid on the triangle is
# a best response.

# In[4]:

print(ba.equilibrium_value(prof, *strategies))
print(ba.verify_equilibrium(prof, *strategies).passed)


# A dominant first item collapses the triangle to a chord.

# In[5]:

chord = ba.AuctionProfile.create((7, 6), [[6, 2, 1], [6, 2, 1]])
print(ba.solve(chord).strategies[0].segments)
