# coding: utf-8

# # Building Cauchy tensors and reading off definiteness
#
# A Cauchy tensor of order m is generated by a vector c: its entry at
# (i1, ..., im) is 1 / (c[i1] + ... + c[im]). Only one value per sorted index
# multiset is stored.

# In[1]:

import numpy as np

from cauchytensor import (
    GeneratingVector,
    build_cauchy,
    build_hilbert,
    classify,
    monotonicity_probe,
    row_sum_profile,
)
from cauchytensor.oracle import sphere_min


# ## A constant generating vector
#
# With c = (1, 1, 1) every multiset sum is 4, so all 15 stored entries are 1/4.

# In[2]:

c = GeneratingVector((1.0, 1.0, 1.0), 4)
T = build_cauchy(c)
print(len(T), "stored entries:", np.unique(T.values))


# The form f(x) = T x^4 equals (x1 + x2 + x3)^4 / 4, so it vanishes whenever
# the coordinates sum to zero. The tensor is semi-definite but not definite.

# In[3]:

print("f(1, -1, 0) =", T.apply_xm([1.0, -1.0, 0.0]))
print(classify(c).classification.value, "-", classify(c).witness)


# Even so, f is strictly increasing on the nonnegative orthant.

# In[4]:

probe = monotonicity_probe(c, trials=1000, seed=42)
print("strict monotonicity violations:", probe.strict_violations)


# ## The sign pattern of c decides everything
#
# Positive and distinct gives PD. Negative entries flip the sign. A mix of
# signs makes f take both signs: f(e_i) = 1 / (m c_i).

# In[5]:

for entries in [(1, 2, 3), (-1, -2, -3), (1, -2, 3.5), (0.5, 0.5, 2)]:
    v = GeneratingVector(entries, 4)
    fmin, _ = sphere_min(build_cauchy(v), restarts=16)
    print(f"{str(entries):18s} {classify(v).classification.value:16s} min on sphere {fmin: .3e}")


# ## Row sums
#
# Row i adds every entry whose first index is i. The largest row belongs to
# the smallest entry of c and the smallest row to the largest entry.

# In[6]:

prof = row_sum_profile(GeneratingVector((1.0, 2.0, 3.0), 2))
print("row sums", prof.row_sums, "R at row", prof.argmax_row, "r at row", prof.argmin_row)


# ## Hilbert tensors
#
# c_i = i + 1/m (0-based) gives entries 1 / (i1 + ... + im + 1). They are PD
# for even order but quickly become badly conditioned.

# In[7]:

for n in (2, 3, 4):
    fmin, _ = sphere_min(build_hilbert(n, 4), restarts=16)
    print(f"Hilbert n={n}, m=4: min on sphere {fmin:.3e}")
