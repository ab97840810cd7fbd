# coding: utf-8

# # Entrywise products and odd-order tensors

# In[1]:

import numpy as np

from cauchytensor import (
    GeneratingVector,
    build_cauchy,
    hadamard_chain,
    odd_sign_audit,
    z_eigen_search,
    zero_z_exclusion_probe,
)
from cauchytensor.oracle import integral_identity_check, sphere_min


# ## Hadamard products stay semi-definite
#
# The entrywise product of positive-c Cauchy tensors is usually not a Cauchy
# tensor any more, so definiteness is checked numerically.

# In[2]:

rng = np.random.default_rng(1)
factors = [build_cauchy(GeneratingVector(tuple(rng.uniform(0.2, 3, 3)), 4)) for _ in range(3)]
fmin, _ = sphere_min(hadamard_chain(factors), restarts=16)
print("min on sphere of a triple product:", fmin)

# Factor order does not change a single bit.

# In[3]:

a = hadamard_chain(factors).values
b = hadamard_chain(factors[::-1]).values
print("bit-identical:", np.array_equal(a, b))


# ## Why positive c means PSD
#
# f(x) is an integral of an m-th power, sum_i t^(c_i - 1/m) x_i, over [0, 1].

# In[4]:

chk = integral_identity_check(GeneratingVector((0.5, 1.2, 3.0), 4), np.array([0.3, -1.0, 0.6]))
print(f"quadrature {chk.quadrature:.14f}\ndirect     {chk.direct:.14f}")


# ## Odd order
#
# Odd-order tensors are never semi-definite, but for positive c the sign of a
# Z-eigenvalue still fixes the sign of its eigenvector, and zero is never a
# Z-eigenvalue when the entries are distinct.

# In[5]:

c = GeneratingVector((1.0, 2.0, 3.0), 3)
pairs = z_eigen_search(c, restarts=8)
for p in pairs:
    print(f"lambda = {p.lam: .6f}  x = {np.round(p.x, 4)}")
print("sign audit passed:", odd_sign_audit(pairs, c).passed)
print("smallest |C x^2| on the sphere:", zero_z_exclusion_probe(c).floor)
