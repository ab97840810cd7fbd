# coding: utf-8

# # Eigenvalues of Cauchy tensors
#
# H-eigenpairs solve T x^(m-1) = lambda x^[m-1] (componentwise powers).
# Z-eigenpairs solve T x^(m-1) = lambda x with |x| = 1.

# In[1]:

import numpy as np

from cauchytensor import (
    GeneratingVector,
    bounds,
    build_cauchy,
    h_eigen_max,
    h_lambda_max_variational,
    h_lambda_min_variational,
    z_eigen_search,
)
from cauchytensor.oracle import dense_matrix_eig


# ## The matrix case
#
# For m = 2 these are ordinary eigenvalues, so we can compare with a dense
# eigensolver. c = (1, 2) gives [[1/2, 1/3], [1/3, 1/4]].

# In[2]:

c = GeneratingVector((1.0, 2.0), 2)
top = h_eigen_max(c)
low = h_lambda_min_variational(c)
print("power iteration:", top.lam, "variational min:", low.lam)
print("dense:", dense_matrix_eig(build_cauchy(c))[0])


# ## Row-sum bracket
#
# For positive c with at least two distinct entries, the largest eigenvalue
# sits strictly between two expressions built from the row sums.

# In[3]:

b = bounds(c)
print(f"{b.rowsum_lower:.6f} < {top.lam:.6f} < {b.rowsum_upper:.6f}")

rng = np.random.default_rng(0)
for _ in range(5):
    v = GeneratingVector(tuple(rng.uniform(0.2, 3.0, 4)), 4)
    lam, b = h_eigen_max(v).lam, bounds(v)
    print(f"{b.rowsum_lower:.4f} < {lam:.4f} < {b.rowsum_upper:.4f}")


# ## Mixed signs
#
# When c has both signs, f(e_i) = 1/(m c_i) already pins the extreme
# eigenvalues outside an interval around zero.

# In[4]:

v = GeneratingVector((1.0, -1.3, 2.0), 4)
b = bounds(v)
lo, hi = h_lambda_min_variational(v), h_lambda_max_variational(v)
print(f"lambda_min {lo.lam:.4f} <= {b.mixed_sign_lower_cap:.4f}")
print(f"lambda_max {hi.lam:.4f} >= {b.mixed_sign_upper_floor:.4f}")


# ## Z-eigenpairs by shifted power iteration
#
# For c = (1, 1, 1) and m = 4 the uniform unit vector gives lambda = 9/4.

# In[5]:

res = z_eigen_search(GeneratingVector((1.0, 1.0, 1.0), 4), restarts=8)
for p in res:
    print(f"lambda = {p.lam:.10f}  x = {np.round(p.x, 4)}")
