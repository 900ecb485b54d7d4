"""
Binomial transforms
===================
"""

# %%
import numpy as np

from aperylike.sequences import sequence_terms
from aperylike.transforms import (
    binomial_transform,
    binomial_transform_mod,
    gf_substitution_series,
    inverse_transform,
    transform_polynomial,
)

u = sequence_terms("gamma", 12)
v = binomial_transform(u, 5, 12)
print(v.values[:6])  # 1, 0, 48, 600, 13176, ...
assert inverse_transform(v) == list(u)

# %%
# the generating function of v is F(z/(1+5z))/(1+5z)
print(gf_substitution_series(u, 5, 12).coefficients == v.values)

# %%
# v_n as a polynomial in x; the leading coefficient is (-1)^n
for n in range(5):
    print(n, transform_polynomial(u, n))

# %%
# residues mod 24 in bulk, vectorized over the difference table
u = sequence_terms("gamma", 2000)
r = binomial_transform_mod(u, 5, 24, 2000)
print(np.count_nonzero(r[1:]), "nonzero residues among v_1..v_2000")
