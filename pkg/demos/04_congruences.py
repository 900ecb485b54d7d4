"""
Congruences u_n = alpha^n mod N
===============================
"""

# %%
from aperylike import congruence_lab as lab

for alpha in range(-3, 8):
    r = lab.theorem1_check("gamma", alpha, 300)
    print(f"alpha={alpha:3d}  M={r.M_alpha:4d}  radical={r.modulus:3d}  ok={r.passed}")

# %%
cert = lab.theorem2_check("delta", 300, range(-25, 26))
print(cert.to_dict()["gcd_profile"][:6], cert.status)

# %%
print(lab.gauss_check("D", 3, [2, 3, 5, 7], 1000))

# %%
for name, res in lab.special_congruences_check(500).items():
    print(name, res.passed)

# %%
for name, res in lab.motivating_congruences_check(500).items():
    print(name, res.passed)
