"""
Differential operators and recurrences for the transforms
=========================================================
"""

# %%
from aperylike.operators import check_annihilates, iter_recurrence_terms, operator_for, operator_to_recurrence
from aperylike.sequences import Normalization
from aperylike.transforms import transform_values

op = operator_for("D", 3)
print(op.format())
rec = operator_to_recurrence(op)
print(rec.format())

# %%
v = transform_values("D", 3, 10)
print(v)
print(16 * v[4], "=", 24 * v[3] + 360 * v[2])
print(iter_recurrence_terms(rec, [1], 10) == list(v))

# %%
# at x = 0 the transformed operator is the original one
print(operator_for("gamma", 0) == operator_for("gamma"))

# %%
# eta: the recurrence solution is annihilated, the doubled closed form is not
for norm in Normalization:
    res = check_annihilates(operator_for("eta", 7), transform_values("eta", 7, 60, norm))
    print(norm.value, res)
