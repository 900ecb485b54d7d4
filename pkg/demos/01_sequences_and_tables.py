"""
Fifteen sequences and their maximal moduli
==========================================

Generate the terms, compare the closed forms with the recurrences, and print
the (u_1, N) table.
"""

# %%
from aperylike import congruence_lab as lab
from aperylike.sequences import SPECS, Normalization, Source, cross_check, generate

for spec in SPECS.values():
    terms = generate(spec, Source.CANONICAL, 6).terms
    print(f"{spec.id:10s} {spec.kind.value:6s} {spec.params}  {list(terms)}")

# %%
# Two closed forms give twice the recurrence solution when generalized
# binomials are used; the other thirteen agree term by term.
for spec in SPECS.values():
    print(spec.id, cross_check(spec, 100).status.value)

print(list(generate("eta", Source.FORMULA, 4).terms), list(generate("eta", Source.RECURRENCE, 4).terms))

# %%
for norm in Normalization:
    print(f"-- {norm.value}")
    for row in lab.reproduce_tables(norm):
        print(f"{row.sequence:10s} u1={row.u1:3d}  N={row.N:3d}  match={row.match}")
