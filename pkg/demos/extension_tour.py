"""Graded central extensions of Z2 by mu_4, and their invariants.

An extension is fixed by a Z2-valued grading cocycle and a mu_4-valued
2-cocycle. Tensoring extensions adds the invariants, with a cup-product
correction when both are odd.
"""

import itertools

from realbrauer.extensions import (
    build_extension,
    dd_class,
    dd_context,
    inverse_extension,
    is_trivial,
    tensor_extensions,
    trivial_extension,
)
from realbrauer.groupoid_core import cyclic_group
from realbrauer.real_cohomology import cup11

G = cyclic_group(2)
m = 4

plain = trivial_extension(G, m)
odd = build_extension(G, m, (0, 1), (0, 0, 0, 0))
twisted = build_extension(G, m, (0, 0), cup11(G, (0, 1), (0, 1), m))

print(f"in the twisted extension (s,0)^2 = {twisted.mul((1, 0), (1, 0))}")
ctx = dd_context(G, m)
for name, E in (("plain", plain), ("odd", odd), ("twisted", twisted)):
    dd = dd_class(E)
    print(f"{name:8} dd = (d={list(dd.d)}, w={list(dd.w)}), trivial: {bool(is_trivial(E))}")

# odd x odd lands on the twisted class
OO = tensor_extensions(odd, odd)
print(f"odd (x) odd: dd = {dd_class(OO)}, equals twisted: {dd_class(OO) == dd_class(twisted)}")

for (n1, E1), (n2, E2) in itertools.product((("odd", odd), ("twisted", twisted)), repeat=2):
    lhs = dd_class(tensor_extensions(E1, E2))
    rhs = ctx.add(dd_class(E1), dd_class(E2))
    print(f"dd({n1} (x) {n2}) = dd({n1}) + dd({n2}): {lhs == rhs}")

print(f"twisted (x) its inverse is trivial: {bool(is_trivial(tensor_extensions(twisted, inverse_extension(twisted))))}")
