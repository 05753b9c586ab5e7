"""Root lattices, discriminant forms and the expression parser."""

from eigenperiod.expr import canonical_form, parse_lattice_expr
from eigenperiod.lattice import (
    discriminant_form,
    discriminant_group,
    fqf_isomorphic,
    root_vectors,
    standard_lattice,
)

# E8 is even unimodular with 240 roots
E8 = standard_lattice("E8")
print("E8: det", E8.det(), "signature", tuple(E8.signature()), "roots", len(root_vectors(E8)))

# D4 has discriminant group (Z/2)^2 and every nonzero class has q = 1 mod 2
D4 = standard_lattice("D4")
q = discriminant_form(D4)
print("D4: invariant factors", q.invariant_factors,
      "q values", [str(q.q(x)) for x in q.elements() if any(x)])

# the same group with two different forms
L = parse_lattice_expr("A1 + <-2>")
print("A1 + <-2> disc group", discriminant_group(L))

# A2 and A2(-1) have anti-isometric discriminant forms
qa = discriminant_form(standard_lattice("A2"))
qb = discriminant_form(parse_lattice_expr("A2(-1)"))
print("q(A2) ~ -q(A2(-1)):", fqf_isomorphic(qa, qb.negated()))

# parsing canonicalizes term order and merges powers
for text in ["A2 + U + A2", "<-2> + E8(-1) + U^2", "D4 + U(2) + D4"]:
    print(f"{text!r:24} -> {canonical_form(text)}")
