# Exact arithmetic kernel: integers, GF(p)[x], Euclidean rings, normal forms
