# Module backends over Z, GF(p)[x] and monomial rings
