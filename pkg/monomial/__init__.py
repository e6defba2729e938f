# Monomial ideals: colon, saturation, intersection, associated primes
