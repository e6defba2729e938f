# Specialization posets on associated primes
