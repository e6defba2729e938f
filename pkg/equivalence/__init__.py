# Swaps, intersection identity and equivalence of filtrations
