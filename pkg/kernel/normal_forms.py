"""
Smith and Hermite normal forms over a Euclidean ring

Matrices are lists of rows. smith_normal_form returns unimodular U, V with
U*A*V = D and also U^-1, which the PID backend uses to pull invariant-factor
generators back into original coordinates. hermite_basis returns the
canonical row-echelon basis of a lattice, so two lattices are equal exactly
when their bases are equal.
"""

from dataclasses import dataclass
from typing import Any, List, Optional, Sequence, Tuple

from kernel.euclid import EuclideanRing, ring_of
from utils.exceptions import ArithmeticDomainError
from utils.logger import get_logger

# Initialize logger
logger = get_logger(__name__)

Matrix = List[List[Any]]
Row = Tuple[Any, ...]


@dataclass(frozen=True)
class NormalFormResult:
    """Smith form D = U*A*V of a k x m matrix"""

    diagonal: Tuple[Any, ...]
    left: Tuple[Row, ...]
    right: Tuple[Row, ...]
    left_inverse: Tuple[Row, ...]
    rank: int
    ring: EuclideanRing

    def diagonal_matrix(self, rows: int, cols: int) -> Matrix:
        D = [[self.ring.zero] * cols for _ in range(rows)]
        for i, d in enumerate(self.diagonal):
            D[i][i] = d
        return D


@dataclass(frozen=True)
class EchelonResult:
    """Canonical row-echelon basis of the row lattice of a generator matrix"""

    basis: Tuple[Row, ...]
    pivots: Tuple[int, ...]
    transform: Tuple[Row, ...]
    kernel: Tuple[Row, ...]
    ring: EuclideanRing


def identity(n: int, ring: EuclideanRing) -> Matrix:
    return [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]


def mat_mul(A: Sequence[Sequence[Any]], B: Sequence[Sequence[Any]], ring: EuclideanRing) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    result = []
    for row in A:
        out = []
        for j in range(cols):
            acc = ring.zero
            for t in range(inner):
                acc = acc + row[t] * B[t][j]
            out.append(acc)
        result.append(out)
    return result


def transpose(A: Sequence[Sequence[Any]], cols: Optional[int] = None) -> Matrix:
    if not A:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*A)]


def _prepare(matrix: Sequence[Sequence[Any]], ring: Optional[EuclideanRing]) -> Tuple[Matrix, EuclideanRing]:
    widths = {len(row) for row in matrix}
    if len(widths) > 1:
        raise ArithmeticDomainError("ragged matrix", details={'row_lengths': sorted(widths)})
    entries = [e for row in matrix for e in row]
    if ring is None:
        ring = ring_of(entries)
    elif any(not ring.owns(ring.element(e)) for e in entries):
        raise ArithmeticDomainError(f"matrix entries do not belong to {ring.name}")
    return [[ring.element(e) for e in row] for row in matrix], ring


def smith_normal_form(matrix: Sequence[Sequence[Any]], ring: Optional[EuclideanRing] = None) -> NormalFormResult:
    """
    Compute the Smith normal form with transforms.

    Args:
        matrix: k x m matrix (list of rows) over Z or GF(p)[x]
        ring: Ring to use; inferred from the entries when omitted

    Returns:
        NormalFormResult with U*A*V = diag(d_1..d_r, 0..), d_i | d_(i+1),
        entries nonnegative (Z) or monic (GF(p)[x])

    Raises:
        ArithmeticDomainError: On mixed-domain entries

    Examples:
        [[2, 4], [6, 8]] -> diagonal (2, 4)
    """
    A, ring = _prepare(matrix, ring)
    k = len(A)
    m = len(A[0]) if k else 0
    U = identity(k, ring)
    Uinv = identity(k, ring)
    V = identity(m, ring)

    def swap_rows(a, b):
        A[a], A[b] = A[b], A[a]
        U[a], U[b] = U[b], U[a]
        for row in Uinv:
            row[a], row[b] = row[b], row[a]

    def swap_cols(a, b):
        for row in A:
            row[a], row[b] = row[b], row[a]
        for row in V:
            row[a], row[b] = row[b], row[a]

    def add_row(target, source, q):
        # row_target += q * row_source
        A[target] = [x + q * y for x, y in zip(A[target], A[source])]
        U[target] = [x + q * y for x, y in zip(U[target], U[source])]
        for row in Uinv:
            row[source] = row[source] - q * row[target]

    def add_col(target, source, q):
        for row in A:
            row[target] = row[target] + q * row[source]
        for row in V:
            row[target] = row[target] + q * row[source]

    rank = 0
    for t in range(min(k, m)):
        while True:
            best = None
            for i in range(t, k):
                for j in range(t, m):
                    if not ring.is_zero(A[i][j]):
                        if best is None or ring.size(A[i][j]) < ring.size(A[best[0]][best[1]]):
                            best = (i, j)
            if best is None:
                break
            if best[0] != t:
                swap_rows(t, best[0])
            if best[1] != t:
                swap_cols(t, best[1])

            pivot = A[t][t]
            clean = True
            for i in range(t + 1, k):
                if not ring.is_zero(A[i][t]):
                    q, r = ring.divmod(A[i][t], pivot)
                    add_row(i, t, -q)
                    clean = clean and ring.is_zero(r)
            for j in range(t + 1, m):
                if not ring.is_zero(A[t][j]):
                    q, r = ring.divmod(A[t][j], pivot)
                    add_col(j, t, -q)
                    clean = clean and ring.is_zero(r)
            if not clean:
                continue

            offender = next(
                (i for i in range(t + 1, k) for j in range(t + 1, m) if not ring.divides(pivot, A[i][j])),
                None
            )
            if offender is not None:
                add_row(t, offender, ring.one)
                continue
            break

        if ring.is_zero(A[t][t]):
            break
        u = ring.unit_part(A[t][t])
        u_inv = ring.unit_inverse(u)
        A[t] = [x * u_inv for x in A[t]]
        U[t] = [x * u_inv for x in U[t]]
        for row in Uinv:
            row[t] = row[t] * u
        rank += 1

    diagonal = tuple(A[i][i] for i in range(min(k, m)))
    logger.debug(f"Smith form of a {k}x{m} matrix over {ring.name}: rank {rank}")
    return NormalFormResult(
        diagonal=diagonal,
        left=tuple(tuple(r) for r in U),
        right=tuple(tuple(r) for r in V),
        left_inverse=tuple(tuple(r) for r in Uinv),
        rank=rank,
        ring=ring,
    )


def hermite_basis(generators: Sequence[Sequence[Any]], width: int, ring: EuclideanRing) -> EchelonResult:
    """
    Canonical echelon basis of the lattice spanned by the generator rows.

    Pivots are canonical (positive or monic), entries above a pivot are
    reduced to canonical remainders, zero rows are dropped. The transform T
    satisfies T*G = [basis; 0] and its trailing rows span the left kernel of G.
    """
    G, ring = _prepare(list(generators), ring)
    n = len(G)
    if any(len(row) != width for row in G):
        raise ArithmeticDomainError("generator width does not match the ambient rank")
    T = identity(n, ring)
    pivots: List[int] = []
    r = 0

    for c in range(width):
        if r == n:
            break
        while True:
            candidates = [i for i in range(r, n) if not ring.is_zero(G[i][c])]
            if not candidates:
                break
            best = min(candidates, key=lambda i: ring.size(G[i][c]))
            G[r], G[best] = G[best], G[r]
            T[r], T[best] = T[best], T[r]
            done = True
            for i in range(r + 1, n):
                if not ring.is_zero(G[i][c]):
                    q, _ = ring.divmod(G[i][c], G[r][c])
                    G[i] = [x - q * y for x, y in zip(G[i], G[r])]
                    T[i] = [x - q * y for x, y in zip(T[i], T[r])]
                    done = done and ring.is_zero(G[i][c])
            if done:
                break
        if ring.is_zero(G[r][c]):
            continue
        u_inv = ring.unit_inverse(ring.unit_part(G[r][c]))
        G[r] = [x * u_inv for x in G[r]]
        T[r] = [x * u_inv for x in T[r]]
        for i in range(r):
            q, _ = ring.divmod(G[i][c], G[r][c])
            if not ring.is_zero(q):
                G[i] = [x - q * y for x, y in zip(G[i], G[r])]
                T[i] = [x - q * y for x, y in zip(T[i], T[r])]
        pivots.append(c)
        r += 1

    return EchelonResult(
        basis=tuple(tuple(row) for row in G[:r]),
        pivots=tuple(pivots),
        transform=tuple(tuple(row) for row in T),
        kernel=tuple(tuple(row) for row in T[r:]),
        ring=ring,
    )


def coordinates(basis: EchelonResult, vector: Sequence[Any]) -> Optional[List[Any]]:
    """
    Coefficients c with sum c_i * basis_i = vector, or None if vector is not in the lattice
    """
    ring = basis.ring
    v = [ring.element(x) for x in vector]
    coeffs = []
    for row, c in zip(basis.basis, basis.pivots):
        q = ring.exact_div(v[c], row[c])
        if q is None:
            return None
        coeffs.append(q)
        if not ring.is_zero(q):
            v = [x - q * y for x, y in zip(v, row)]
    if any(not ring.is_zero(x) for x in v):
        return None
    return coeffs


def reduce_vector(basis: EchelonResult, vector: Sequence[Any]) -> Tuple[Any, ...]:
    """Canonical representative of vector modulo the lattice"""
    ring = basis.ring
    v = [ring.element(x) for x in vector]
    for row, c in zip(basis.basis, basis.pivots):
        q, _ = ring.divmod(v[c], row[c])
        if not ring.is_zero(q):
            v = [x - q * y for x, y in zip(v, row)]
    return tuple(v)


def lattice_contains(outer: EchelonResult, inner: EchelonResult) -> bool:
    return all(coordinates(outer, row) is not None for row in inner.basis)


def lattice_sum(a: EchelonResult, b: EchelonResult, width: int) -> EchelonResult:
    return hermite_basis(list(a.basis) + list(b.basis), width, a.ring)


def lattice_intersection(a: EchelonResult, b: EchelonResult, width: int) -> EchelonResult:
    """
    Intersection of two lattices via the left kernel of the stacked bases:
    x*A + y*B = 0 gives x*A in both.
    """
    ring = a.ring
    stacked = list(a.basis) + list(b.basis)
    if not stacked:
        return hermite_basis([], width, ring)
    relations = hermite_basis(stacked, width, ring).kernel
    na = len(a.basis)
    generators = []
    for rel in relations:
        x = rel[:na]
        vec = [ring.zero] * width
        for coeff, row in zip(x, a.basis):
            if not ring.is_zero(coeff):
                vec = [v + coeff * y for v, y in zip(vec, row)]
        generators.append(vec)
    return hermite_basis(generators, width, ring)
