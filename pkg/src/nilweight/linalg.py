"""Small exact linear algebra: rationals for decompositions, F_q for tables.

Everything is dense lists; the matrices here never exceed a few dozen rows.
"""

from __future__ import annotations

from fractions import Fraction

from .sigma import is_prime

# --- rational solving -------------------------------------------------------


def solve_unique_rational(columns: list[list[Fraction]], target: list[Fraction]):
    """Solve sum_j x_j * columns[j] = target for independent columns.

    Returns the coefficient list, or None if the system is inconsistent.
    Raises if the columns are linearly dependent (no unique solution).
    """
    n_rows = len(target)
    n_cols = len(columns)
    aug = [[Fraction(col[i]) for col in columns] + [Fraction(target[i])] for i in range(n_rows)]
    pivots = []
    row = 0
    for col in range(n_cols):
        pivot = next((r for r in range(row, n_rows) if aug[r][col]), None)
        if pivot is None:
            raise ValueError("columns are linearly dependent")
        aug[row], aug[pivot] = aug[pivot], aug[row]
        pv = aug[row][col]
        aug[row] = [v / pv for v in aug[row]]
        for r in range(n_rows):
            if r != row and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
    for r in range(row, n_rows):
        if aug[r][n_cols]:
            return None
    return [aug[i][n_cols] for i in range(n_cols)]


def nonneg_integer_solution(columns, target):
    """Unique rational solution if it is a nonnegative integer vector, else None."""
    sol = solve_unique_rational(columns, target)
    if sol is None:
        return None
    if all(x.denominator == 1 and x >= 0 for x in sol):
        return [int(x) for x in sol]
    return None


# --- F_q helpers -------------------------------------------------------


def find_splitting_prime(exponent: int, order: int, cap: int = 10_000_000) -> int:
    """Least prime q = 1 (mod exponent) with q > 2*sqrt(order)."""
    import math

    low = 2 * math.isqrt(order) + 1
    q = exponent + 1
    while q <= cap:
        if q > low and is_prime(q):
            return q
        q += exponent
    raise RuntimeError(f"no splitting prime below {cap} for exponent {exponent}")


def primitive_root(q: int) -> int:
    from .sigma import prime_divisors

    phi = q - 1
    for w in range(2, q):
        if all(pow(w, phi // p, q) != 1 for p in prime_divisors(phi)):
            return w
    raise RuntimeError(f"no primitive root modulo {q}")


def mat_vec_mod(M, v, q):
    return [sum(Mrow[k] * v[k] for k in range(len(v))) % q for Mrow in M]


def rref_mod(rows, q):
    """Reduced row echelon form mod q; returns (rows, pivot column list)."""
    rows = [list(r) for r in rows]
    n_cols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] % q), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], -1, q)
        rows[r] = [(x * inv) % q for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % q:
                f = rows[i][c]
                rows[i] = [(a - f * b) % q for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [row for row in rows[:r]], pivots


def nullspace_mod(M, q):
    """Basis of the right kernel of M (list of rows) over F_q."""
    n = len(M[0])
    rows, pivots = rref_mod(M, q)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-rows[r][fc]) % q
        basis.append(v)
    return basis


def charpoly_mod(A, q):
    """Characteristic polynomial of A over F_q, constant term first, monic."""
    n = len(A)
    H = [row[:] for row in A]
    # similarity reduction to upper Hessenberg form
    for col in range(n - 2):
        pivot = next((i for i in range(col + 1, n) if H[i][col] % q), None)
        if pivot is None:
            continue
        if pivot != col + 1:
            H[col + 1], H[pivot] = H[pivot], H[col + 1]
            for row in H:
                row[col + 1], row[pivot] = row[pivot], row[col + 1]
        inv = pow(H[col + 1][col], -1, q)
        for i in range(col + 2, n):
            if H[i][col] % q:
                f = (H[i][col] * inv) % q
                H[i] = [(a - f * b) % q for a, b in zip(H[i], H[col + 1])]
                for row in H:
                    row[col + 1] = (row[col + 1] + f * row[i]) % q
    # p_m(x) = (x - H[m-1][m-1]) p_{m-1} - sum_i H[i-1][m-1] (prod subdiag) p_{i-1}
    polys = [[1]]
    for m in range(1, n + 1):
        h = H[m - 1][m - 1] % q
        prev = polys[m - 1]
        new = [0] * (len(prev) + 1)
        for i, c in enumerate(prev):
            new[i + 1] = (new[i + 1] + c) % q
            new[i] = (new[i] - h * c) % q
        subprod = 1
        for i in range(m - 1, 0, -1):
            subprod = (subprod * H[i][i - 1]) % q
            coeff = (H[i - 1][m - 1] * subprod) % q
            if coeff:
                for j, c in enumerate(polys[i - 1]):
                    new[j] = (new[j] - coeff * c) % q
        polys.append(new)
    return [c % q for c in polys[n]]


def poly_roots_mod(poly, q):
    """All roots in F_q of a polynomial given constant-first."""
    roots = []
    for x in range(q):
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % q
        if acc == 0:
            roots.append(x)
    return roots
