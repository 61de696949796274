"""Exact integer linear algebra: Smith form with transforms, quotients, solves.

Matrices are lists of lists of python ints, row major.  Everything is
arbitrary precision; nothing here tolerates floats.
"""

from math import gcd


def xgcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) >= 0 and g == x*a + y*b."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    rows_b = len(B)
    cols = len(B[0]) if rows_b else 0
    out = []
    for row in A:
        acc = [0] * cols
        for a, brow in zip(row, B):
            if a:
                for j, b in enumerate(brow):
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


def vec_mat(x, B):
    cols = len(B[0]) if B else 0
    acc = [0] * cols
    for a, brow in zip(x, B):
        if a:
            for j, b in enumerate(brow):
                if b:
                    acc[j] += a * b
    return acc


def smith_normal_form(A):
    """Diagonalize A over the integers.

    Returns (D, U, V, Vinv) with U*A*V == D, U and V unimodular and
    V*Vinv the identity.  D is diagonal, entries nonnegative, each
    dividing the next.  A itself is not modified.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(row) for row in A]
    U = identity_matrix(m)
    V = identity_matrix(n)
    Vinv = identity_matrix(n)

    def row_sub(i, j, q):
        if not q:
            return
        Di, Dj = D[i], D[j]
        for k in range(n):
            if Dj[k]:
                Di[k] -= q * Dj[k]
        Ui, Uj = U[i], U[j]
        for k in range(m):
            if Uj[k]:
                Ui[k] -= q * Uj[k]

    def col_sub(j, i, q):
        # column j -= q * column i on D and V, inverse row op on Vinv
        if not q:
            return
        for row in D:
            if row[i]:
                row[j] -= q * row[i]
        for row in V:
            if row[i]:
                row[j] -= q * row[i]
        vi, vj = Vinv[i], Vinv[j]
        for k in range(n):
            if vj[k]:
                vi[k] += q * vj[k]

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    t = 0
    limit = min(m, n)
    while t < limit:
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        if best[1] != t:
            row_swap(t, best[1])
        if best[2] != t:
            col_swap(t, best[2])

        while True:
            for i in range(t + 1, m):
                if D[i][t]:
                    row_sub(i, t, D[i][t] // D[t][t])
            left = [i for i in range(t + 1, m) if D[i][t]]
            if left:
                # remainders beat the pivot, promote the smallest
                row_swap(t, min(left, key=lambda i: abs(D[i][t])))
                continue
            for j in range(t + 1, n):
                if D[t][j]:
                    col_sub(j, t, D[t][j] // D[t][t])
            left = [j for j in range(t + 1, n) if D[t][j]]
            if left:
                col_swap(t, min(left, key=lambda j: abs(D[t][j])))
                continue
            break

        # the pivot must divide the remaining submatrix or the chain breaks
        p = D[t][t]
        offender = None
        for i in range(t + 1, m):
            row = D[i]
            for j in range(t + 1, n):
                if row[j] % p:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_sub(t, offender, -1)
            continue
        if p < 0:
            D[t] = [-v for v in D[t]]
            U[t] = [-v for v in U[t]]
        t += 1
    return D, U, V, Vinv


class RowSolver:
    """Factored form of B for solving x * B == target over the integers."""

    def __init__(self, B, ncols=None):
        self.m = len(B)
        self.n = len(B[0]) if B else int(ncols or 0)
        D, U, V, _ = smith_normal_form(B)
        self.U = U
        self.V = V
        r = 0
        lim = min(self.m, self.n)
        while r < lim and D[r][r]:
            r += 1
        self.rank = r
        self.diag = [D[i][i] for i in range(r)]

    def solve(self, target):
        """An integer x with x * B == target, or None if none exists."""
        c = vec_mat(target, self.V)
        for j in range(self.rank, self.n):
            if c[j]:
                return None
        x = [0] * self.m
        for j in range(self.rank):
            q, rem = divmod(c[j], self.diag[j])
            if rem:
                return None
            if q:
                Uj = self.U[j]
                for k in range(self.m):
                    if Uj[k]:
                        x[k] += q * Uj[k]
        return x

    def contains(self, target):
        return self.solve(target) is not None

    def kernel_basis(self):
        """Rows spanning {x : x*B == 0}; saturated since U is unimodular."""
        return [list(self.U[i]) for i in range(self.rank, self.m)]


class IntQuotient:
    """Z^n modulo the row span of a relation matrix.

    reduce() maps a vector to a canonical tuple, one residue per torsion
    invariant and one integer per free generator, so two vectors agree in
    the quotient iff their tuples are equal.
    """

    def __init__(self, relations, n):
        self.n = n
        rows = [list(r) for r in relations]
        if not rows:
            rows = [[0] * n]
        for r in rows:
            assert len(r) == n
        D, U, V, Vinv = smith_normal_form(rows)
        lim = min(len(rows), n)
        r = 0
        while r < lim and D[r][r]:
            r += 1
        self.rank = r
        self.V = V
        self.Vinv = Vinv
        self.torsion = [D[i][i] for i in range(r)]
        self.free_rank = n - r

    def reduce(self, x):
        y = vec_mat(x, self.V)
        head = [y[i] % self.torsion[i] for i in range(self.rank)]
        return tuple(head + y[self.rank:])

    def is_zero(self, x):
        return not any(self.reduce(x))

    def is_zero_away_from(self, x, primes):
        """Whether x dies in the quotient once the given primes are inverted."""
        y = vec_mat(x, self.V)
        for i in range(self.rank):
            d = self.torsion[i]
            for p in primes:
                while d % p == 0:
                    d //= p
            if y[i] % d:
                return False
        return not any(y[self.rank:])

    def element_order(self, x):
        """Additive order of the class of x, or None when infinite."""
        y = vec_mat(x, self.V)
        if any(y[self.rank:]):
            return None
        o = 1
        for i in range(self.rank):
            d = self.torsion[i]
            k = d // gcd(d, y[i] % d)
            o = o * k // gcd(o, k)
        return o

    def invariants(self):
        """(nontrivial torsion orders, free rank)."""
        return [d for d in self.torsion if d != 1], self.free_rank

    def free_lifts(self):
        """Vectors in Z^n mapping to the canonical free generators."""
        return [list(self.Vinv[i]) for i in range(self.rank, self.n)]


def rank_mod_p(A, p):
    """Rank of A over the prime field with p elements."""
    rows = [[v % p for v in row] for row in A]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    rank = 0
    for j in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if rows[i][j]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][j], -1, p)
        prow = [(v * inv) % p for v in rows[rank]]
        rows[rank] = prow
        for i in range(rank + 1, nrows):
            c = rows[i][j]
            if c:
                rows[i] = [(v - c * w) % p for v, w in zip(rows[i], prow)]
        rank += 1
        if rank == nrows:
            break
    return rank
