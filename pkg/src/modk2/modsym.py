"""Modular symbol presentations for the second kind of congruence level structure.

A symbol class at level M is a pair (c, d) mod M with gcd(c, d, M) = 1, taken
up to global sign.  The presentation has one generator per class and the two
standard relation families (the order-2 and order-3 rotations); its quotient
is the integral homology of the level-M curve relative to all cusps, which is
torsion free of rank 2*genus + #cusps - 1 once M >= 4.

On top of the presentation this module builds cusp tables, boundary maps,
Hecke and diamond operators, the two degeneracy maps between levels, the
interior symbol range (classes with c != 0 and d != 0) together with the
Fricke-twisted decomposition used by the wedge map, and independent genus and
cusp-count formulas used as oracles.
"""

import math

from .arith import divisors, euler_phi, factorize
from .intlinalg import IntQuotient, RowSolver, rank_mod_p, smith_normal_form, xgcd


def normalize_pair(M, c, d):
    """Canonical representative of +-(c, d) mod M."""
    c %= M
    d %= M
    alt = ((-c) % M, (-d) % M)
    return min((c, d), alt)


def enumerate_classes(M):
    out = []
    for c in range(M):
        for d in range(M):
            if math.gcd(c, d, M) != 1:
                continue
            if normalize_pair(M, c, d) == (c, d):
                out.append((c, d))
    return out


def lift_to_sl2(M, c, d):
    """Integer matrix ((a, b), (cc, dd)) with det 1 and (cc, dd) = (c, d) mod M."""
    cc = c % M
    dd = d % M
    if cc == 0:
        cc = M
    t = 0
    while math.gcd(cc, dd + t * M) != 1:
        t += 1
    dd = dd + t * M
    g, x, y = xgcd(cc, dd)
    assert g == 1
    # cc*x + dd*y = 1, so the top row (y, -x) gives det y*dd - (-x)*cc = 1
    return ((y, -x), (cc, dd))


def reduce_fraction(num, den):
    """Reduced endpoint pair: den >= 0, den = 0 means the infinite cusp."""
    if den == 0:
        return (1, 0)
    if den < 0:
        num, den = -num, -den
    g = math.gcd(abs(num), den)
    if g > 1:
        num //= g
        den //= g
    return (num, den)


def _path_classes(M, num, den):
    """Classes covering the path from the infinite cusp to num/den.

    The continued-fraction convergents p_j/q_j of num/den give on step j the
    class (q_j, (-1)^(j-1) * q_(j-1)); all coefficients are +1.
    """
    num, den = reduce_fraction(num, den)
    if den == 0:
        return []
    out = []
    p_prev, q_prev = 1, 0
    p_pp, q_pp = 0, 1
    n, d = num, den
    j = 0
    while True:
        a = n // d
        p_cur, q_cur = a * p_prev + p_pp, a * q_prev + q_pp
        sign = -1 if j % 2 == 0 else 1
        out.append(normalize_pair(M, q_cur, sign * q_prev))
        n, d = d, n - a * d
        if d == 0:
            break
        p_pp, q_pp = p_prev, q_prev
        p_prev, q_prev = p_cur, q_cur
        j += 1
    assert (p_cur, q_cur) == (num, den)
    return out


def decompose(M, start, end):
    """Symbol {start -> end} as a class/coefficient dict at level M."""
    out = {}
    for key in _path_classes(M, *end):
        out[key] = out.get(key, 0) + 1
    for key in _path_classes(M, *start):
        out[key] = out.get(key, 0) - 1
    return {k: v for k, v in out.items() if v}


def coprime_lift(M, a, b):
    """Coprime integer pair congruent to (a, b) mod M; needs gcd(a, b, M) = 1."""
    a %= M
    b %= M
    for total in range(2 * M + 2):
        for i in range(total + 1):
            j = total - i
            if math.gcd(a + i * M, b + j * M) == 1:
                return (a + i * M, b + j * M)
    raise AssertionError("no coprime lift of (%d, %d) mod %d" % (a, b, M))


def cusps_equivalent(M, p1, p2):
    """Whether two coprime integer pairs give the same cusp at level M."""
    a1, b1 = p1
    a2, b2 = p2
    g = math.gcd(b1, M)
    for s in (1, -1):
        if (b2 - s * b1) % M == 0 and (a2 - s * a1) % g == 0:
            return True
    return False


class CuspTable:
    """Cusp classes at level M with the unit action and its orbits."""

    def __init__(self, M):
        self.M = M
        self.reps = []
        self._class_cache = {}
        for a in range(M):
            for b in range(M):
                if math.gcd(a, b, M) != 1:
                    continue
                pair = coprime_lift(M, a, b)
                if (a, b) not in self._class_cache:
                    idx = None
                    for k, rep in enumerate(self.reps):
                        if cusps_equivalent(M, rep, pair):
                            idx = k
                            break
                    if idx is None:
                        idx = len(self.reps)
                        self.reps.append(pair)
                    self._class_cache[(a, b)] = idx
        self.n = len(self.reps)
        self.units = [t for t in range(1, M) if math.gcd(t, M) == 1]
        self._diamond_cache = {}
        self.zero_orbit = self._orbit(self.class_of_fraction(0, 1), self.units)
        self.infinity_orbit = self._orbit(self.class_of_fraction(1, 0), self.units)
        self.interior = sorted(set(range(self.n)) - self.zero_orbit)

    def class_of_pair(self, a, b):
        key = (a % self.M, b % self.M)
        idx = self._class_cache.get(key)
        if idx is not None:
            return idx
        pair = (a, b) if math.gcd(a, b) == 1 else coprime_lift(self.M, a, b)
        for k, rep in enumerate(self.reps):
            if cusps_equivalent(self.M, rep, pair):
                self._class_cache[key] = k
                return k
        raise AssertionError("cusp not found")

    def class_of_fraction(self, num, den):
        num, den = reduce_fraction(num, den)
        return self.class_of_pair(num, den)

    def diamond(self, t):
        """Index permutation induced by the unit t acting on cusps."""
        t %= self.M
        if t in self._diamond_cache:
            return self._diamond_cache[t]
        g, x, y = xgcd(t, self.M)
        assert g == 1
        # the matrix ((x, -y), (M, t)) has det 1, is trivial at the base level,
        # and acts as the unit t on level structures
        perm = []
        for (a, b) in self.reps:
            perm.append(self.class_of_fraction(x * a - y * b, self.M * a + t * b))
        self._diamond_cache[t] = perm
        return perm

    def _orbit(self, idx, units):
        seen = {idx}
        stack = [idx]
        while stack:
            cur = stack.pop()
            for t in units:
                nxt = self.diamond(t)[cur]
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return seen

    def kernel_orbits(self, M_sub):
        """Orbits on interior cusps under units congruent to 1 mod M_sub."""
        assert self.M % M_sub == 0 and self.M > M_sub
        kern = [t for t in self.units if t % M_sub == 1]
        orbits = []
        seen = set()
        for idx in self.interior:
            if idx in seen:
                continue
            orb = self._orbit(idx, kern)
            orb &= set(self.interior)
            seen |= orb
            orbits.append(sorted(orb))
        orbits.sort(key=lambda o: o[0])
        return orbits


def index_mu(M):
    """Number of sign-normalized classes at level M (M > 2)."""
    assert M > 2
    mu = M * M
    for p in factorize(M):
        mu = mu // (p * p) * (p * p - 1)
    assert mu % 2 == 0
    return mu // 2


def cusp_number(M):
    if M <= 4:
        return [1, 2, 2, 3][M - 1]
    total = sum(euler_phi(d) * euler_phi(M // d) for d in divisors(M))
    assert total % 2 == 0
    return total // 2


def genus(M):
    assert M >= 4
    twelve_g = 12 + index_mu(M) - 6 * cusp_number(M)
    assert twelve_g % 12 == 0 and twelve_g >= 0
    return twelve_g // 12


def _vec_add(acc, vec, scale):
    for i, v in enumerate(vec):
        if v:
            acc[i] += v * scale


class ManinPresentation:
    """Relation quotient, cusp data and operators for one level M >= 4."""

    def __init__(self, M):
        assert M >= 4
        self.M = M
        self.classes = enumerate_classes(M)
        self.n = len(self.classes)
        self.index = {pair: i for i, pair in enumerate(self.classes)}
        self.lifts = [lift_to_sl2(M, c, d) for (c, d) in self.classes]

        # eliminate the order-2 relation up front: each class is glued to its
        # rotation partner with a sign, fixed classes contribute a 2-torsion row
        self.reduced_of = [None] * self.n
        self.reps = []
        two_rows = []
        for i, (c, d) in enumerate(self.classes):
            if self.reduced_of[i] is not None:
                continue
            r = len(self.reps)
            self.reps.append(i)
            self.reduced_of[i] = (r, 1)
            j = self.index[normalize_pair(M, d, -c)]
            if j == i:
                two_rows.append(r)
            else:
                self.reduced_of[j] = (r, -1)
        self.nred = len(self.reps)

        rows = []
        for r in two_rows:
            row = [0] * self.nred
            row[r] = 2
            rows.append(row)
        seen_orbits = set()
        for i, (c, d) in enumerate(self.classes):
            j = self.index[normalize_pair(M, d, -c - d)]
            cj, dj = self.classes[j]
            k = self.index[normalize_pair(M, dj, -cj - dj)]
            orbit = frozenset((i, j, k))
            if orbit in seen_orbits:
                continue
            seen_orbits.add(orbit)
            row = [0] * self.nred
            for m in (i, j, k):
                r, s = self.reduced_of[m]
                row[r] += s
            if any(row):
                rows.append(row)
        self.relation_rows = rows
        self.quotient = IntQuotient(rows, self.nred)

        self.cusps = CuspTable(M)
        self.boundary_red = [self._boundary_of_rep(r) for r in range(self.nred)]
        for row in self.relation_rows:
            bnd = [0] * self.cusps.n
            for r, v in enumerate(row):
                if v:
                    _vec_add(bnd, self.boundary_red[r], v)
            assert not any(bnd), "relation with nonzero boundary"
        self.free_lifts = self.quotient.free_lifts()
        self.boundary_free = []
        for lift in self.free_lifts:
            bnd = [0] * self.cusps.n
            for r, v in enumerate(lift):
                if v:
                    _vec_add(bnd, self.boundary_red[r], v)
            self.boundary_free.append(bnd)

        self.interior_classes = [i for i, (c, d) in enumerate(self.classes)
                           if c % M != 0 and d % M != 0]
        self._xi_rows = None
        self._xi_solver = None

    # ----- basic coordinates -----

    def class_to_reduced(self, i, scale=1):
        vec = [0] * self.nred
        r, s = self.reduced_of[i]
        vec[r] += s * scale
        return vec

    def dict_to_reduced(self, class_dict):
        vec = [0] * self.nred
        for key, coeff in class_dict.items():
            r, s = self.reduced_of[self.index[key]]
            vec[r] += s * coeff
        return vec

    def decompose_to_reduced(self, start, end):
        return self.dict_to_reduced(decompose(self.M, start, end))

    def symbol_endpoints(self, i):
        """Start and end fractions of the path attached to class i."""
        (a, b), (c, d) = self.lifts[i]
        return (b, d), (a, c)

    def _boundary_of_rep(self, r):
        (a, b), (c, d) = self.lifts[self.reps[r]]
        bnd = [0] * self.cusps.n
        bnd[self.cusps.class_of_fraction(a, c)] += 1
        bnd[self.cusps.class_of_fraction(b, d)] -= 1
        return bnd

    def boundary_of_vec(self, vec):
        bnd = [0] * self.cusps.n
        for r, v in enumerate(vec):
            if v:
                _vec_add(bnd, self.boundary_red[r], v)
        return bnd

    def free_to_reduced(self, free_vec):
        vec = [0] * self.nred
        for coeff, lift in zip(free_vec, self.free_lifts):
            if coeff:
                _vec_add(vec, lift, coeff)
        return vec

    # ----- operators -----

    def apply_diamond(self, t, vec):
        out = [0] * self.nred
        M = self.M
        for r, v in enumerate(vec):
            if not v:
                continue
            c, d = self.classes[self.reps[r]]
            r2, s2 = self.reduced_of[self.index[normalize_pair(M, t * c, t * d)]]
            out[r2] += s2 * v
        return out

    def _sum_symbol_images(self, i, maps):
        """Sum of decompositions of transformed endpoint pairs of class i."""
        (start, end) = self.symbol_endpoints(i)
        out = [0] * self.nred
        for f in maps:
            _vec_add(out, self.decompose_to_reduced(f(start), f(end)), 1)
        return out

    def _u_maps(self, ell):
        maps = []
        for j in range(ell):
            maps.append(lambda fr, j=j: (fr[0] + j * fr[1], fr[1] * ell))
        return maps

    def apply_u(self, ell, vec):
        out = [0] * self.nred
        maps = self._u_maps(ell)
        for r, v in enumerate(vec):
            if v:
                _vec_add(out, self._sum_symbol_images(self.reps[r], maps), v)
        return out

    def apply_t(self, ell, vec):
        assert self.M % ell != 0
        out = self.apply_u(ell, vec)
        scaled = [0] * self.nred
        for r, v in enumerate(vec):
            if not v:
                continue
            start, end = self.symbol_endpoints(self.reps[r])
            img = self.decompose_to_reduced((ell * start[0], start[1]),
                                            (ell * end[0], end[1]))
            _vec_add(scaled, img, v)
        _vec_add(out, self.apply_diamond(ell, scaled), 1)
        return out

    def apply_w(self, vec):
        """Fricke involution: endpoints x/y map to -y/(M*x)."""
        out = [0] * self.nred
        M = self.M
        for r, v in enumerate(vec):
            if not v:
                continue
            start, end = self.symbol_endpoints(self.reps[r])
            img = self.decompose_to_reduced((-start[1], M * start[0]),
                                            (-end[1], M * end[0]))
            _vec_add(out, img, v)
        return out

    # ----- interior symbol range and the twisted decomposition -----

    def manin_image_of_class(self, i):
        (a, b), (c, d) = self.lifts[i]
        M = self.M
        return self.decompose_to_reduced((-d, M * b), (-c, M * a))

    def manin_image_rows(self):
        if self._xi_rows is None:
            self._xi_rows = [self.manin_image_of_class(i) for i in self.interior_classes]
        return self._xi_rows

    def _solver(self):
        if self._xi_solver is None:
            stacked = [list(r) for r in self.manin_image_rows()]
            stacked.extend(list(r) for r in self.relation_rows)
            self._xi_solver = RowSolver(stacked)
        return self._xi_solver

    def express_in_manin_image(self, vec):
        """Coefficients over interior classes mapping to vec, or None."""
        sol = self._solver().solve(vec)
        if sol is None:
            return None
        return sol[: len(self.interior_classes)]

    def manin_kernel_vectors(self):
        """Spanning set for coefficient vectors with trivial twisted image."""
        out = []
        k = len(self.interior_classes)
        for row in self._solver().kernel_basis():
            x = row[:k]
            if any(x):
                out.append(x)
        return out

    # ----- relative homology bases -----

    def homology_basis(self, allowed_cusps):
        """Basis of the subgroup with boundary supported on allowed_cusps.

        Returns pairs (free_vec, reduced_vec).  The absolute homology is the
        case of an empty allowed set.
        """
        allowed = set(allowed_cusps)
        cols = [j for j in range(self.cusps.n) if j not in allowed]
        if not cols:
            basis = [list(r) for r in _identity(self.quotient.free_rank)]
        else:
            restricted = [[row[j] for j in cols] for row in self.boundary_free]
            kv = RowSolver(restricted).kernel_basis()
            basis = lattice_row_basis(kv)
        return [(b, self.free_to_reduced(b)) for b in basis]

    def absolute_rank(self):
        if not self.boundary_free:
            return 0
        D, U, V, Vinv = smith_normal_form([list(r) for r in self.boundary_free])
        rank_b = sum(1 for i in range(min(len(D), len(D[0]) if D else 0))
                     if D[i][i] != 0)
        return self.quotient.free_rank - rank_b


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def lattice_row_basis(rows):
    """Independent basis of the row span of an integer matrix."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    D, U, V, Vinv = smith_normal_form([list(r) for r in rows])
    n = len(rows[0])
    rank = sum(1 for i in range(min(len(rows), n)) if D[i][i] != 0)
    out = []
    for i in range(rank):
        row = [sum(U[i][k] * rows[k][j] for k in range(len(rows))) for j in range(n)]
        out.append(row)
    return out


def degeneracy_rows(pres_high, pres_low, p):
    """Images of the level-N reduced basis under the two level-lowering maps.

    The first map keeps endpoints, the second scales them by p.  Requires
    pres_high.M == p * pres_low.M.
    """
    assert pres_high.M == p * pres_low.M
    pi1 = []
    pi2 = []
    for r in range(pres_high.nred):
        start, end = pres_high.symbol_endpoints(pres_high.reps[r])
        pi1.append(pres_low.decompose_to_reduced(start, end))
        pi2.append(pres_low.decompose_to_reduced((p * start[0], start[1]),
                                                 (p * end[0], end[1])))
    return pi1, pi2


def degeneracy_surjective_mod_p(pres_high, pres_low, p):
    """Whether (first map) - <p>(second map) maps the closed-surface
    homology onto the one downstairs mod p.

    Both sides are the boundary-free subgroups; their mod-p reductions
    keep ranks 2g because the boundary sequences split over Z.
    """
    pi1, pi2 = degeneracy_rows(pres_high, pres_low, p)
    rows = []
    for free_vec, red in pres_high.homology_basis(()):
        a = [0] * pres_low.nred
        b = [0] * pres_low.nred
        for r, c in enumerate(red):
            if c:
                a = [x + c * y for x, y in zip(a, pi1[r])]
                b = [x + c * y for x, y in zip(b, pi2[r])]
        tw = pres_low.apply_diamond(p, b)
        rows.append([x - y for x, y in zip(a, tw)])
    rel = [list(r) for r in pres_low.relation_rows]
    img_rank = rank_mod_p(rows + rel, p) - rank_mod_p(rel, p)
    return img_rank == 2 * genus(pres_low.M)


_PRESENTATIONS = {}


def get_presentation(M):
    if M not in _PRESENTATIONS:
        _PRESENTATIONS[M] = ManinPresentation(M)
    return _PRESENTATIONS[M]
