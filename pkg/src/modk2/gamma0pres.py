"""Twisted cocycle module over the level-M Hecke congruence group.

The group of determinant-one integer matrices with lower-left entry
divisible by M, taken up to sign, acts on the projective line mod M by
right multiplication on bottom rows.  Walking that coset space gives a
Schreier transversal, generators and relators for the group, and from
those a presentation of the universal target module for twisted
one-cocycles: one generator per (unit class, Schreier generator) pair,
one relation row per rewritten relator and unit twist, plus one row per
cusp killing the stabilizer generator of that cusp.

Everything is exact integer linear algebra on small matrices.
"""

import math

from .arith import euler_phi
from .intlinalg import IntQuotient, RowSolver, xgcd
from .modsym import CuspTable, genus

SIGMA = ((0, -1), (1, 0))
TAU = ((0, -1), (1, -1))
TMAT = ((1, 1), (0, 1))

IDENT = ((1, 0), (0, 1))


def mat22_mul(m1, m2):
    (a, b), (c, d) = m1
    (e, f), (g, h) = m2
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def mat22_inv(m):
    # determinant-one inverse
    (a, b), (c, d) = m
    assert a * d - b * c == 1
    return ((d, -b), (-c, a))


def mat22_neg(m):
    (a, b), (c, d) = m
    return ((-a, -b), (-c, -d))


def psl_canon(m):
    """Sign representative: first nonzero of (c, d, a, b) positive."""
    (a, b), (c, d) = m
    for v in (c, d, a, b):
        if v:
            return m if v > 0 else mat22_neg(m)
    raise ValueError("zero matrix")


def psl_word(m):
    """Write m, up to sign, as a word in SIGMA and TAU.

    Returns a list of 's' and 't' letters whose left-to-right product is
    m up to sign.  Uses the continued-fraction descent on the lower-left
    entry, with T = tau*tau*sigma and T^-1 = sigma*tau.
    """
    letters = []

    def emit_t_power(k):
        if k > 0:
            letters.extend(['t', 't', 's'] * k)
        elif k < 0:
            letters.extend(['s', 't'] * (-k))

    cur = m
    while True:
        (a, b), (c, d) = cur
        if c == 0:
            # cur is (1, b; 0, 1) up to sign
            emit_t_power(b if a > 0 else -b)
            break
        q = a // c
        emit_t_power(q)
        letters.append('s')
        cur = mat22_mul(SIGMA, mat22_mul(((1, -q), (0, 1)), cur))
    prod = IDENT
    table = {'s': SIGMA, 't': TAU}
    for x in letters:
        prod = mat22_mul(prod, table[x])
    assert prod == m or prod == mat22_neg(m)
    return letters


def p1_normalize(M, c, d):
    """Canonical representative of (c : d) under unit scaling mod M."""
    best = None
    for u in range(1, M):
        if math.gcd(u, M) != 1:
            continue
        cand = ((u * c) % M, (u * d) % M)
        if best is None or cand < best:
            best = cand
    return best


def p1_points(M):
    seen = set()
    out = []
    for c in range(M):
        for d in range(M):
            if math.gcd(math.gcd(c, d), M) != 1:
                continue
            pt = p1_normalize(M, c, d)
            if pt not in seen:
                seen.add(pt)
                out.append(pt)
    out.sort()
    return out


def unit_classes(M):
    """Units mod M up to sign, canonical representative the smaller lift."""
    out = []
    for u in range(1, M):
        if math.gcd(u, M) == 1 and min(u, M - u) == u:
            out.append(u)
    if M == 2:
        out = [1]
    return sorted(set(out))


def unit_canon(M, u):
    u %= M
    return min(u, M - u)


class CocycleModule:
    """Universal target of twisted one-cocycles vanishing on stabilizers.

    Basis elements are pairs (unit class g, Schreier generator y); the
    quotient imposes the Fox rows of the sigma- and tau-relators at every
    twist and one row per cusp from its parabolic stabilizer generator.
    """

    def __init__(self, M):
        assert M > 3
        self.M = M
        self.units = unit_classes(M)
        self.unit_index = {u: i for i, u in enumerate(self.units)}
        self.ng = len(self.units)

        self.points = p1_points(M)
        self.point_index = {p: i for i, p in enumerate(self.points)}
        self._build_transversal()
        self._build_generators()
        self._build_rows()
        self.quotient = IntQuotient(self.rows, self.dim)

    # ----- coset walking -----

    def _act(self, pt, m):
        c, d = pt
        (a, b), (cc, dd) = m
        return p1_normalize(self.M, c * a + d * cc, c * b + d * dd)

    def _build_transversal(self):
        start = p1_normalize(self.M, 0, 1)
        self.start = self.point_index[start]
        trans = {self.start: IDENT}
        self.tree_edges = set()
        queue = [self.start]
        while queue:
            i = queue.pop(0)
            for name, m in (('s', SIGMA), ('t', TAU)):
                j = self.point_index[self._act(self.points[i], m)]
                if j not in trans:
                    trans[j] = mat22_mul(trans[i], m)
                    self.tree_edges.add((i, name))
                    queue.append(j)
        assert len(trans) == len(self.points)
        self.transversal = [trans[i] for i in range(len(self.points))]

    def _build_generators(self):
        # one formal generator per non-tree edge of the coset walk; tree
        # edges carry the trivial element by construction
        self.gens = []
        self.edge_gen = {}
        for i in range(len(self.points)):
            for name, m in (('s', SIGMA), ('t', TAU)):
                if (i, name) in self.tree_edges:
                    self.edge_gen[(i, name)] = None
                    continue
                j = self.point_index[self._act(self.points[i], m)]
                y = mat22_mul(mat22_mul(self.transversal[i], m),
                              mat22_inv(self.transversal[j]))
                assert y[1][0] % self.M == 0
                self.edge_gen[(i, name)] = len(self.gens)
                self.gens.append(psl_canon(y))
        self.dim = self.ng * len(self.gens)

    # ----- rows -----

    def _twist_of(self, y):
        return unit_canon(self.M, y[1][1])

    def col(self, g, k):
        return k * self.ng + self.unit_index[unit_canon(self.M, g)]

    def _walk_row(self, start, letters, twist0=1):
        """Fox row of the rewritten word, starting the walk at a coset.

        Returns (row, end coset, final twist).  The row lives at base
        twist twist0 and records sum of <prefix> * e_gen terms.
        """
        row = [0] * self.dim
        i = start
        tw = twist0
        table = {'s': SIGMA, 't': TAU}
        for x in letters:
            k = self.edge_gen[(i, x)]
            j = self.point_index[self._act(self.points[i], table[x])]
            if k is not None:
                row[self.col(tw, k)] += 1
                tw = unit_canon(self.M, tw * self._twist_of(self.gens[k]))
            i = j
        return row, i, tw

    def _gen_equal_rows(self, row):
        """All unit twists of an integer row over the (g, y) basis."""
        out = []
        for g in self.units:
            twisted = [0] * self.dim
            for idx, v in enumerate(row):
                if v:
                    k, ui = divmod(idx, self.ng)
                    t = unit_canon(self.M, g * self.units[ui])
                    twisted[self.col(t, k)] += v
            out.append(twisted)
        return out

    def stabilizer_matrix(self, a, b):
        """Parabolic generator of the level-M stabilizer of the cusp a/b.

        Smallest positive width h with the conjugated translation both
        lower-triangular mod M and trivially twisted.
        """
        M = self.M
        g, x, y = xgcd(a, b)
        assert g == 1
        gm = ((a, -y), (b, x))
        for h in range(1, M + 1):
            if (b * b * h) % M == 0 and (a * b * h) % M == 0:
                return mat22_mul(mat22_mul(gm, ((1, h), (0, 1))),
                                 mat22_inv(gm)), h
        raise AssertionError("no parabolic width found")

    def _build_rows(self):
        rows = []
        seen = set()
        for i in range(len(self.points)):
            for word in (['s', 's'], ['t', 't', 't']):
                row, end, _ = self._walk_row(i, word)
                assert end == i
                for r in self._gen_equal_rows(row):
                    key = tuple(r)
                    if any(r) and key not in seen:
                        seen.add(key)
                        rows.append(r)
        self.cusps = CuspTable(self.M)
        for (a, b) in self.cusps.reps:
            mat, width = self.stabilizer_matrix(a, b)
            row = self.element_row(mat)
            key = tuple(row)
            if any(row) and key not in seen:
                seen.add(key)
                rows.append(row)
        self.rows = rows

    def element_row(self, mat):
        """Cocycle value of a group element as a row over the basis."""
        assert mat[1][0] % self.M == 0
        letters = psl_word(mat)
        row, end, _ = self._walk_row(self.start, letters)
        assert end == self.start
        return row

    # ----- invariants and the homology comparison -----

    def expected_rank(self):
        return 2 * genus(self.M) + self.ng - 1

    def rank_matches(self):
        return self.quotient.invariants() == ([], self.expected_rank())

    def homology_image_row(self, pres, g, k):
        """Image of basis element (g, y_k) under g * path(0 -> y_k 0)."""
        y = self.gens[k]
        (a, b), (c, d) = y
        vec = pres.decompose_to_reduced((0, 1), (b, d))
        return pres.apply_diamond(g, vec)

    def map_kills_relations(self, pres):
        zero = pres.quotient.reduce([0] * pres.nred)
        for row in self.rows:
            img = [0] * pres.nred
            for idx, v in enumerate(row):
                if v:
                    k, ui = divmod(idx, self.ng)
                    term = self.homology_image_row(pres, self.units[ui], k)
                    img = [p + v * q for p, q in zip(img, term)]
            if pres.quotient.reduce(img) != zero:
                return False
        return True

    def surjects_onto_interior_homology(self, pres):
        basis = pres.homology_basis(pres.cusps.zero_orbit)
        solver = RowSolver([fv for fv, _ in basis])
        cut = pres.quotient.rank
        coords = []
        for g in self.units:
            for k in range(len(self.gens)):
                img = self.homology_image_row(pres, g, k)
                red = pres.quotient.reduce(img)
                if any(red[:cut]):
                    return False
                sol = solver.solve(list(red[cut:]))
                if sol is None:
                    return False
                coords.append(sol)
        return IntQuotient(coords, len(basis)).invariants() == ([], 0)
