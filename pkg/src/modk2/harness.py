"""Named verification checks over the homology-to-K2 machinery.

Each check kind computes a family of assertions and returns a report
dictionary with one entry per assertion, a certificate for each, and an
overall flag.  Reports are deterministic for a fixed seed apart from the
timing fields.
"""

import json
import math
import os
import random
import time

from . import k2model
from .arith import is_prime
from .gamma0pres import CocycleModule, mat22_mul
from .intlinalg import xgcd
from .k2model import (
    PreimageError,
    PresentedK2,
    SymbolicK2,
    km_trivial,
    norm_compare,
    unit_pair_symbol,
    tame_eval,
    k2_image,
)
from .modsym import (
    cusp_number,
    degeneracy_rows,
    degeneracy_surjective_mod_p,
    genus,
    get_presentation,
)
from .torus_k1 import (
    bracket_symbol,
    cocycle_value,
    pullback,
    pushforward_cocycle_compat,
    pushforward_vertical,
)

KINDS = (
    "welldefined",
    "theorem1-divides",
    "theorem1-coprime",
    "atkin",
    "eisenstein",
    "prop31",
    "lemma41",
    "sanity-integrality",
)

BACKENDS = ("tame", "presented", "both")

# product of the two levels in any norm comparison stays below this
LEVEL_BOUND = 60


# ----- cache files -----


def _cache_path(cache_dir, name):
    return os.path.join(cache_dir, name)


def save_wedge_rows(pk, path):
    with open(path, "w") as fh:
        fh.write("modk2 wedge-relations 1\n")
        fh.write("level %d\n" % pk.M)
        fh.write("dim %d\n" % pk.dim)
        fh.write("rows %d\n" % len(pk.rows))
        for row in pk.rows:
            fh.write(" ".join(str(x) for x in row) + "\n")


def load_wedge_rows(path):
    with open(path) as fh:
        lines = fh.read().split("\n")
    assert lines[0] == "modk2 wedge-relations 1", path
    level = int(lines[1].split()[1])
    dim = int(lines[2].split()[1])
    count = int(lines[3].split()[1])
    rows = []
    for ln in lines[4:4 + count]:
        row = [int(x) for x in ln.split()]
        assert len(row) == dim
        rows.append(row)
    assert len(rows) == count
    return level, rows


def presented_model(M, cache_dir=None):
    path = _cache_path(cache_dir, "k2rows-M%d.txt" % M) if cache_dir else None
    if M in k2model._PRESENTED:
        pk = k2model._PRESENTED[M]
        if path and not os.path.exists(path):
            save_wedge_rows(pk, path)
        return pk
    if path and os.path.exists(path):
        level, rows = load_wedge_rows(path)
        assert level == M
        pk = PresentedK2.from_rows(M, rows)
    else:
        pk = PresentedK2(M)
        if path:
            save_wedge_rows(pk, path)
    k2model._PRESENTED[M] = pk
    return pk


def save_degeneracy(path, high, low, p, pi1, pi2):
    with open(path, "w") as fh:
        fh.write("modk2 degeneracy 1\n")
        fh.write("high %d\nlow %d\np %d\n" % (high, low, p))
        fh.write("nrows %d\nncols %d\n" % (len(pi1), len(pi1[0]) if pi1 else 0))
        for block in (pi1, pi2):
            for row in block:
                fh.write(" ".join(str(x) for x in row) + "\n")


def load_degeneracy(path):
    with open(path) as fh:
        lines = fh.read().split("\n")
    assert lines[0] == "modk2 degeneracy 1", path
    high = int(lines[1].split()[1])
    low = int(lines[2].split()[1])
    p = int(lines[3].split()[1])
    nrows = int(lines[4].split()[1])
    ncols = int(lines[5].split()[1])
    vals = []
    for ln in lines[6:6 + 2 * nrows]:
        row = [int(x) for x in ln.split()]
        assert len(row) == ncols
        vals.append(row)
    assert len(vals) == 2 * nrows
    return high, low, p, vals[:nrows], vals[nrows:]


def degeneracy_pair(pres_high, pres_low, p, cache_dir=None):
    path = None
    if cache_dir:
        path = _cache_path(cache_dir,
                           "degeneracy-M%d-p%d.txt" % (pres_high.M, p))
        if os.path.exists(path):
            high, low, pp, pi1, pi2 = load_degeneracy(path)
            assert (high, low, pp) == (pres_high.M, pres_low.M, p)
            return pi1, pi2
    pi1, pi2 = degeneracy_rows(pres_high, pres_low, p)
    if path:
        save_degeneracy(path, pres_high.M, pres_low.M, p, pi1, pi2)
    return pi1, pi2


# ----- shared helpers -----


def _vec_rows(vec, rows):
    out = [0] * len(rows[0])
    for c, row in zip(vec, rows):
        if c:
            for j, x in enumerate(row):
                out[j] += c * x
    return out


def select_cusp_subset(pres_high, M_sub, mode):
    """Kernel orbits of interior cusps used as relative boundary sets."""
    orbits = pres_high.cusps.kernel_orbits(M_sub)
    if mode == "all":
        return orbits
    if mode == "infty":
        inf = pres_high.cusps.class_of_fraction(1, 0)
        for orb in orbits:
            if inf in orb:
                return [orb]
        raise AssertionError("no orbit through the infinite cusp")
    if mode == "orbit":
        return [orbits[0]]
    raise ValueError("unknown cusp mode %r" % (mode,))


def _random_sl2(rng, steps=6):
    m = ((1, 0), (0, 1))
    for _ in range(steps):
        if rng.randrange(2):
            m = mat22_mul(m, ((0, -1), (1, 0)))
        else:
            m = mat22_mul(m, ((1, rng.randrange(-3, 4)), (0, 1)))
    return m


def _random_lower_divisible(rng, n):
    while True:
        k = rng.randrange(-4, 5)
        d = rng.randrange(-9, 10)
        if math.gcd(n * k, d) == 1:
            g, x, y = xgcd(d, n * k)
            return ((x, -y), (n * k, d))


def _presented_annotation(pk, sym, discard):
    red = pk.reduce(sym)
    if not any(red):
        return {"reduced_to_zero": True}
    out = {"reduced_to_zero": False,
           "residual_order": pk.order_of(sym),
           "residual_in_discard_torsion": pk.is_zero_away_from(sym, discard)}
    return out


def _kernel_symbol(pres, kv):
    sym = SymbolicK2.zero(pres.M)
    for x, i in zip(kv, pres.interior_classes):
        if x:
            c, d = pres.classes[i]
            sym = sym + unit_pair_symbol(pres.M, c, d).scale(x)
    return sym


# ----- check kinds -----


def _welldefined_checks(M, backend, cache_dir):
    pres = get_presentation(M)
    pk = presented_model(M, cache_dir)
    checks = []
    for ki, kv in enumerate(pres.manin_kernel_vectors()):
        sym = _kernel_symbol(pres, kv)
        red = pk.reduce(sym)
        entry = {"name": "kernel-vector-%d" % ki,
                 "ok": not any(red)}
        if backend in ("tame", "both"):
            tok, cert = km_trivial(sym)
            entry["tame"] = cert
            entry["ok"] = entry["ok"] and tok
        checks.append(entry)
    return checks


def _norm_relation_checks(M, p, divides, cusp_mode, backend, cache_dir,
                          discard=(2,)):
    N = M * p
    assert N <= LEVEL_BOUND, "levels above the configured bound"
    assert is_prime(p)
    assert (M % p == 0) == divides
    pres_high = get_presentation(N)
    pres_low = get_presentation(M)
    pi1, pi2 = degeneracy_pair(pres_high, pres_low, p, cache_dir)
    checks = []
    pk_high = None
    if backend in ("presented", "both"):
        pk_high = presented_model(N, cache_dir)
        kvs = pres_high.manin_kernel_vectors()
        all_zero = all(not any(pk_high.reduce(_kernel_symbol(pres_high, kv)))
                       for kv in kvs)
        checks.append({"name": "presented-preimage-independence",
                       "ok": all_zero, "kernel_vectors": len(kvs)})
    for orb in select_cusp_subset(pres_high, M, cusp_mode):
        basis = pres_high.homology_basis(orb)
        for bi, (free_vec, red) in enumerate(basis):
            entry = {"name": "orbit%d-basis%d" % (orb[0], bi),
                     "orbit": list(orb)}
            try:
                s_high = k2_image(pres_high, red)
                low = _vec_rows(red, pi1)
                if not divides:
                    tw = pres_low.apply_diamond(p, _vec_rows(red, pi2))
                    low = [a - b for a, b in zip(low, tw)]
                s_low = k2_image(pres_low, low)
            except PreimageError as err:
                entry["ok"] = False
                entry["error"] = "preimage: %s" % (err,)
                checks.append(entry)
                continue
            if backend in ("tame", "both"):
                ok, cert = norm_compare(M, p, s_high, s_low, discard)
                entry["ok"] = ok
                entry["tame"] = cert
            if backend in ("presented", "both"):
                entry["presented_high"] = _presented_annotation(
                    pk_high, s_high, discard)
                if backend == "presented":
                    entry["ok"] = True
            checks.append(entry)
    return checks


def _operator_kill_checks(M, ell, eisenstein, backend, cache_dir):
    pres = get_presentation(M)
    assert is_prime(ell)
    if eisenstein:
        assert M % ell != 0
        allowed = sorted(pres.cusps.infinity_orbit)
        discard = (2,)
        opname = "hecke%d-%d<%d>-1" % (ell, ell, ell)
    else:
        assert M % ell == 0
        allowed = ()
        discard = (2, 3)
        opname = "atkin%d-1" % ell
    pk = None
    if backend in ("presented", "both"):
        pk = presented_model(M, cache_dir)
    checks = []
    for bi, (free_vec, red) in enumerate(pres.homology_basis(allowed)):
        entry = {"name": "basis%d" % bi, "operator": opname}
        try:
            if eisenstein:
                t_img = pres.apply_t(ell, red)
                d_img = pres.apply_diamond(ell % M, red)
                img = [a - ell * b - c for a, b, c in zip(t_img, d_img, red)]
            else:
                img = [a - b for a, b in zip(pres.apply_u(ell, red), red)]
            sym = k2_image(pres, img)
        except PreimageError as err:
            entry["ok"] = False
            entry["error"] = "preimage: %s" % (err,)
            checks.append(entry)
            continue
        if backend in ("tame", "both"):
            ok, cert = km_trivial(sym, discard)
            entry["ok"] = ok
            entry["tame"] = cert
        if backend in ("presented", "both"):
            entry["presented"] = _presented_annotation(pk, sym, discard)
            if backend == "presented":
                entry["ok"] = True
        checks.append(entry)
    return checks


def _module_presentation_checks(M):
    mod = CocycleModule(M)
    pres = get_presentation(M)
    tor, free = mod.quotient.invariants()
    checks = [
        {"name": "module-rank", "ok": mod.rank_matches(),
         "torsion": list(tor), "free": free,
         "expected_free": mod.expected_rank()},
        {"name": "relations-die-in-homology",
         "ok": mod.map_kills_relations(pres)},
        {"name": "hits-interior-homology",
         "ok": mod.surjects_onto_interior_homology(pres)},
    ]
    return checks


def _transfer_cocycle_checks(M, p, trials, seed):
    assert is_prime(p)
    rng = random.Random(seed)
    base = bracket_symbol(0, 1)
    checks = [{"name": "base-vector-fixed",
               "ok": pushforward_vertical(p, base) == base}]
    passed = 0
    for _ in range(trials):
        mat = _random_lower_divisible(rng, M * p)
        if pushforward_cocycle_compat(p, mat):
            passed += 1
    checks.append({"name": "pushforward-compat", "ok": passed == trials,
                   "trials": trials, "passed": passed})
    pairs = trials // 2
    passed = 0
    for _ in range(pairs):
        g1 = _random_sl2(rng)
        g2 = _random_sl2(rng)
        lhs = cocycle_value(mat22_mul(g1, g2))
        rhs = cocycle_value(g1) + pullback(g1, cocycle_value(g2))
        if lhs == rhs:
            passed += 1
    checks.append({"name": "cocycle-identity", "ok": passed == pairs,
                   "trials": pairs, "passed": passed})
    return checks


def _first_primes_away_from(M, count):
    out = []
    n = 2
    while len(out) < count:
        if is_prime(n) and M % n != 0:
            out.append(n)
        n += 1
    return out


def _sanity_checks(M, p, cache_dir):
    pres = get_presentation(M)
    rank = pres.absolute_rank()
    checks = [
        {"name": "absolute-rank", "ok": rank == 2 * genus(M),
         "rank": rank, "genus": genus(M)},
        {"name": "cusp-count", "ok": pres.cusps.n == cusp_number(M),
         "count": pres.cusps.n, "expected": cusp_number(M)},
    ]
    basis = pres.homology_basis(pres.cusps.interior)
    for ell in _first_primes_away_from(M, 3):
        ok = True
        tested = 0
        for free_vec, red in basis:
            sym = k2_image(pres, red)
            tv = tame_eval(sym, (ell,))
            ok = ok and tv.is_one()
            tested += 1
        checks.append({"name": "integral-at-%d" % ell, "ok": ok,
                       "vectors": tested})
    if p is not None:
        assert is_prime(p) and M % p != 0
        pres_high = get_presentation(M * p)
        ok = degeneracy_surjective_mod_p(pres_high, pres, p)
        checks.append({"name": "degeneracy-surjective-mod-%d" % p, "ok": ok})
    return checks


# ----- entry points -----


def _cache_presentations(cache_dir, levels):
    for M in levels:
        path = _cache_path(cache_dir, "presentation-M%d.txt" % M)
        if not os.path.exists(path):
            with open(path, "w") as fh:
                fh.write(presentation_text(M, "all") + "\n")


def run_check(kind, M, p=None, ell=None, cusps="orbit", trials=200, seed=0,
              backend="tame", cache_dir=None):
    assert kind in KINDS, kind
    assert backend in BACKENDS, backend
    t0 = time.time()
    params = {"M": M, "p": p, "ell": ell, "cusps": cusps,
              "trials": trials, "seed": seed, "backend": backend}
    if kind == "welldefined":
        checks = _welldefined_checks(M, backend, cache_dir)
    elif kind == "theorem1-divides":
        assert p is not None
        checks = _norm_relation_checks(M, p, True, cusps, backend, cache_dir)
    elif kind == "theorem1-coprime":
        assert p is not None
        checks = _norm_relation_checks(M, p, False, cusps, backend, cache_dir)
    elif kind == "atkin":
        assert ell is not None
        checks = _operator_kill_checks(M, ell, False, backend, cache_dir)
    elif kind == "eisenstein":
        assert ell is not None
        checks = _operator_kill_checks(M, ell, True, backend, cache_dir)
    elif kind == "prop31":
        checks = _module_presentation_checks(M)
    elif kind == "lemma41":
        assert p is not None
        checks = _transfer_cocycle_checks(M, p, trials, seed)
    else:
        checks = _sanity_checks(M, p, cache_dir)
    if cache_dir:
        levels = {M}
        if kind.startswith("theorem1") or (
                kind == "sanity-integrality" and p is not None):
            levels.add(M * p)
        _cache_presentations(cache_dir, sorted(levels))
    failed = sum(1 for c in checks if not c["ok"])
    return {
        "kind": kind,
        "level": M,
        "params": params,
        "checks": checks,
        "counts": {"total": len(checks), "failed": failed},
        "ok": failed == 0,
        "elapsed_ms": int((time.time() - t0) * 1000),
        "generated": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
    }


def render_json(report):
    return json.dumps(report, sort_keys=True, indent=2)


def render_text(report):
    head = "%s %s level=%d" % ("PASS" if report["ok"] else "FAIL",
                               report["kind"], report["level"])
    extras = []
    for key in ("p", "ell", "cusps", "backend"):
        val = report["params"].get(key)
        if val is not None and key != "cusps" or (
                key == "cusps" and report["kind"].startswith("theorem1")):
            extras.append("%s=%s" % (key, val))
    if extras:
        head += " (" + ", ".join(extras) + ")"
    lines = [head]
    for c in report["checks"]:
        mark = "PASS" if c["ok"] else "FAIL"
        detail = ""
        if "operator" in c:
            detail += " op=%s" % c["operator"]
        if "trials" in c:
            detail += " %d/%d" % (c["passed"], c["trials"])
        if "error" in c:
            detail += " " + c["error"]
        lines.append("  [%s] %s%s" % (mark, c["name"], detail))
    lines.append("checks: %d, failed: %d, elapsed: %dms" % (
        report["counts"]["total"], report["counts"]["failed"],
        report["elapsed_ms"]))
    return "\n".join(lines)


# ----- presentation printer -----

CUSP_MODES = ("all", "C0", "Cinf", "none")


def presentation_text(M, cusp_mode="all"):
    pres = get_presentation(M)
    if cusp_mode == "all":
        allowed = list(range(pres.cusps.n))
    elif cusp_mode == "C0":
        allowed = list(pres.cusps.interior)
    elif cusp_mode == "Cinf":
        allowed = sorted(pres.cusps.infinity_orbit)
    elif cusp_mode == "none":
        allowed = []
    else:
        raise ValueError("unknown cusp mode %r" % (cusp_mode,))
    lines = ["modk2 presentation 1",
             "level %d" % M,
             "cusps %s" % cusp_mode,
             "classes %d" % len(pres.classes)]
    for i, (c, d) in enumerate(pres.classes):
        lines.append("class %d %d %d" % (i, c, d))
    lines.append("generators %d" % pres.nred)
    for r, i in enumerate(pres.reps):
        lines.append("gen %d class %d" % (r, i))
    lines.append("relations %d" % len(pres.relation_rows))
    for row in pres.relation_rows:
        lines.append("row " + " ".join(str(x) for x in row))
    lines.append("cusp-classes %d" % pres.cusps.n)
    for i, (a, b) in enumerate(pres.cusps.reps):
        lines.append("cusp %d %d %d" % (i, a, b))
    lines.append("boundary-set " + " ".join(str(i) for i in allowed))
    basis = pres.homology_basis(allowed)
    lines.append("subgroup-rank %d" % len(basis))
    for free_vec, red in basis:
        lines.append("basis " + " ".join(str(x) for x in red))
    tor, free = pres.quotient.invariants()
    lines.append("invariants torsion=%s free=%d" % (
        ",".join(str(t) for t in tor), free))
    return "\n".join(lines)