"""Acceptance suite: one exact check per criterion, one PASS/FAIL line each.

Run under pytest (lines appear in the terminal summary) or directly with
`python3 tests/test_acceptance.py`.
"""

import time
from math import comb

import pytest

from qgrass import derham as dr
from qgrass import structure as stc
from qgrass.omega import act_monomial, action_matrices, generator_labels, graded_piece, relations_check
from qgrass.scalars import RootSpec, binom_ell_check, digit_factorization_check, pascal_check
from qgrass.superindex import (Shape, e0_e_brute, e0_e_closed, edeg_vector, enumerate_graded,
                               graded_dim_formula, k_count, k_set)

RESULTS = {}

DIM_SHAPES = [Shape(2, 1, 3, 1), Shape(2, 1, 3, 2), Shape(2, 2, 3, 1), Shape(3, 2, 3, 2),
              Shape(2, 2, 5, 1)]
BIG = Shape(3, 2, 3, 2)
SMALL = Shape(2, 1, 3, 2)


def crit_01():
    t0 = time.perf_counter()
    count = 0
    for ell, order in [(3, 3), (3, 6), (5, 5), (5, 10)]:
        spec = RootSpec(ell, order)
        for s in range(31):
            for r in range(s + 1):
                if not (pascal_check(s, r, spec) and digit_factorization_check(s, r, spec)):
                    return False, f"fails at {spec.to_json()} s={s} r={r}"
                count += 1
            if s >= ell and not binom_ell_check(s, spec):
                return False, f"[s choose ell] fails at {spec.to_json()} s={s}"
    dt = time.perf_counter() - t0
    return dt < 10, f"{count} (s, r) pairs over 4 specs in {dt:.1f}s"


def crit_02():
    for sh in DIM_SHAPES:
        total = 0
        for s in range(sh.top + 1):
            n = len(enumerate_graded(sh, s))
            if n != graded_dim_formula(sh, s):
                return False, f"{sh} s={s}: {n} vs {graded_dim_formula(sh, s)}"
            total += n
        if total != (sh.r * sh.ell) ** sh.m * 2 ** sh.n:
            return False, f"{sh} total {total}"
    return True, f"{len(DIM_SHAPES)} shapes, every degree and total"


def crit_03():
    pieces = 0
    for sh in DIM_SHAPES:
        for s in range(sh.top + 1):
            rep = relations_check(action_matrices(graded_piece(sh, s)))
            if not rep.ok:
                return False, f"{sh} s={s}: {rep.failures[0]}"
            pieces += 1
    return True, f"{pieces} graded pieces, all relation families"


def crit_04():
    pairs = 0
    for sh in DIM_SHAPES:
        labels = generator_labels(sh)
        for s in range(sh.top + 1):
            for t in enumerate_graded(sh, s):
                k = edeg_vector(t, sh.ell)
                for label in labels:
                    pairs += 1
                    hit = act_monomial(sh, label, t)
                    if hit and any(a > b for a, b in zip(edeg_vector(hit[1], sh.ell), k)):
                        return False, f"{label} raises energy of {t} in {sh}"
    return True, f"{pairs} (generator, monomial) pairs"


def crit_05():
    for s in range(1, BIG.top + 1):
        E0, E = e0_e_brute(BIG, s)
        if e0_e_closed(BIG, s) != (E0, E):
            return False, f"closed-form energy range differs at s={s}"
        filt = stc.edeg_filtration(BIG, s)
        if not filt.ok or filt.loewy_length != E - E0 + 1:
            return False, f"filtration at s={s}"
        cert = stc.socle_certify(BIG, s, schur=False)
        if not (cert.certified and cert.exact):
            return False, f"socle certificate at s={s}"
        n_sum = len(cert.summands)
        piece = graded_dim_formula(BIG, s)
        if s in (1, 2, 15, 16, 17):
            ok = cert.dim == piece and n_sum == 1
        elif 3 <= s <= 8:
            ok = n_sum == 1 and cert.dim < piece
        else:
            ok = n_sum == k_count(BIG, E0) and (n_sum == 3 if s >= 12 else True)
        if not ok:
            return False, f"six-case structure at s={s}"
    for s in range(9, 15):
        edges = {tuple(map(tuple, e)) for e in stc.inclusion_net(BIG, s).edges}
        need = {(k, (1, 1, 1)) for k in k_set(BIG, 2)}
        if not need <= edges:
            return False, f"net at s={s} misses {need - edges}"
    return True, "17 degrees certified, nets at s=9..14"


def crit_06():
    checked = 0
    for sh in (SMALL, BIG):
        for s in range(sh.top + 1):
            filt = stc.edeg_filtration(sh, s)
            want = [k_count(sh, filt.E0 + i) * graded_dim_formula(sh.restricted(), s - (filt.E0 + i) * sh.ell)
                    for i in range(filt.loewy_length)]
            if filt.layer_dims != want:
                return False, f"{sh} s={s}: {filt.layer_dims} vs {want}"
            checked += 1
    return True, f"{checked} degrees"


def crit_07():
    for s in range(SMALL.top + 1):
        if not stc.indecomposability_certify(SMALL, s):
            return False, f"{SMALL} s={s} not local"
    for s in (5, 10, 12):
        if not stc.indecomposability_certify(BIG, s):
            return False, f"{BIG} s={s} not local"
    piece = stc.piece_module(SMALL, 4)
    if stc.indecomposability_certify(SMALL, mod=stc.direct_sum(piece, piece)):
        return False, "decomposable control reported local"
    return True, "local endomorphism algebras; control rejected"


def crit_08():
    for s in range(SMALL.top + 1):
        passed, _ = stc.socle_filtration_check(SMALL, s)
        if not passed:
            return False, f"s={s}"
    return True, f"{SMALL.top + 1} degrees, every level"


def crit_09():
    for sh in (Shape(2, 1, 3, 1), Shape(2, 1, 3, 2), Shape(2, 2, 3, 1), BIG):
        passed, wit = dr.complex_check(sh)
        if not passed:
            return False, f"{sh}: {wit[0]}"
    sh = Shape(2, 1, 3, 1)
    if not all(dr.partial_ops_check(sh, s) for s in range(sh.top + 1)):
        return False, "q-commutation of partials"
    return True, "4 shapes truncated and enlarged; partials commute"


def crit_10():
    t0 = time.perf_counter()
    for sh, want in [(Shape(2, 1, 3, 1), [1, 3, 3, 1]), (Shape(2, 2, 3, 1), [1, 4, 6, 4, 1]),
                     (Shape(2, 1, 3, 2), [1, 3, 3, 1])]:
        table = dr.cohomology(sh)
        if table.betti != want or not table.ok:
            return False, f"{sh}: {table.betti} {table.diagnostics[:2]}"
    dt = time.perf_counter() - t0
    return dt < 180, f"Betti numbers match binomials in {dt:.1f}s"


def crit_11():
    for sh in (Shape(2, 1, 3, 1), Shape(2, 2, 3, 1)):
        passed, fails = dr.block_dims_check(sh)
        if not passed:
            return False, f"{sh}: {fails[0]}"
    return True, "every occurring (weight, degree)"


def crit_12():
    n = 0
    for m, k in ((2, 1), (2, 2)):
        for lam in dr.random_weights(m, k, 25, seed=12):
            rep = dr.poincare_check(m, k, 3, lam)
            if not (rep.exact and rep.same_as_untruncated):
                return False, f"weight {lam} at ({m},{k},3)"
            n += 1
    return True, f"{n} nonzero weights exact"


CRITERIA = [crit_01, crit_02, crit_03, crit_04, crit_05, crit_06, crit_07, crit_08, crit_09,
            crit_10, crit_11, crit_12]


def line(i):
    ok, detail = RESULTS[i]
    return f"criterion {i:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.parametrize("i", range(1, 13))
def test_criterion(i):
    try:
        RESULTS[i] = CRITERIA[i - 1]()
    except Exception as exc:  # a crash is a failed criterion, reported as such
        RESULTS[i] = (False, f"error: {exc!r}")
    print(line(i))
    assert RESULTS[i][0], RESULTS[i][1]


if __name__ == "__main__":
    import sys

    bad = 0
    for i in range(1, 13):
        try:
            RESULTS[i] = CRITERIA[i - 1]()
        except Exception as exc:
            RESULTS[i] = (False, f"error: {exc!r}")
        print(line(i), flush=True)
        bad += not RESULTS[i][0]
    sys.exit(1 if bad else 0)
