"""Acceptance criteria, one test per criterion.

Each test prints a single ``[criterion N] PASS|FAIL`` line. Run directly with
``python tests/test_acceptance.py`` for just the summary lines.
"""

from __future__ import annotations

import io
import itertools
import json
import math
import sys
from fractions import Fraction

import numpy as np
import pytest

from quarticle import exact
from quarticle.cli import run_command
from quarticle.discern import (
    ANTISYMMETRIC,
    NEITHER,
    SYMMETRIC,
    WITNESS_THRESHOLD,
    default_pool,
    discern_pair,
    exchange_character,
    exhaustive_witness_scan,
    find_witness,
    ip_family_collapse,
    trial_state,
    verify_iff,
)
from quarticle.errors import ConditioningOnNullError
from quarticle.observables import (
    diagonal_observable,
    random_cc_family,
    random_ip_family,
    verify_ic,
)
from quarticle.permutations import transpose_slots
from quarticle.probability import Atom, Query, joint_value, symmetry_check
from quarticle.states import phase_state, psi_a, psi_d, psi_s, random_state
from quarticle.suites import fr_butterfield_suite, general_query_suite
from quarticle.tensor import product_ket


def criterion_1():
    r = fr_butterfield_suite(n=3, d=3, trials=200, seed=2024, tol=1e-10)
    checked = sum(v for k, v in r["tallies"].items() if k.endswith("_checked"))
    forms = all(r["tallies"][f"form{f}_checked"] > 0 for f in range(1, 5))
    ok = r["failed"] == 0 and forms
    return ok, f"{checked} instances, {r['failed']} failed, max diff {r['max_abs_diff']:.2e}"


def criterion_2():
    r = general_query_suite(n=4, d=2, states=100, queries_per_state=20, seed=2024, pair=(1, 2),
                            spectator=3, tol=1e-10)
    return r["failed"] == 0 and r["checked"] > 0, \
        f"{r['checked']} queries, {r['failed']} failed, {r['skipped']} null conditions"


def criterion_3():
    rng = np.random.default_rng(3)
    checks = bad = 0
    for _ in range(50):
        f = random_cc_family(4, 3, rng)
        for i, j in itertools.combinations(range(1, 5), 2):
            for k in range(1, 5):
                if k in (i, j):
                    continue
                checks += 1
                bad += not verify_ic(f, i, j, k, tol=1e-12)
    return bad == 0, f"{checks} triples, {bad} failed"


def criterion_4():
    problems = []
    for m in (3, 4, 5, 6):
        ex = exact.expand_psi_s(m)
        k = psi_s(m)
        q = diagonal_observable(m)
        for slot in range(1, m + 1):
            want = Fraction(1, 2) if slot == 1 else Fraction(1, 2 * (m - 1))
            got = ex.probability(slot, 0)
            flt = joint_value(k, [Atom(q, slot, 0.0)])
            if got != want or abs(flt - float(want)) > 1e-12:
                problems.append((m, slot, got, flt))
    return not problems, "m=3..6 exact and float agree" if not problems else f"mismatches {problems}"


def criterion_5():
    problems, statuses = [], []
    for m in (3, 4, 5):
        k = psi_d(m)
        pool = default_pool(m, 0)
        for i, j in itertools.combinations(range(1, m + 1), 2):
            v = discern_pair(k, i, j, pool=pool, budget=500, seed=0)
            if v.indiscernible or v.witness is None or v.witness.gap < 1e-3:
                problems.append((m, i, j))
        ex = exact.expand_psi_d(m)
        same, other = exact.psi_d_closed_forms(m)
        rows = [(ex.probability(s, i - 1), same if s == i else other)
                for i in range(1, m + 1) for s in range(1, m + 1)]
        statuses.append(f"m={m}:" + ("MATCH" if all(a == b for a, b in rows) else "DIFFER"))
        if len(rows) != m * m:
            problems.append((m, "comparison incomplete"))
    return not problems, f"all pairs witnessed; closed forms {' '.join(statuses)}"


def criterion_6():
    problems = []
    for name, build, expected in (("psi_s", psi_s, SYMMETRIC), ("psi_a", psi_a, ANTISYMMETRIC)):
        k = build(4)
        pool = default_pool(4, 0)
        for i, j in itertools.combinations(range(1, 5), 2):
            v = discern_pair(k, i, j, pool=pool, budget=500, seed=0)
            if i == 1:
                good = not v.indiscernible and v.witness is not None
            else:
                good = v.indiscernible and v.character == expected and v.witness is None
            if not good:
                problems.append((name, i, j, v.character))
    return not problems, "mixed verdicts as expected" if not problems else f"{problems}"


def criterion_7():
    a = verify_iff(d=2, n=2, trials=200, seed=7, budget=500)
    b = verify_iff(d=2, n=3, trials=100, seed=7, budget=500)
    disagreements = 0
    for t in range(20):
        _, sub, k = trial_state(2, 2, 7, t)
        v = discern_pair(k, 1, 2, pool=default_pool(2, sub), budget=500, seed=sub)
        gap, _ = exhaustive_witness_scan(k, 1, 2)
        disagreements += (v.witness is not None) != (gap > WITNESS_THRESHOLD)
    ok = a.ok and b.ok and disagreements == 0
    return ok, (f"violations n=2: {len(a.violations)}, n=3: {len(b.violations)}; "
                f"exhaustive disagreements {disagreements}/20")


def criterion_8():
    problems = []
    q = diagonal_observable(2)
    for step in range(13):
        theta = step * math.pi / 6
        k = phase_state(theta)
        for value in (0.0, 1.0):
            v1 = joint_value(k, [Atom(q, 1, value)])
            v2 = joint_value(k, [Atom(q, 2, value)])
            if abs(v1 - 0.5) > 1e-12 or abs(v2 - 0.5) > 1e-12:
                problems.append((step, "Q values"))
        expected = SYMMETRIC if step % 12 == 0 else ANTISYMMETRIC if step == 6 else NEITHER
        if exchange_character(k, 1, 2) != expected:
            problems.append((step, "character"))
        w = find_witness(k, 1, 2, budget=500)
        if (w is None) != (expected != NEITHER):
            problems.append((step, "witness"))
    return not problems, "13 angles" if not problems else f"{problems}"


def _ip_queries(f):
    atoms = [Atom(f, s, v) for s in (1, 2, 3) for v in f.eigenvalues(s)]
    yield from (Query((a,)) for a in atoms)
    for a, b in itertools.permutations(atoms, 2):
        yield Query((a,), (b,))


def criterion_9():
    rng = np.random.default_rng(9)
    families = [random_ip_family(3, 2, rng) for _ in range(20)]
    bad_members = sum(not ip_family_collapse(f, tol=1e-12) for f in families)
    checked = failed = 0
    for s in range(50):
        k = random_state(3, 2, seed=900 + s)
        f = families[s % len(families)]
        for query in _ip_queries(f):
            for i, j in itertools.combinations(range(1, 4), 2):
                try:
                    ok = symmetry_check(k, query, i, j, tol=1e-10)
                except ConditioningOnNullError:
                    continue
                checked += 1
                failed += not ok
    return bad_members == 0 and failed == 0, \
        f"{bad_members} families not collapsed; {checked} query checks, {failed} failed"


def criterion_10():
    n, d = 4, 3
    bad = 0
    for labels in itertools.product(range(d), repeat=n):
        k = product_ket(labels, d)
        for i, j in itertools.permutations(range(1, n + 1), 2):
            if dict(transpose_slots(transpose_slots(k, i, j), i, j).amplitudes) != dict(k.amplitudes):
                bad += 1
            for kk in range(1, n + 1):
                if kk in (i, j):
                    continue
                lhs = transpose_slots(k, j, kk)
                rhs = transpose_slots(transpose_slots(transpose_slots(k, i, j), i, kk), i, j)
                bad += dict(lhs.amplitudes) != dict(rhs.amplitudes)
    return bad == 0, f"{d**n} basis tuples, {bad} failures"


def _cli(argv):
    out, err = io.StringIO(), io.StringIO()
    status, _ = run_command(argv, stdout=out, stderr=err)
    return status, out.getvalue()


def criterion_11():
    argv = ["verify", "iff", "--n", "2", "--d", "2", "--trials", "50", "--seed", "7", "--budget", "500",
            "--format", "json"]
    s1, a = _cli(argv)
    s2, b = _cli(argv)
    status, text = _cli(["reproduce", "claims", "--m", "3", "--format", "json"])
    doc = json.loads(text)
    probs = {r["slot"]: r["float"] for r in doc["details"]["claim_ii_psi_s"]["probabilities"]}
    values_ok = abs(probs[1] - 0.5) <= 1e-12 and all(abs(probs[s] - 0.25) <= 1e-12 for s in (2, 3))
    ok = s1 == s2 == 0 and a == b and status == 0 and values_ok
    return ok, f"identical json: {a == b}; claims exit {status}; psi_s slot values {probs}"


CRITERIA = [(n, globals()[f"criterion_{n}"]) for n in range(1, 12)]


@pytest.mark.parametrize("number, check", CRITERIA, ids=[f"criterion_{n}" for n, _ in CRITERIA])
def test_criterion(number, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, detail


if __name__ == "__main__":
    failures = 0
    for number, check in CRITERIA:
        ok, detail = check()
        failures += not ok
        print(f"[criterion {number}] {'PASS' if ok else 'FAIL'}: {detail}")
    sys.exit(1 if failures else 0)
