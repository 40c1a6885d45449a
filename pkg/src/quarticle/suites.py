"""Randomized theorem suites over exchange eigenstates.

``fr_butterfield_suite`` checks the four pairwise equalities for single and
conditional propositions; ``general_query_suite`` checks the transposition
symmetry of long mixed queries, including non-commuting atoms on one slot and
spectator atoms.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import ConditioningOnNullError
from .observables import OperatorFamily, random_cc_family, random_observable
from .probability import Atom, Query, conditional_value, symmetry_check
from .states import random_exchange_eigenstate
from .tensor import DEFAULT_TOL


def _seed(seed, trial, salt):
    return int(np.random.SeedSequence([seed, trial, salt]).generate_state(1)[0])


def _random_family(n, d, rng, trial):
    # alternate slot-embedded observables and general CC sums
    if trial % 2 == 0:
        return OperatorFamily.slot_embedded(random_observable(d, rng, name="Q"), n)
    return random_cc_family(n, d, rng, terms=1)


def _family_values(f):
    return f.eigenvalues(1)


def fr_butterfield_suite(n, d, trials, seed, tol=DEFAULT_TOL):
    """Tally the four equality forms over every eigenvalue choice.

    Forms, for P_12 psi = +-psi and families Q, Q' (slot 3 as spectator)::

        pr(Q_1=q)          = pr(Q_2=q)
        pr(Q_1=q | Q_2=p)  = pr(Q_2=q | Q_1=p)
        pr(Q_1=q | Q'_2=p) = pr(Q_2=q | Q'_1=p)
        pr(Q'_3=r | Q_1=p) = pr(Q'_3=r | Q_2=p)
    """
    tallies = {f"form{k}_{s}": 0 for k in range(1, 5) for s in ("checked", "failed", "skipped")}
    worst = 0.0
    for t in range(trials):
        sign = 1 if t % 2 == 0 else -1
        psi = random_exchange_eigenstate(n, d, 1, 2, sign, _seed(seed, t, 1))
        rng = np.random.default_rng(_seed(seed, t, 2))
        fq = _random_family(n, d, rng, t)
        fp = _random_family(n, d, rng, t + 1)
        qs, ps = _family_values(fq), _family_values(fp)

        def atom(f, slot, v):
            return Atom(f, slot, v)

        instances = []
        for q in qs:
            instances.append((1, Query((atom(fq, 1, q),)), Query((atom(fq, 2, q),))))
        for q, p in itertools.product(qs, qs):
            instances.append((2, Query((atom(fq, 1, q),), (atom(fq, 2, p),)),
                              Query((atom(fq, 2, q),), (atom(fq, 1, p),))))
        for q, p in itertools.product(qs, ps):
            instances.append((3, Query((atom(fq, 1, q),), (atom(fp, 2, p),)),
                              Query((atom(fq, 2, q),), (atom(fp, 1, p),))))
        if n >= 3:
            for r, p in itertools.product(ps, qs):
                instances.append((4, Query((atom(fp, 3, r),), (atom(fq, 1, p),)),
                                  Query((atom(fp, 3, r),), (atom(fq, 2, p),))))
        for form, left, right in instances:
            try:
                gap = abs(conditional_value(psi, left) - conditional_value(psi, right))
            except ConditioningOnNullError:
                tallies[f"form{form}_skipped"] += 1
                continue
            tallies[f"form{form}_checked"] += 1
            worst = max(worst, gap)
            if not gap <= tol:
                tallies[f"form{form}_failed"] += 1
    failed = sum(v for k, v in tallies.items() if k.endswith("_failed"))
    return {"tallies": tallies, "max_abs_diff": worst, "tolerance": tol, "failed": failed,
            "n": n, "d": d, "trials": trials, "seed": seed}


def random_general_query(n, d, i, j, k, rng, observables, family, max_atoms=5):
    """Query over slots i, j, k with at least two non-commuting atoms on one slot."""
    slots = (i, j, k)
    home = slots[rng.integers(3)]
    a, b = rng.choice(len(observables), size=2, replace=False)
    atoms = [Atom(observables[a], home, rng.choice(observables[a].eigenvalues())),
             Atom(observables[b], home, rng.choice(observables[b].eigenvalues()))]
    while len(atoms) < rng.integers(2, max_atoms + 1):
        slot = int(slots[rng.integers(3)])
        if family is not None and rng.random() < 0.3:
            atoms.append(Atom(family, slot, rng.choice(family.eigenvalues(slot))))
        else:
            obs = observables[rng.integers(len(observables))]
            atoms.append(Atom(obs, slot, rng.choice(obs.eigenvalues())))
    order = rng.permutation(len(atoms))
    atoms = [atoms[x] for x in order]
    cut = int(rng.integers(1, len(atoms) + 1))
    return Query(tuple(atoms[:cut]), tuple(atoms[cut:]))


def general_query_suite(n, d, states, queries_per_state, seed, pair=(1, 2), spectator=3,
                        tol=DEFAULT_TOL):
    i, j = pair
    checked = failed = skipped = 0
    for t in range(states):
        sign = 1 if t % 2 == 0 else -1
        psi = random_exchange_eigenstate(n, d, i, j, sign, _seed(seed, t, 3))
        rng = np.random.default_rng(_seed(seed, t, 4))
        observables = [random_observable(d, rng, name=f"R{x}") for x in range(3)]
        family = random_cc_family(n, d, rng, terms=1) if n <= 4 and d**n <= 81 else None
        for _ in range(queries_per_state):
            q = random_general_query(n, d, i, j, spectator, rng, observables, family)
            try:
                ok = symmetry_check(psi, q, i, j, tol)
            except ConditioningOnNullError:
                skipped += 1
                continue
            checked += 1
            failed += not ok
    return {"checked": checked, "failed": failed, "skipped": skipped, "tolerance": tol,
            "n": n, "d": d, "states": states, "seed": seed}
