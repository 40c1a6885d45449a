"""Indiscernibility decisions, witness search and the biconditional suite.

The ray test (is P_ij psi = +-psi?) is the decision procedure. Witness search
looks for an explicit query whose value changes under i<->j and is used as
corroboration and explanation; a search that runs out of budget never counts
as evidence of indiscernibility.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import ContractError, DomainError, InternalConsistencyError
from .observables import (
    OperatorFamily,
    commutes_with_swap,
    diagonal_observable,
    random_observable,
    verify_cc_family,
)
from .permutations import transpose_slots
from .probability import Atom, Query, joint_value, transpose_query
from .states import random_exchange_eigenstate, random_state
from .tensor import DEFAULT_TOL, MultiKet, check_slot, normalize, ray_compare

WITNESS_THRESHOLD = 1e-6
DEFAULT_POOL_RANDOM = 32
DEFAULT_BUDGET = 500

SYMMETRIC = "symmetric"
ANTISYMMETRIC = "antisymmetric"
NEITHER = "neither"


def _check_pair(k, i, j):
    check_slot(i, k.slots)
    check_slot(j, k.slots)
    if i == j:
        raise DomainError("a pair needs two distinct slots")


def exchange_character(k: MultiKet, i, j, tol=DEFAULT_TOL) -> str:
    _check_pair(k, i, j)
    psi = normalize(k)
    cmp = ray_compare(psi, transpose_slots(psi, i, j), tol)
    if not cmp.proportional:
        return NEITHER
    if abs(cmp.phase - 1) <= tol:
        return SYMMETRIC
    if abs(cmp.phase + 1) <= tol:
        return ANTISYMMETRIC
    raise InternalConsistencyError(f"P_{i}{j} psi = lambda psi with lambda = {cmp.phase}, not +-1")


def indiscernible(k: MultiKet, i, j, tol=DEFAULT_TOL) -> bool:
    return exchange_character(k, i, j, tol) != NEITHER


@dataclass(frozen=True)
class Witness:
    query: Query
    value_ij: complex
    value_ji: complex
    evaluations: int

    @property
    def gap(self) -> float:
        return abs(self.value_ij - self.value_ji)


def default_pool(d, seed=0, extra=DEFAULT_POOL_RANDOM):
    """diag(0..d-1) followed by ``extra`` seeded random Hermitian observables."""
    rng = np.random.default_rng([seed, d, 0x9E37])
    pool = [diagonal_observable(d)]
    pool += [random_observable(d, rng, name=f"R{r}") for r in range(extra)]
    return pool


def _local_entries(observables):
    """Flatten observables into (observable, eigenvalue, projector matrix) triples."""
    return [(obs, q, p) for obs in observables for q, p in obs.spectrum]


class _Search:
    """Budgeted evaluation of candidate queries; each candidate costs one evaluation."""

    def __init__(self, k, i, j, budget, threshold):
        self.psi = np.ascontiguousarray(k.dense)
        self.norm2 = float(np.vdot(self.psi, self.psi).real)
        self.n, self.d = k.slots, k.dim
        self.i, self.j = i - 1, j - 1
        self.budget = budget
        self.used = 0
        self.threshold = threshold

    def _swap(self, s):
        if s == self.i:
            return self.j
        if s == self.j:
            return self.i
        return s

    def try_chain(self, mats, slots):
        """Evaluate one candidate; return True when it discerns. Raises StopIteration at budget."""
        if self.used >= self.budget:
            raise StopIteration
        self.used += 1
        mats = np.asarray(mats)
        a = kernels.expect_chain(self.psi, mats, np.asarray(slots), self.n, self.d)
        b = kernels.expect_chain(self.psi, mats, np.asarray([self._swap(s) for s in slots]), self.n, self.d)
        return abs(a - b) / self.norm2 > self.threshold


def _candidates(n, d, i, j, pool, rng):
    """Yield candidate atom lists [(observable, eigenvalue, projector, slot0), ...] in search order."""
    entries = _local_entries(pool)
    i0, j0 = i - 1, j - 1
    # (a) single atoms; atoms on slots other than i, j cannot discern
    for obs, q, p in entries:
        yield [(obs, q, p, i0)]
    # (b) two-atom conjunctions, first atom on slot i, second on j then spectators
    others = [j0] + [s for s in range(n) if s not in (i0, j0)]
    for b in range(len(pool)):
        for a in range(b + 1):
            pairs = [(pool[a], pool[b])] if a == b else [(pool[a], pool[b]), (pool[b], pool[a])]
            for first, second in pairs:
                for t in others:
                    for q1, p1 in first.spectrum:
                        for q2, p2 in second.spectrum:
                            yield [(first, q1, p1, i0), (second, q2, p2, t)]
    # (c) product projectors over every slot from fresh random observables
    while True:
        draw = [random_observable(d, rng, name=f"X{s + 1}") for s in range(n)]
        for choice in itertools.product(*[obs.spectrum for obs in draw]):
            yield [(obs, q, p, s) for s, (obs, (q, p)) in enumerate(zip(draw, choice))]


def _search(k, i, j, pool, budget, seed, threshold):
    _check_pair(k, i, j)
    if budget < 1:
        raise DomainError("budget must be >= 1")
    if pool is None:
        pool = default_pool(k.dim, seed)
    pool = list(pool)
    for obs in pool:
        if obs.dim != k.dim:
            raise DomainError(f"pool observable on C^{obs.dim} for a C^{k.dim} system")
    rng = np.random.default_rng([seed, 0x5EED])
    search = _Search(k, i, j, budget, threshold)
    try:
        for cand in _candidates(k.slots, k.dim, i, j, pool, rng):
            if search.try_chain([p for _, _, p, _ in cand], [s for *_, s in cand]):
                query = Query(tuple(Atom(obs, s + 1, q) for obs, q, _, s in cand))
                v_ij = joint_value(k, query.conclusion)
                v_ji = joint_value(k, transpose_query(query, i, j).conclusion)
                return Witness(query, v_ij, v_ji, search.used), search.used
    except StopIteration:
        pass
    return None, search.used


def find_witness(k: MultiKet, i, j, pool=None, budget=DEFAULT_BUDGET, seed=0,
                 threshold=WITNESS_THRESHOLD) -> Witness | None:
    """First query discerning slots i and j, or None once ``budget`` evaluations are spent.

    Order: single atoms from ``pool``, two-atom conjunctions from ``pool``,
    then atoms on every slot drawn from seeded random Hermitian observables.
    """
    return _search(k, i, j, pool, budget, seed, threshold)[0]


@dataclass(frozen=True)
class DiscernibilityVerdict:
    pair: tuple
    character: str
    indiscernible: bool
    witness: Witness | None
    search_budget_used: int

    @property
    def inconclusive_search(self) -> bool:
        return self.character == NEITHER and self.witness is None


def discern_pair(k: MultiKet, i, j, pool=None, budget=DEFAULT_BUDGET, seed=0,
                 tol=DEFAULT_TOL, threshold=WITNESS_THRESHOLD) -> DiscernibilityVerdict:
    character = exchange_character(k, i, j, tol)
    witness, used = _search(k, i, j, pool, budget, seed, threshold)
    return DiscernibilityVerdict((i, j), character, character != NEITHER, witness, used)


def spanning_projectors(d):
    """d^2 rank-one projectors whose real span is Herm(C^d)."""
    vecs = [np.eye(d)[a] for a in range(d)]
    for a, b in itertools.combinations(range(d), 2):
        e = np.eye(d)
        vecs.append((e[a] + e[b]) / np.sqrt(2))
        vecs.append((e[a] + 1j * e[b]) / np.sqrt(2))
    return [np.outer(v, v.conj()) for v in vecs]


def exhaustive_witness_scan(k: MultiKet, i, j, threshold=WITNESS_THRESHOLD):
    """Scan every n-fold product of spanning projectors with explicit Kronecker products.

    Returns ``(largest gap, index tuple of the maximizing product)``. Shares no
    code with the query engine or the kernels.
    """
    _check_pair(k, i, j)
    n, d = k.slots, k.dim
    psi = np.array([k[t] for t in itertools.product(range(d), repeat=n)], dtype=complex)
    psi /= np.linalg.norm(psi)
    projs = spanning_projectors(d)
    best, arg = 0.0, None
    for idx in itertools.product(range(len(projs)), repeat=n):
        swapped = list(idx)
        swapped[i - 1], swapped[j - 1] = swapped[j - 1], swapped[i - 1]
        ops = []
        for choice in (idx, swapped):
            op = np.array([[1.0 + 0j]])
            for a in choice:
                op = np.kron(op, projs[a])
            ops.append(op)
        gap = abs(np.vdot(psi, ops[0] @ psi) - np.vdot(psi, ops[1] @ psi))
        if gap > best:
            best, arg = gap, idx
    return best, arg


@dataclass
class IffReport:
    d: int
    n: int
    trials: int
    seed: int
    budget: int
    counts: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    records: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def to_dict(self):
        return {
            "d": self.d, "n": self.n, "trials": self.trials, "seed": self.seed,
            "budget": self.budget, "counts": dict(sorted(self.counts.items())),
            "violations": self.violations, "records": self.records,
        }


TRIAL_KINDS = ("generic", "symmetric", "antisymmetric")


def trial_state(d, n, seed, trial):
    """State of the given trial: generic, then P_12-symmetric, then P_12-antisymmetric, cycling."""
    kind = TRIAL_KINDS[trial % 3]
    sub = int(np.random.SeedSequence([seed, trial]).generate_state(1)[0])
    if kind == "generic":
        return kind, sub, random_state(n, d, sub)
    sign = 1 if kind == "symmetric" else -1
    return kind, sub, random_exchange_eigenstate(n, d, 1, 2, sign, sub)


def verify_iff(d, n, trials, seed, budget=DEFAULT_BUDGET) -> IffReport:
    """Check both directions of the biconditional on random states, every pair."""
    if n < 2:
        raise DomainError("need at least two slots")
    report = IffReport(d, n, trials, seed, budget)
    counts = {f"kind_{k}": 0 for k in TRIAL_KINDS}
    counts.update({f"character_{c}": 0 for c in (SYMMETRIC, ANTISYMMETRIC, NEITHER)})
    counts.update(witnessed=0, unwitnessed=0, pair_checks=0)
    for t in range(trials):
        kind, sub, k = trial_state(d, n, seed, t)
        counts[f"kind_{kind}"] += 1
        pool = default_pool(d, sub)
        for i, j in itertools.combinations(range(1, n + 1), 2):
            v = discern_pair(k, i, j, pool=pool, budget=budget, seed=sub)
            counts["pair_checks"] += 1
            counts[f"character_{v.character}"] += 1
            counts["witnessed" if v.witness else "unwitnessed"] += 1
            record = {"trial": t, "kind": kind, "pair": [i, j], "character": v.character,
                      "witness": v.witness is not None, "evaluations": v.search_budget_used}
            report.records.append(record)
            if v.indiscernible == (v.witness is not None):
                report.violations.append(record)
    report.counts = counts
    return report


def ip_family_collapse(f: OperatorFamily, tol=DEFAULT_TOL) -> bool:
    """For a CC family whose members all commute with every swap, check all members coincide."""
    if not verify_cc_family(f, tol):
        raise ContractError("family does not satisfy CC pairwise")
    for member in f.members:
        for a, b in itertools.combinations(range(1, f.n + 1), 2):
            if not commutes_with_swap(member, a, b, tol):
                raise ContractError("family member violates IP (does not commute with a swap)")
    first = f.members[0]
    return all(first.acts_like(m, tol) for m in f.members[1:])
