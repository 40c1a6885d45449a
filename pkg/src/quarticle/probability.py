"""Unconditional and conditional probabilities from ordered projector products.

A joint value is ``<psi| P_1 P_2 ... P_k |psi> / <psi|psi>`` with the
projectors in the same order as the atoms. Projectors are applied to the ket
rightmost-first. Atoms on one slot need not commute; the value is then complex
in general and is returned as such.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import ConditioningOnNullError, DegenerateStateError, DomainError, ShapeError
from .observables import CLUSTER_TOL, LocalProjector, OperatorFamily, SingleParticleObservable
from .tensor import DEFAULT_TOL, ZERO_NORM, MultiKet, check_slot

NULL_CONDITION = 1e-12
NON_REAL_FLAG = 1e-10


@dataclass(frozen=True)
class Atom:
    """The proposition "observable at ``slot`` has value ``eigenvalue``"."""

    observable: SingleParticleObservable | OperatorFamily
    slot: int
    eigenvalue: float

    def __str__(self):
        name = getattr(self.observable, "name", None) or "O"
        return f"{name}_{self.slot}={self.eigenvalue:g}"

    def projector(self, n, d):
        check_slot(self.slot, n)
        obs = self.observable
        if isinstance(obs, SingleParticleObservable):
            if obs.dim != d:
                raise ShapeError(f"observable on C^{obs.dim} used in a C^{d} system")
            return LocalProjector(self.slot - 1, obs.projector(self.eigenvalue, CLUSTER_TOL))
        if (obs.d, obs.n) != (d, n):
            raise ShapeError(f"family of shape {(obs.d, obs.n)} used in a {(d, n)} system")
        return obs.projector(self.slot, self.eigenvalue)

    def with_slot(self, slot):
        return Atom(self.observable, slot, self.eigenvalue)


@dataclass(frozen=True)
class Query:
    """Ordered proposition ``conclusion | condition``; an empty condition means a joint value."""

    conclusion: tuple
    condition: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "conclusion", tuple(self.conclusion))
        object.__setattr__(self, "condition", tuple(self.condition))
        if not self.conclusion:
            raise DomainError("a query needs at least one conclusion atom")

    def __str__(self):
        text = " & ".join(map(str, self.conclusion))
        if self.condition:
            text += " | " + " & ".join(map(str, self.condition))
        return f"pr({text})"

    @property
    def atoms(self):
        return self.conclusion + self.condition


def _chain_value(k: MultiKet, projectors) -> complex:
    n, d = k.slots, k.dim
    psi = k.dense
    if all(p.local for p in projectors):
        mats = np.array([p.matrix for p in projectors], dtype=np.complex128)
        slots = np.array([p.slot for p in projectors], dtype=np.int_)
        return kernels.expect_chain(psi, mats, slots, n, d)
    # many-slot projectors need not commute and conditional ratios can be
    # large, so this path accumulates in extended precision
    wide = psi.astype(np.clongdouble).reshape(-1, 1)
    v = wide
    for p in reversed(projectors):
        v = p.apply_wide(v, n, d)
    return complex(np.vdot(wide[:, 0], v[:, 0]))


def joint_value(k: MultiKet, atoms) -> complex:
    atoms = tuple(atoms)
    if not atoms:
        raise DomainError("joint value of an empty conjunction")
    norm2 = k.norm() ** 2
    if norm2 <= ZERO_NORM**2:
        raise DegenerateStateError("probabilities of the zero ket are undefined")
    projectors = [a.projector(k.slots, k.dim) for a in atoms]
    return _chain_value(k, projectors) / norm2


def conditional_value(k: MultiKet, q: Query) -> complex:
    if not q.condition:
        return joint_value(k, q.conclusion)
    denom = joint_value(k, q.condition)
    if abs(denom) < NULL_CONDITION:
        raise ConditioningOnNullError(f"condition of {q} has probability {abs(denom):.3g}")
    return joint_value(k, q.conclusion + q.condition) / denom


def transpose_query(q: Query, i, j) -> Query:
    """Exchange the slot labels i and j on every atom, keeping the order."""
    if i == j:
        raise DomainError("transposition needs two distinct slots")

    def swap(a):
        if a.slot == i:
            return a.with_slot(j)
        if a.slot == j:
            return a.with_slot(i)
        return a

    for a in q.atoms:
        n = a.observable.n if isinstance(a.observable, OperatorFamily) else max(i, j, a.slot)
        check_slot(i, n)
        check_slot(j, n)
    return Query(tuple(map(swap, q.conclusion)), tuple(map(swap, q.condition)))


def symmetry_check(k: MultiKet, q: Query, i, j, tol=DEFAULT_TOL) -> bool:
    """True when the query and its i<->j transpose agree within ``tol``."""
    return abs(conditional_value(k, q) - conditional_value(k, transpose_query(q, i, j))) < tol


def is_real(value: complex, tol=NON_REAL_FLAG) -> bool:
    return abs(complex(value).imag) <= tol
