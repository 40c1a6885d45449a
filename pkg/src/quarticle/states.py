"""Catalog of the states used in the discernibility analysis.

``psi_s``, ``psi_a`` and ``psi_d`` are built from the product ket
phi_0 phi_1 ... phi_{m-1} (0-based labels) with the permutation algebra;
slots beyond ``m`` hold the spectator label ``m``. :mod:`quarticle.exact`
provides the integer-coefficient expansion of the same recipes.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from . import exact
from .errors import DegenerateStateError, DomainError
from .permutations import antisymmetrize, symmetrize, transpose_slots
from .tensor import MultiKet, add_scaled, check_slot, normalize, product_ket

MAX_RESAMPLES = 100


def _defaults(m, n, d):
    n = m if n is None else n
    d = (m if n == m else m + 1) if d is None else d
    return n, d


def _base(m, n, d):
    # shares the argument validation with the exact expansion
    labels = exact._base_labels(m, n, d)
    return product_ket(labels, d)


def psi_s(m, n=None, d=None) -> MultiKet:
    """S_{2..m} A_{12} phi_0 phi_1 ... phi_{m-1}."""
    n, d = _defaults(m, n, d)
    return symmetrize(antisymmetrize(_base(m, n, d), [1, 2]), range(2, m + 1))


def psi_a(m, n=None, d=None) -> MultiKet:
    """A_{2..m} S_{12} phi_0 phi_1 ... phi_{m-1}."""
    n, d = _defaults(m, n, d)
    return antisymmetrize(symmetrize(_base(m, n, d), [1, 2]), range(2, m + 1))


def psi_d(m, n=None, d=None) -> MultiKet:
    """Equal-weight sum over i of S_{all but i} A_{i, i+1} phi_0 ... phi_{m-1}, with m+1 -> 1."""
    n, d = _defaults(m, n, d)
    base = _base(m, n, d)
    total = MultiKet(d, n)
    for i in range(1, m + 1):
        part = antisymmetrize(base, [i, i % m + 1])
        total = add_scaled(total, 1.0, symmetrize(part, [s for s in range(1, m + 1) if s != i]))
    if total.norm() <= 1e-12:
        raise DegenerateStateError(f"psi_d(m={m}) cancels to zero")
    return normalize(total)


def totally_symmetric(m, n=None, d=None) -> MultiKet:
    n, d = _defaults(m, n, d)
    return symmetrize(_base(m, n, d), range(1, m + 1))


def totally_antisymmetric(m, n=None, d=None) -> MultiKet:
    n, d = _defaults(m, n, d)
    return antisymmetrize(_base(m, n, d), range(1, m + 1))


def phase_state(theta, d=2) -> MultiKet:
    """Normalized phi_0 phi_1 + e^{i theta} phi_1 phi_0."""
    if d < 2:
        raise DomainError("the phase state needs d >= 2")
    k = add_scaled(product_ket([0, 1], d), cmath.exp(1j * theta), product_ket([1, 0], d))
    return normalize(k)


def random_state(n, d, seed) -> MultiKet:
    """Normalized complex Gaussian ket; deterministic per seed."""
    rng = np.random.default_rng(seed)
    v = rng.normal(size=d**n) + 1j * rng.normal(size=d**n)
    return normalize(MultiKet.from_array(v, d, n))


def random_exchange_eigenstate(n, d, i, j, sign, seed) -> MultiKet:
    """Seeded random ket projected with (I + sign*P_ij)/2 and normalized."""
    check_slot(i, n)
    check_slot(j, n)
    if i == j:
        raise DomainError("the exchange pair needs two distinct slots")
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    rng = np.random.default_rng(seed)
    for _ in range(MAX_RESAMPLES):
        v = rng.normal(size=d**n) + 1j * rng.normal(size=d**n)
        k = MultiKet.from_array(v, d, n)
        projected = add_scaled(k, sign, transpose_slots(k, i, j)).scaled(0.5)
        if projected.norm() > 1e-8:
            return normalize(projected)
    raise DegenerateStateError(f"projection annihilated {MAX_RESAMPLES} samples")


def _slot_list(slots):
    slots = list(slots)
    if len(slots) > 2 and slots == list(range(slots[0], slots[-1] + 1)):
        return f"{slots[0]}..{slots[-1]}"
    return ",".join(map(str, slots))


def _ket_text(labels):
    return "|" + ",".join(map(str, labels)) + ">"


@dataclass(frozen=True)
class StateRecipe:
    """Declarative description of a catalog state; serializes to the expression language."""

    kind: str
    m: int = 2
    n: int | None = None
    d: int | None = None
    theta: float = 0.0
    seed: int = 0
    pair: tuple = (1, 2)
    source: str | None = None

    KINDS = ("psi_s", "psi_a", "psi_d", "phase", "symmetric", "random_sym", "random_antisym", "explicit")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise DomainError(f"unknown recipe kind {self.kind!r}")
        if self.kind in ("psi_s", "psi_a", "psi_d", "symmetric") and self.m < 3:
            raise DomainError(f"{self.kind} needs m >= 3")

    def dims(self):
        if self.kind == "phase":
            return 2, self.d or 2
        if self.kind in ("random_sym", "random_antisym"):
            return self.n or self.m, self.d or 2
        return _defaults(self.m, self.n, self.d)

    def build(self) -> MultiKet:
        n, d = self.dims()
        if self.kind == "psi_s":
            return psi_s(self.m, n, d)
        if self.kind == "psi_a":
            return psi_a(self.m, n, d)
        if self.kind == "psi_d":
            return psi_d(self.m, n, d)
        if self.kind == "symmetric":
            return totally_symmetric(self.m, n, d)
        if self.kind == "phase":
            return phase_state(self.theta, d)
        if self.kind in ("random_sym", "random_antisym"):
            sign = 1 if self.kind == "random_sym" else -1
            return random_exchange_eigenstate(n, d, *self.pair, sign, self.seed)
        from .parser import evaluate_text

        return evaluate_text(self.source, d=self.d)

    def to_expression(self) -> str:
        n, d = self.dims()
        if self.kind == "explicit":
            return self.source
        if self.kind == "phase":
            return f"|0,1> + exp(i {self.theta!r})|1,0>"
        labels = tuple(range(self.m)) + (self.m,) * (n - self.m)
        ket = _ket_text(labels)
        m = self.m
        if self.kind == "psi_s":
            return f"S({_slot_list(range(2, m + 1))})A(1,2){ket}"
        if self.kind == "psi_a":
            return f"A({_slot_list(range(2, m + 1))})S(1,2){ket}"
        if self.kind == "symmetric":
            return f"S({_slot_list(range(1, m + 1))}){ket}"
        if self.kind == "psi_d":
            parts = []
            for i in range(1, m + 1):
                rest = [s for s in range(1, m + 1) if s != i]
                parts.append(f"S({_slot_list(rest)})A({i},{i % m + 1}){ket}")
            return " + ".join(parts)
        return ket_to_expression(self.build())


def ket_to_expression(k: MultiKet, digits=17) -> str:
    """Explicit sum-of-kets text for any ket (polar scalars)."""
    parts = []
    for labels, amp in sorted(k.amplitudes.items()):
        r, phi = abs(amp), cmath.phase(amp)
        scalar = f"{r:.{digits}g}" + (f" exp(i {phi:.{digits}g})" if phi != 0 else "")
        parts.append(f"{scalar}{_ket_text(labels)}")
    return " + ".join(parts) if parts else ""
