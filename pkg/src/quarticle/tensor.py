"""Sparse n-particle kets over a d-dimensional single-particle space.

A :class:`MultiKet` maps basis tuples ``(l_1, ..., l_n)`` (0-based labels) to
complex amplitudes; absent tuples have amplitude zero. Kets are immutable and
every operation returns a new one. Slot indices in the public API are 1-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .errors import DegenerateStateError, DomainError, ShapeError

PRUNE_THRESHOLD = 1e-14
DEFAULT_TOL = 1e-10
# norms below this are treated as the zero ket
ZERO_NORM = 1e-12


class MultiKet:
    """Immutable ket in the n-fold tensor power of C^d."""

    def __init__(self, dim: int, slots: int, amplitudes: Mapping[tuple, complex] | None = None,
                 prune: float = PRUNE_THRESHOLD):
        if dim < 2:
            raise DomainError(f"single-particle dimension must be >= 2, got {dim}")
        if slots < 1:
            raise DomainError(f"particle count must be >= 1, got {slots}")
        amps = {}
        for labels, amp in (amplitudes or {}).items():
            labels = tuple(int(x) for x in labels)
            if len(labels) != slots:
                raise ShapeError(f"basis tuple {labels} does not have {slots} entries")
            if any(not 0 <= x < dim for x in labels):
                raise DomainError(f"basis tuple {labels} has a label outside [0, {dim})")
            amp = complex(amp)
            if abs(amp) >= prune:
                amps[labels] = amp
        self.dim = dim
        self.slots = slots
        self._amps = amps

    @property
    def amplitudes(self) -> Mapping[tuple, complex]:
        return MappingProxyType(self._amps)

    def __getitem__(self, labels) -> complex:
        return self._amps.get(tuple(labels), 0j)

    def __len__(self) -> int:
        return len(self._amps)

    def __repr__(self):
        terms = " + ".join(f"({a:.6g})|{','.join(map(str, t))}>" for t, a in sorted(self._amps.items()))
        return f"MultiKet(d={self.dim}, n={self.slots}: {terms or '0'})"

    @property
    def shape(self) -> tuple[int, int]:
        return (self.dim, self.slots)

    @cached_property
    def dense(self) -> np.ndarray:
        """Flat read-only amplitude vector, slot 1 most significant."""
        arr = np.zeros(self.dim**self.slots, dtype=np.complex128)
        weights = [self.dim ** (self.slots - 1 - s) for s in range(self.slots)]
        for labels, amp in self._amps.items():
            arr[sum(w * x for w, x in zip(weights, labels))] = amp
        arr.flags.writeable = False
        return arr

    @classmethod
    def from_array(cls, arr, dim: int, slots: int, prune: float = PRUNE_THRESHOLD) -> "MultiKet":
        arr = np.asarray(arr, dtype=np.complex128).reshape(-1)
        if arr.shape[0] != dim**slots:
            raise ShapeError(f"array of length {arr.shape[0]} is not a {slots}-slot state over C^{dim}")
        nz = np.flatnonzero(np.abs(arr) >= prune)
        amps = {}
        for flat in nz:
            labels = np.unravel_index(int(flat), (dim,) * slots)
            amps[tuple(int(x) for x in labels)] = arr[flat]
        return cls(dim, slots, amps, prune=prune)

    @cached_property
    def _norm(self) -> float:
        return math.sqrt(sum(abs(a) ** 2 for a in self._amps.values()))

    def norm(self) -> float:
        return self._norm

    def scaled(self, c: complex) -> "MultiKet":
        return MultiKet(self.dim, self.slots, {t: c * a for t, a in self._amps.items()})

    def __add__(self, other):
        return add_scaled(self, 1.0, other)

    def __sub__(self, other):
        return add_scaled(self, -1.0, other)

    def __neg__(self):
        return self.scaled(-1.0)

    def __mul__(self, c):
        return self.scaled(c)

    __rmul__ = __mul__


def check_same_shape(a: MultiKet, b: MultiKet) -> None:
    if a.shape != b.shape:
        raise ShapeError(f"kets differ in (d, n): {a.shape} vs {b.shape}")


def check_slot(slot: int, n: int) -> None:
    if not isinstance(slot, (int, np.integer)) or not 1 <= slot <= n:
        raise DomainError(f"slot {slot} outside 1..{n}")


def product_ket(labels, d: int) -> MultiKet:
    """Return the product ket phi_{l1} x ... x phi_{ln} with unit amplitude."""
    labels = tuple(labels)
    if not labels:
        raise DomainError("a product ket needs at least one label")
    for x in labels:
        if not 0 <= x < d:
            raise DomainError(f"label {x} outside [0, {d})")
    return MultiKet(d, len(labels), {labels: 1.0})


def add_scaled(a: MultiKet, c: complex, b: MultiKet) -> MultiKet:
    """Return ``a + c*b``; entries below the prune threshold are dropped."""
    check_same_shape(a, b)
    out = dict(a._amps)
    for t, amp in b._amps.items():
        out[t] = out.get(t, 0j) + c * amp
    return MultiKet(a.dim, a.slots, out)


def inner(a: MultiKet, b: MultiKet) -> complex:
    """<a|b>, conjugate-linear in the first argument."""
    check_same_shape(a, b)
    small, large = (a._amps, b._amps) if len(a._amps) <= len(b._amps) else (b._amps, a._amps)
    total = 0j
    for t in small:
        if t in large:
            total += a._amps[t].conjugate() * b._amps[t]
    return total


def normalize(a: MultiKet) -> MultiKet:
    nrm = a.norm()
    if nrm <= ZERO_NORM:
        raise DegenerateStateError(f"cannot normalize a ket of norm {nrm:.3g}")
    return a.scaled(1.0 / nrm)


@dataclass(frozen=True)
class RayComparison:
    proportional: bool
    phase: complex | None = None

    def __bool__(self):
        return self.proportional


def ray_compare(a: MultiKet, b: MultiKet, tol: float = DEFAULT_TOL) -> RayComparison:
    """Decide whether ``b = lambda * a`` amplitudewise within ``tol``.

    ``phase`` carries lambda when the rays coincide. lambda is not restricted
    to unit modulus.
    """
    check_same_shape(a, b)
    na2 = inner(a, a).real
    if na2 <= ZERO_NORM**2 or b.norm() <= ZERO_NORM:
        raise DegenerateStateError("ray comparison needs nonzero kets")
    lam = inner(a, b) / na2
    keys = set(a._amps) | set(b._amps)
    for t in keys:
        if abs(b[t] - lam * a[t]) > tol:
            return RayComparison(False)
    return RayComparison(True, lam)

