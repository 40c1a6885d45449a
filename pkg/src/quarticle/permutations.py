"""Slot permutations acting on kets, and (anti)symmetrizers over slot subsets.

A :class:`SlotPermutation` sends the factor in slot ``s`` to slot ``sigma(s)``.
With that convention ``permute_slots(permute_slots(k, s), t)`` equals
``permute_slots(k, t.compose(s))``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import DegenerateStateError, DomainError
from .tensor import ZERO_NORM, MultiKet, check_slot


@dataclass(frozen=True)
class SlotPermutation:
    """Bijection on ``{1..n}``; ``images[s-1]`` is the destination of slot ``s``."""

    images: tuple

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise DomainError(f"{images} is not a bijection on 1..{len(images)}")
        object.__setattr__(self, "images", images)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, s: int) -> int:
        return self.images[s - 1]

    @classmethod
    def identity(cls, n: int) -> "SlotPermutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, i: int, j: int, n: int) -> "SlotPermutation":
        check_slot(i, n)
        check_slot(j, n)
        if i == j:
            raise DomainError("a transposition needs two distinct slots")
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    @classmethod
    def cycle(cls, slots, n: int) -> "SlotPermutation":
        """Cycle ``(a b c ...)``: a -> b -> c -> ... -> a."""
        images = list(range(1, n + 1))
        slots = list(slots)
        for s in slots:
            check_slot(s, n)
        for a, b in zip(slots, slots[1:] + slots[:1]):
            images[a - 1] = b
        return cls(tuple(images))

    def compose(self, other: "SlotPermutation") -> "SlotPermutation":
        """Return ``self o other`` (apply ``other`` first)."""
        if other.n != self.n:
            raise DomainError("cannot compose permutations of different degree")
        return SlotPermutation(tuple(self(other(s)) for s in range(1, self.n + 1)))

    def inverse(self) -> "SlotPermutation":
        inv = [0] * self.n
        for s, t in enumerate(self.images, start=1):
            inv[t - 1] = s
        return SlotPermutation(tuple(inv))

    def sign(self) -> int:
        return permutation_sign(self.images)


def permutation_sign(seq) -> int:
    """Parity of a sequence of distinct comparable items, by cycle counting."""
    seq = list(seq)
    order = sorted(range(len(seq)), key=seq.__getitem__)
    seen = [False] * len(seq)
    sign = 1
    for start in range(len(seq)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = order[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def transpose_slots(k: MultiKet, i: int, j: int) -> MultiKet:
    """Apply P_ij: exchange the i-th and j-th tensor factors."""
    check_slot(i, k.slots)
    check_slot(j, k.slots)
    if i == j:
        raise DomainError("P_ij needs two distinct slots")
    a, b = i - 1, j - 1
    out = {}
    for t, amp in k.amplitudes.items():
        u = list(t)
        u[a], u[b] = u[b], u[a]
        out[tuple(u)] = amp
    return MultiKet(k.dim, k.slots, out)


def permute_slots(k: MultiKet, sigma: SlotPermutation) -> MultiKet:
    if not isinstance(sigma, SlotPermutation):
        sigma = SlotPermutation(tuple(sigma))
    if sigma.n != k.slots:
        raise DomainError(f"permutation of degree {sigma.n} on a {k.slots}-slot ket")
    dest = [sigma(s) - 1 for s in range(1, k.slots + 1)]
    out = {}
    for t, amp in k.amplitudes.items():
        u = [0] * k.slots
        for s, x in enumerate(t):
            u[dest[s]] = x
        out[tuple(u)] = amp
    return MultiKet(k.dim, k.slots, out)


def _check_slot_set(slots, n: int) -> list:
    slots = sorted(set(slots))
    if len(slots) < 2:
        raise DomainError("(anti)symmetrization needs at least two slots")
    for s in slots:
        check_slot(s, n)
    return slots


def _permutation_sum(k: MultiKet, slots, signed: bool) -> MultiKet:
    positions = [s - 1 for s in _check_slot_set(slots, k.slots)]
    arrangements = [(p, permutation_sign(p) if signed else 1)
                    for p in itertools.permutations(range(len(positions)))]
    out: dict = {}
    for t, amp in k.amplitudes.items():
        for p, sgn in arrangements:
            u = list(t)
            for dst, src in zip(positions, p):
                u[dst] = t[positions[src]]
            u = tuple(u)
            out[u] = out.get(u, 0j) + sgn * amp
    total = MultiKet(k.dim, k.slots, out)
    nrm = total.norm()
    # relative test: the raw sum scales with |slots|! and with the input norm
    if nrm <= ZERO_NORM * max(1.0, k.norm()) * math.factorial(len(positions)):
        kind = "antisymmetrization" if signed else "symmetrization"
        raise DegenerateStateError(f"{kind} over slots {sorted(slots)} annihilates the ket")
    return total.scaled(1.0 / nrm)


def symmetrize(k: MultiKet, slots) -> MultiKet:
    """Normalized sum of the ket over all permutations of ``slots``."""
    return _permutation_sum(k, slots, signed=False)


def antisymmetrize(k: MultiKet, slots) -> MultiKet:
    """Normalized signed sum (even minus odd permutations) over ``slots``."""
    return _permutation_sum(k, slots, signed=True)
