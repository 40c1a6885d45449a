"""Exact integer-coefficient kets and the expansion oracle for the state catalog.

Everything here is deliberately independent of :mod:`quarticle.permutations`:
permutation sums are expanded with plain integer arithmetic, so the tables
produced serve as golden data for the floating-point constructions.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .errors import DegenerateStateError, DimensionError, DomainError
from .tensor import MultiKet


class ExactKet:
    """Ket with integer (or rational) coefficients on orthonormal product kets."""

    def __init__(self, dim, slots, coeffs):
        self.dim = dim
        self.slots = slots
        self.coeffs = {tuple(t): c for t, c in coeffs.items() if c != 0}

    def __add__(self, other):
        out = dict(self.coeffs)
        for t, c in other.coeffs.items():
            out[t] = out.get(t, 0) + c
        return ExactKet(self.dim, self.slots, out)

    def __eq__(self, other):
        return isinstance(other, ExactKet) and self.coeffs == other.coeffs and self.shape == other.shape

    @property
    def shape(self):
        return (self.dim, self.slots)

    def norm_squared(self):
        return sum(c * c for c in self.coeffs.values())

    def probability(self, slot, label) -> Fraction:
        """Weight of basis tuples carrying ``label`` in (1-based) ``slot``."""
        total = self.norm_squared()
        if total == 0:
            raise DegenerateStateError("zero exact ket")
        hit = sum(c * c for t, c in self.coeffs.items() if t[slot - 1] == label)
        return Fraction(hit) / Fraction(total)

    def to_multiket(self) -> MultiKet:
        """Normalized floating-point copy."""
        total = self.norm_squared()
        if total == 0:
            raise DegenerateStateError("zero exact ket")
        scale = 1.0 / math.sqrt(total)
        return MultiKet(self.dim, self.slots, {t: float(c) * scale for t, c in self.coeffs.items()})

    def table(self):
        """Sorted ``[(basis tuple, coefficient), ...]`` rows."""
        return sorted(self.coeffs.items())


def exact_product(labels, d) -> ExactKet:
    labels = tuple(labels)
    if any(not 0 <= x < d for x in labels):
        raise DomainError(f"labels {labels} outside [0, {d})")
    return ExactKet(d, len(labels), {labels: 1})


def _inversions(p):
    return sum(1 for a in range(len(p)) for b in range(a + 1, len(p)) if p[a] > p[b])


def exact_permutation_sum(ket: ExactKet, slots, antisymmetric=False) -> ExactKet:
    """Unnormalized (signed) sum over every rearrangement of the given 1-based slots."""
    pos = sorted(s - 1 for s in set(slots))
    out = {}
    for t, c in ket.coeffs.items():
        for p in itertools.permutations(range(len(pos))):
            sgn = (-1) ** _inversions(p) if antisymmetric else 1
            u = list(t)
            for k, src in enumerate(p):
                u[pos[k]] = t[pos[src]]
            u = tuple(u)
            out[u] = out.get(u, 0) + sgn * c
    return ExactKet(ket.dim, ket.slots, out)


def _base_labels(m, n, d):
    if m < 3:
        raise DomainError(f"the catalog states need m >= 3, got m={m}")
    if n < m:
        raise DomainError(f"n={n} slots cannot hold m={m} particles")
    if d < m or (n > m and d < m + 1):
        raise DimensionError(f"d={d} too small for m={m}, n={n}")
    return tuple(range(m)) + (m,) * (n - m)


def expand_psi_s(m, n=None, d=None) -> ExactKet:
    n = m if n is None else n
    d = (m if n == m else m + 1) if d is None else d
    base = exact_product(_base_labels(m, n, d), d)
    return exact_permutation_sum(exact_permutation_sum(base, [1, 2], True), range(2, m + 1))


def expand_psi_a(m, n=None, d=None) -> ExactKet:
    n = m if n is None else n
    d = (m if n == m else m + 1) if d is None else d
    base = exact_product(_base_labels(m, n, d), d)
    return exact_permutation_sum(exact_permutation_sum(base, [1, 2]), range(2, m + 1), True)


def expand_psi_d(m, n=None, d=None) -> ExactKet:
    n = m if n is None else n
    d = (m if n == m else m + 1) if d is None else d
    base = exact_product(_base_labels(m, n, d), d)
    total = ExactKet(d, n, {})
    for i in range(1, m + 1):
        succ = i % m + 1
        pair = exact_permutation_sum(base, [i, succ], True)
        total = total + exact_permutation_sum(pair, [s for s in range(1, m + 1) if s != i])
    return total


def expand_symmetric(m, n=None, d=None) -> ExactKet:
    """Total symmetrization of phi_1 ... phi_m."""
    n = m if n is None else n
    d = (m if n == m else m + 1) if d is None else d
    base = exact_product(_base_labels(m, n, d), d)
    return exact_permutation_sum(base, range(1, m + 1))


def psi_s_closed_forms(m):
    """``(pr(Q_1=q_1), pr(Q_i=q_1))`` for i >= 2 from the term-counting argument."""
    return Fraction(1, 2), Fraction(1, 2 * (m - 1))


def psi_d_closed_forms(m):
    """``(pr(Q_i=q_i), pr(Q_j=q_i))`` as predicted by counting terms with no cancellation."""
    f = math.factorial
    same = Fraction(f(m - 1) + (2 * m - 3) * f(m - 2), 2 * f(m))
    other = Fraction((2 * m - 4) * f(m - 2), 2 * f(m))
    return same, other
