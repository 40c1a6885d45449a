"""Single-particle observables, structural n-particle operators and operator families.

Operators are kept as sums of tensor products of d x d factors and are never
expanded into d^n x d^n matrices for application. Equality of two operators is
decided by their action on every basis tuple, since the term representation is
not unique.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels
from .errors import ContractError, DomainError, ShapeError
from .tensor import DEFAULT_TOL, MultiKet, check_slot

CLUSTER_TOL = 1e-8
HERMITIAN_TOL = 1e-12


def cluster_spectrum(values, vectors, tol=CLUSTER_TOL):
    """Group eigenpairs whose eigenvalues chain within ``tol``; return [(value, projector)]."""
    order = np.argsort(values)
    groups = []
    for idx in order:
        if groups and values[idx] - values[groups[-1][-1]] <= tol:
            groups[-1].append(idx)
        else:
            groups.append([idx])
    spectrum = []
    for g in groups:
        v = vectors[:, g]
        spectrum.append((float(np.mean(values[g])), v @ v.conj().T))
    return spectrum


class SingleParticleObservable:
    """Hermitian d x d matrix together with its clustered spectral decomposition."""

    def __init__(self, matrix, name=None, cluster_tol=CLUSTER_TOL):
        m = np.array(matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
            raise ShapeError(f"observable must be a square matrix, got shape {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL * max(1.0, np.max(np.abs(m))):
            raise DomainError("observable matrix is not Hermitian")
        m = (m + m.conj().T) / 2
        m.flags.writeable = False
        self.matrix = m
        self.name = name
        values, vectors = np.linalg.eigh(m)
        self.spectrum = cluster_spectrum(values, vectors, cluster_tol)
        for _, p in self.spectrum:
            p.flags.writeable = False

    def __repr__(self):
        label = self.name or "observable"
        return f"SingleParticleObservable({label}, d={self.dim})"

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self):
        return [q for q, _ in self.spectrum]

    def projector(self, q, tol=CLUSTER_TOL) -> np.ndarray:
        for value, proj in self.spectrum:
            if abs(value - q) <= tol:
                return proj
        raise DomainError(f"{q!r} is not an eigenvalue of {self!r} (spectrum {self.eigenvalues()})")


def diagonal_observable(d, name="Q") -> SingleParticleObservable:
    """Non-degenerate observable diag(0, 1, ..., d-1): eigenvalue k belongs to basis state k."""
    return SingleParticleObservable(np.diag(np.arange(d, dtype=float)), name=name)


def random_hermitian(d, rng) -> np.ndarray:
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return (g + g.conj().T) / 2


def random_observable(d, rng, name=None) -> SingleParticleObservable:
    return SingleParticleObservable(random_hermitian(d, rng), name=name)


def _as_factor(m, d):
    m = np.array(m, dtype=np.complex128)
    if m.shape != (d, d):
        raise ShapeError(f"factor of shape {m.shape}, expected {(d, d)}")
    m.flags.writeable = False
    return m


class OperatorSum:
    """Complex-linear combination of n-fold tensor products of d x d matrices."""

    def __init__(self, terms):
        terms = list(terms)
        if not terms:
            raise ShapeError("an OperatorSum needs at least one term")
        n = len(terms[0][1])
        d = np.asarray(terms[0][1][0]).shape[0]
        if n < 1:
            raise ShapeError("terms need at least one factor")
        clean = []
        for coef, factors in terms:
            if len(factors) != n:
                raise ShapeError("terms disagree on the number of factors")
            clean.append((complex(coef), tuple(_as_factor(f, d) for f in factors)))
        self.terms = tuple(clean)
        self.n = n
        self.d = d

    def __repr__(self):
        return f"OperatorSum(n={self.n}, d={self.d}, terms={len(self.terms)})"

    @property
    def shape(self):
        return (self.d, self.n)

    @classmethod
    def identity(cls, n, d):
        eye = np.eye(d)
        return cls([(1.0, (eye,) * n)])

    @cached_property
    def _identity_mask(self):
        eye = np.eye(self.d)
        return [tuple(np.array_equal(f, eye) for f in factors) for _, factors in self.terms]

    def apply_dense(self, psi: np.ndarray) -> np.ndarray:
        """Apply to a (d^n, B) array of column states."""
        psi = np.ascontiguousarray(psi, dtype=np.complex128)
        out = np.zeros_like(psi)
        for (coef, factors), mask in zip(self.terms, self._identity_mask):
            v = psi
            for slot, (f, is_eye) in enumerate(zip(factors, mask)):
                if not is_eye:
                    v = kernels.apply_local(v, f, slot, self.n, self.d)
            out += coef * v
        return out

    @cached_property
    def action(self) -> np.ndarray:
        """Images of all d^n basis tuples, one per column."""
        a = self.apply_dense(np.eye(self.d**self.n, dtype=np.complex128))
        a.flags.writeable = False
        return a

    def acts_like(self, other: "OperatorSum", tol=DEFAULT_TOL) -> bool:
        if self.shape != other.shape:
            raise ShapeError(f"operators differ in (d, n): {self.shape} vs {other.shape}")
        return bool(np.max(np.abs(self.action - other.action)) <= tol)

    def is_hermitian(self, tol=DEFAULT_TOL) -> bool:
        a = self.action
        return bool(np.max(np.abs(a - a.conj().T)) <= tol)

    def slot_local(self):
        """``(slot, d x d matrix)`` if the operator only acts on one slot (1-based), else None.

        A multiple of the identity reports slot 1.
        """
        active = set()
        for mask in self._identity_mask:
            active.update(s for s, is_eye in enumerate(mask) if not is_eye)
        if len(active) > 1:
            return None
        slot = active.pop() if active else 0
        mat = sum(coef * factors[slot] for coef, factors in self.terms)
        return slot + 1, np.asarray(mat)

    def permuted(self, images) -> "OperatorSum":
        """Conjugate by the slot permutation sending slot s to ``images[s-1]``."""
        out = []
        for coef, factors in self.terms:
            new = [None] * self.n
            for s, f in enumerate(factors):
                new[images[s] - 1] = f
            out.append((coef, tuple(new)))
        return OperatorSum(out)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ShapeError("cannot add operators of different shape")
        return OperatorSum(self.terms + other.terms)

    def __mul__(self, c):
        return OperatorSum([(c * coef, f) for coef, f in self.terms])

    __rmul__ = __mul__

    def __matmul__(self, other):
        if self.shape != other.shape:
            raise ShapeError("cannot multiply operators of different shape")
        return OperatorSum(
            [(c1 * c2, tuple(a @ b for a, b in zip(f1, f2)))
             for c1, f1 in self.terms for c2, f2 in other.terms]
        )


def embed_single(q, i, n) -> OperatorSum:
    """I x ... x Q x ... x I with Q in slot ``i``."""
    mat = q.matrix if isinstance(q, SingleParticleObservable) else np.asarray(q)
    check_slot(i, n)
    eye = np.eye(mat.shape[0])
    return OperatorSum([(1.0, tuple(mat if s == i - 1 else eye for s in range(n)))])


def eigenprojector_embed(q: SingleParticleObservable, value, i, n, tol=CLUSTER_TOL) -> OperatorSum:
    """Embed the eigenprojector of the eigenvalue cluster containing ``value`` at slot ``i``."""
    return embed_single(q.projector(value, tol), i, n)


def apply_operator(k: MultiKet, op: OperatorSum) -> MultiKet:
    if k.shape != op.shape:
        raise ShapeError(f"ket {k.shape} and operator {op.shape} disagree")
    out = op.apply_dense(k.dense.reshape(-1, 1))
    return MultiKet.from_array(out[:, 0], k.dim, k.slots)


def _swap_images(i, j, n):
    check_slot(i, n)
    check_slot(j, n)
    if i == j:
        raise DomainError("swap conjugation needs two distinct slots")
    images = list(range(1, n + 1))
    images[i - 1], images[j - 1] = j, i
    return images


def swap_dense(mat, a, b, n, d):
    """P_ab M P_ab for a d^n x d^n matrix (0-based slots)."""
    axes = list(range(n))
    axes[a], axes[b] = axes[b], axes[a]
    t = np.asarray(mat).reshape((d,) * (2 * n))
    t = t.transpose(axes + [n + x for x in axes])
    return np.ascontiguousarray(t).reshape(d**n, d**n)


def conjugate_by_swap(op: OperatorSum, i, j) -> OperatorSum:
    """P_ij O P_ij: exchange factors i and j in every term."""
    return op.permuted(_swap_images(i, j, op.n))


def commutes_with_swap(op: OperatorSum, i, j, tol=DEFAULT_TOL) -> bool:
    return conjugate_by_swap(op, i, j).acts_like(op, tol)


class LocalProjector:
    """Projector acting as a d x d matrix on a single slot (0-based ``slot``)."""

    local = True

    def __init__(self, slot, matrix):
        self.slot = slot
        self.matrix = matrix

    def apply(self, v, n, d):
        return kernels.apply_local(v, self.matrix, self.slot, n, d)

    def apply_wide(self, v, n, d):
        t = v.reshape((d,) * n + (v.shape[1],))
        t = np.moveaxis(np.tensordot(self.matrix.astype(np.clongdouble), t, axes=([1], [self.slot])), 0, self.slot)
        return t.reshape(d**n, v.shape[1])


class DenseProjector:
    """Spectral projector of a many-slot operator, as a d^n x d^n matrix."""

    local = False

    def __init__(self, matrix):
        self.matrix = matrix
        self._wide = np.asarray(matrix).astype(np.clongdouble)

    def apply(self, v, n, d):
        return self.matrix @ v

    def apply_wide(self, v, n, d):
        return self._wide @ v


@dataclass(frozen=True, eq=False)
class OperatorFamily:
    """n operators indexed by slot, meant to satisfy O_j = P_ij O_i P_ij pairwise."""

    members: tuple
    name: str | None = None

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise ShapeError("a family needs at least one member")
        shape = members[0].shape
        if any(m.shape != shape for m in members):
            raise ShapeError("family members disagree on (d, n)")
        if len(members) != shape[1]:
            raise ShapeError(f"{len(members)} members for {shape[1]} slots")
        object.__setattr__(self, "members", members)

    @property
    def n(self):
        return self.members[0].n

    @property
    def d(self):
        return self.members[0].d

    def member(self, slot) -> OperatorSum:
        check_slot(slot, self.n)
        return self.members[slot - 1]

    @cached_property
    def _spectra(self):
        # A member that is the swap-conjugate of member 1 gets member 1's
        # projectors conjugated, so both sides of CC agree to rounding.
        first = self.members[0]
        spectra = []
        for slot, op in enumerate(self.members, start=1):
            local = op.slot_local()
            if local is not None:
                s, mat = local
                obs = SingleParticleObservable(mat)
                spectra.append([(q, LocalProjector(s - 1, p)) for q, p in obs.spectrum])
            elif slot > 1 and first.slot_local() is None and \
                    conjugate_by_swap(first, 1, slot).acts_like(op, CLUSTER_TOL):
                spectra.append([(q, DenseProjector(swap_dense(p.matrix, 0, slot - 1, self.n, self.d)))
                                for q, p in spectra[0]])
            else:
                a = op.action
                values, vectors = np.linalg.eigh((a + a.conj().T) / 2)
                spectra.append([(q, DenseProjector(p)) for q, p in cluster_spectrum(values, vectors)])
        return spectra

    def eigenvalues(self, slot):
        check_slot(slot, self.n)
        return [q for q, _ in self._spectra[slot - 1]]

    def projector(self, slot, value, tol=CLUSTER_TOL):
        check_slot(slot, self.n)
        for q, proj in self._spectra[slot - 1]:
            if abs(q - value) <= tol:
                return proj
        raise DomainError(f"{value!r} is not an eigenvalue of family member {slot}")

    @classmethod
    def slot_embedded(cls, q: SingleParticleObservable, n) -> "OperatorFamily":
        return cls(tuple(embed_single(q, i, n) for i in range(1, n + 1)), name=q.name)

    @classmethod
    def from_first_member(cls, first: OperatorSum, name=None) -> "OperatorFamily":
        """Members O_i = P_1i O_1 P_1i; CC holds when O_1 is symmetric in slots 2..n."""
        members = [first] + [conjugate_by_swap(first, 1, i) for i in range(2, first.n + 1)]
        return cls(tuple(members), name=name)

    @classmethod
    def product(cls, a, b, n, name=None) -> "OperatorFamily":
        """Members A x ... x B x ... x A with B in the member's own slot."""
        a = np.asarray(a, dtype=np.complex128)
        b = np.asarray(b, dtype=np.complex128)
        return cls(tuple(OperatorSum([(1.0, tuple(b if s == i else a for s in range(n)))])
                         for i in range(n)), name=name)


def _symmetrized_over(term_factors, slots, n):
    """Sum of a product term over all rearrangements of the given 1-based slots."""
    pos = [s - 1 for s in slots]
    out = []
    for p in itertools.permutations(range(len(pos))):
        new = list(term_factors)
        for k, src in enumerate(p):
            new[pos[k]] = term_factors[pos[src]]
        out.append((1.0, tuple(new)))
    return out


def random_cc_family(n, d, rng, terms=2) -> OperatorFamily:
    """Random Hermitian family satisfying CC pairwise.

    The first member is a real combination of random Hermitian product terms,
    symmetrized over slots 2..n; the others follow by conjugation with P_1i.
    """
    parts = []
    for _ in range(terms):
        coef = rng.normal()
        factors = tuple(random_hermitian(d, rng) for _ in range(n))
        sym = _symmetrized_over(factors, range(2, n + 1), n) if n > 2 else [(1.0, factors)]
        parts.extend((coef * c, f) for c, f in sym)
    return OperatorFamily.from_first_member(OperatorSum(parts), name="random-cc")


def random_ip_family(n, d, rng, terms=2) -> OperatorFamily:
    """Family whose members all equal one fully permutation-symmetric Hermitian operator."""
    parts = []
    for _ in range(terms):
        coef = rng.normal()
        factors = tuple(random_hermitian(d, rng) for _ in range(n))
        parts.extend((coef * c, f) for c, f in _symmetrized_over(factors, range(1, n + 1), n))
    op = OperatorSum(parts)
    return OperatorFamily((op,) * n, name="random-ip")


def verify_cc_family(f: OperatorFamily, tol=DEFAULT_TOL) -> bool:
    if f.n < 2:
        raise ContractError("CC needs at least two slots")
    for i, j in itertools.combinations(range(1, f.n + 1), 2):
        if not conjugate_by_swap(f.member(i), i, j).acts_like(f.member(j), tol):
            return False
    return True


def verify_ic(f: OperatorFamily, i, j, k, tol=DEFAULT_TOL) -> bool:
    for s in (i, j, k):
        check_slot(s, f.n)
    if len({i, j, k}) != 3:
        raise DomainError("IC needs three distinct slots")
    return conjugate_by_swap(f.member(k), i, j).acts_like(f.member(k), tol)
