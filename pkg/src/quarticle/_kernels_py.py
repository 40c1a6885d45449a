"""Pure numpy implementations of the slot-local kernels (import-time fallback)."""

import numpy as np


def apply_local(psi, mat, slot, n, d):
    """Return ``(I x .. x mat x .. x I) psi`` with ``mat`` acting on ``slot`` (0-based)."""
    psi = np.asarray(psi, dtype=np.complex128)
    mat = np.asarray(mat, dtype=np.complex128)
    if psi.ndim != 2 or psi.shape[0] != d**n or mat.shape != (d, d):
        raise ValueError("shape mismatch")
    if not 0 <= slot < n:
        raise ValueError("slot out of range")
    batch = psi.shape[1]
    t = psi.reshape((d,) * n + (batch,))
    t = np.moveaxis(np.tensordot(mat, t, axes=([1], [slot])), 0, slot)
    return np.ascontiguousarray(t).reshape(d**n, batch)


def expect_chain(psi, mats, slots, n, d):
    """Return ``<psi| M_0 M_1 ... M_{k-1} |psi>``, applying the rightmost factor first."""
    psi = np.asarray(psi, dtype=np.complex128)
    if psi.shape != (d**n,) or len(mats) != len(slots):
        raise ValueError("shape mismatch")
    v = psi.reshape(-1, 1)
    for mat, slot in zip(mats[::-1], slots[::-1]):
        v = apply_local(v, mat, int(slot), n, d)
    return complex(np.vdot(psi, v[:, 0]))
