"""Backend selection for the dense slot-local kernels.

The compiled extension is used when it was built; otherwise the numpy
implementation is loaded. Both expose ``apply_local`` and ``expect_chain``
with identical semantics, and ``BACKEND`` names the one in use.
"""

import numpy as np

try:
    from . import _kernels as _impl

    BACKEND = "cython"
except ImportError:  # extension not built
    from . import _kernels_py as _impl

    BACKEND = "python"

from . import _kernels_py as python_backend  # noqa: F401  (benchmarks and tests)


def apply_local(psi, mat, slot, n, d):
    psi = np.ascontiguousarray(psi, dtype=np.complex128)
    mat = np.ascontiguousarray(mat, dtype=np.complex128)
    return _impl.apply_local(psi, mat, slot, n, d)


def expect_chain(psi, mats, slots, n, d):
    psi = np.ascontiguousarray(psi, dtype=np.complex128)
    mats = np.ascontiguousarray(mats, dtype=np.complex128).reshape(-1, d, d)
    slots = np.ascontiguousarray(slots, dtype=np.int_)
    return _impl.expect_chain(psi, mats, slots, n, d)
