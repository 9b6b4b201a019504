"""Kernel backend selection.

Prefers the compiled extension when it imported cleanly, else falls back
to the pure-Python kernels.  HADPI_BACKEND=py or HADPI_BACKEND=c forces
a choice; forcing c without a built extension is an error, forcing py is
always honoured.
"""

from __future__ import annotations

import os

from . import _kernel_py

_choice = os.environ.get("HADPI_BACKEND", "").strip().lower()

if _choice == "py":
    _impl = _kernel_py
    BACKEND = "py"
elif _choice == "c":
    from . import _kernel as _impl  # noqa: F401  (ImportError is the contract)

    BACKEND = "c"
elif _choice == "":
    try:
        from . import _kernel as _impl  # type: ignore[no-redef]

        BACKEND = "c"
    except ImportError:
        _impl = _kernel_py
        BACKEND = "py"
else:
    raise RuntimeError(f"HADPI_BACKEND must be 'py' or 'c', got {_choice!r}")

mat_mul_nums = _impl.mat_mul_nums
kron_nums = _impl.kron_nums
reduce_nums = _impl.reduce_nums
