"""Kernel selection: compiled extension if available, pure Python otherwise.

Set ``CK_PURE_KERNEL=1`` to force the pure-Python kernel (used by the
benchmark and to cross-check the two implementations).
"""

import os

if os.environ.get("CK_PURE_KERNEL") == "1":
    from . import _kernel_py as _impl
else:
    try:
        from . import _kernel_c as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as _impl

IMPLEMENTATION = _impl.IMPLEMENTATION
mono_mul = _impl.mono_mul
terms_add = _impl.terms_add
terms_neg = _impl.terms_neg
terms_scale = _impl.terms_scale
terms_mul = _impl.terms_mul
