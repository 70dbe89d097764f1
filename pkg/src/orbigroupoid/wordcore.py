"""Selects the word-reduction kernel at import.

Prefers the compiled extension; falls back to the pure-Python twin when the
extension was not built, or when ``ORBIGROUPOID_PURE`` is set (useful for the
benchmark and for debugging).
"""

import os

from . import _wordcore_py

if os.environ.get("ORBIGROUPOID_PURE"):
    _impl = _wordcore_py
else:
    try:
        from . import _wordcore as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _wordcore_py

reduce_word = _impl.reduce_word
concat_reduce = _impl.concat_reduce
is_reduced = _impl.is_reduced
BACKEND = _impl.BACKEND
