"""Select the compiled core or the NumPy fallback at import time.

Set ``FRACSEMI_PURE_PYTHON=1`` to force the fallback even when the
extension is built.
"""
import os

from . import _fallback

NAME = "python"
_impl = _fallback

if os.environ.get("FRACSEMI_PURE_PYTHON", "") != "1":
    try:
        from . import _core as _impl  # noqa: F811
        NAME = "compiled"
    except ImportError:
        _impl = _fallback

stable_density_integral = _impl.stable_density_integral
jacobi_rows = _impl.jacobi_rows


def implementations():
    """Mapping of available backend names to modules (for benchmarks/tests)."""
    out = {"python": _fallback}
    try:
        from . import _core
        out["compiled"] = _core
    except ImportError:
        pass
    return out
