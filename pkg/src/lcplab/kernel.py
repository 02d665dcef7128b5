"""Backend selection for the integer pivoting kernels.

The compiled extension is used when it was built; otherwise the pure-Python
module is loaded.  Callers go through :func:`pivot` and :func:`bareiss_det`
here so :func:`use_backend` takes effect everywhere at once.
"""

from lcplab import _kernel_py

try:
    from lcplab import _kernel as _compiled
except ImportError:  # extension not built
    _compiled = None

_BACKENDS = {"python": _kernel_py}
if _compiled is not None:
    _BACKENDS["compiled"] = _compiled

_active = _BACKENDS.get("compiled", _kernel_py)


def available_backends():
    return sorted(_BACKENDS)


def backend():
    """Name of the backend currently in use."""
    return "compiled" if _active is _compiled and _compiled is not None else "python"


def use_backend(name):
    """Switch the process-wide kernel backend ("python" or "compiled")."""
    global _active
    try:
        _active = _BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable kernel backend {name!r}; "
                         f"available: {available_backends()}") from None


def pivot(T, r, c, d):
    return _active.pivot(T, r, c, d)


def bareiss_det(M):
    return _active.bareiss_det(M)
