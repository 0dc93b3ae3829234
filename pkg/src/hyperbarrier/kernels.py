"""Search kernels: the compiled extension when built, else the Python fallback.

Set HYPERBARRIER_PURE=1 to force the fallback.
"""
import os

from . import _kernels_py as pure

compiled = None
if os.environ.get("HYPERBARRIER_PURE", "") in ("", "0"):
    try:
        from . import _kernels as compiled  # type: ignore[no-redef]
    except ImportError:
        compiled = None

impl = compiled if compiled is not None else pure
BACKEND = "compiled" if compiled is not None else "python"


def exact_cover(n, edges):
    return impl.exact_cover(n, edges)


def max_matching(n, edges, upper, initial):
    return impl.max_matching(n, edges, upper, initial)


def min_heavy_subset(n, edges, size, j):
    if n > 64 or impl is pure:
        return pure.min_heavy_subset(n, edges, size, j)
    return impl.min_heavy_subset(n, edges, size, j)


def index_codes(edges, labels, base):
    d = max(labels) + 1 if len(labels) else 0
    if impl is pure or base ** d >= 2 ** 62:
        return pure.index_codes(edges, labels, base)
    return impl.index_codes(edges, labels, base)
