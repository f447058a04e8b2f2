"""Backend selection for the Gray-walk enumeration.

The compiled extension is used when the build produced it; otherwise the
pure-Python twin takes over.  Both are importable side by side so the test
suite and the benchmark can compare them directly.
"""

from __future__ import annotations

from . import _graywalk_py
from .contacts import PackedTables

try:
    from . import _graywalk as _compiled
except ImportError:  # extension not built; pure Python still works
    _compiled = None


def available_backends() -> tuple[str, ...]:
    if _compiled is not None:
        return ("compiled", "python")
    return ("python",)


def default_backend() -> str:
    return available_backends()[0]


def resolve_backend(name: str) -> str:
    if name == "auto":
        return default_backend()
    if name not in ("compiled", "python"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "compiled" and _compiled is None:
        raise RuntimeError("compiled backend requested but not available")
    return name


def gray_walk_min(pt: PackedTables, start_cost: int,
                  backend: str = "auto") -> tuple[int, int, int, int]:
    """Minimise over all 2**q selections; see _graywalk_py for the contract."""
    name = resolve_backend(backend)
    if name == "compiled":
        return _compiled.gray_walk_min(pt.q, start_cost, pt.p0, pt.p1,
                                       pt.indptr, pt.neighbor, pt.pair)
    return _graywalk_py.gray_walk_min(pt.q, start_cost, pt.p0.tolist(),
                                      pt.p1.tolist(), pt.indptr.tolist(),
                                      pt.neighbor.tolist(), pt.pair.tolist())
