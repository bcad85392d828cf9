"""Flow kernels: compiled extension when available, pure Python otherwise.

Set ``ACTIVETIME_PURE=1`` to force the pure-Python backend.
"""

import os

from . import flow_py

try:
    from . import _flow as _compiled
except ImportError:
    _compiled = None

if os.environ.get("ACTIVETIME_PURE") or _compiled is None:
    _active = flow_py
else:
    _active = _compiled

check_slots_flow = _active.check_slots_flow
search_extra = _active.search_extra
node_opening_flow = _active.node_opening_flow


def backend() -> str:
    """Name of the kernel backend in use ('compiled' or 'python')."""
    return "python" if _active is flow_py else "compiled"


def implementations() -> dict:
    """All available backends, for parity tests and benchmarks."""
    impls = {"python": flow_py}
    if _compiled is not None:
        impls["compiled"] = _compiled
    return impls
