"""SAT backend selection.

The compiled kernel is used when it was built; otherwise the pure-Python
twin. Setting ``WHYQ_PURE_PYTHON=1`` forces the fallback.
"""
from __future__ import annotations

import os

from . import _dpll_py

SAT, UNSAT, UNKNOWN = _dpll_py.SAT, _dpll_py.UNSAT, _dpll_py.UNKNOWN

python_solve = _dpll_py.solve

try:
    from ._dpll import solve as compiled_solve  # type: ignore[import-not-found]
except ImportError:  # extension not built
    compiled_solve = None

if compiled_solve is not None and os.environ.get("WHYQ_PURE_PYTHON", "") not in ("1", "true", "yes"):
    solve = compiled_solve
    BACKEND = "compiled"
else:
    solve = python_solve
    BACKEND = "python"
