"""Float kernel selection: compiled extension when built, pure Python otherwise.

Set IOACHECK_PURE_PYTHON=1 to force the fallback.
"""

import os

BACKEND = "python"

if os.environ.get("IOACHECK_PURE_PYTHON") != "1":
    try:
        from ._kernels import arg_walk, min_clearance  # noqa: F401

        BACKEND = "cython"
    except ImportError:
        pass

if BACKEND == "python":
    from ._kernels_py import arg_walk, min_clearance  # noqa: F401

from ._kernels_py import ray_distance  # noqa: E402,F401
