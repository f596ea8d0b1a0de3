import importlib
import os
import subprocess
import sys

import pytest

from hamlattice import _kernels_py, kernels


BOXES = [(k, -1, 4, -2, 3) for k in range(1, 8)] + [(8, 0, 3, 0, 2)]


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")


@pytest.mark.skipif(kernels.BACKEND != "cython", reason="extension not built")
@pytest.mark.parametrize("box", BOXES)
@pytest.mark.parametrize("sq,ch", [(-1, 1), (0, 2), (-2, 0), (1, 3)])
def test_backends_agree(box, sq, ch):
    from hamlattice import _kernels
    assert list(_kernels.scan_box(*box, sq, ch)) == list(_kernels_py.scan_box(*box, sq, ch))


def test_fallback_forced_by_environment():
    env = dict(os.environ, HAMLATTICE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import hamlattice.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_python_kernel_counts():
    rows = _kernels_py.scan_box(3, -1, 2, -1, 2, -1, 1)
    assert len(rows) == 6
