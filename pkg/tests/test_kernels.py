import os
import subprocess
import sys

import numpy as np
import pytest

from shaforge import _kernels_py as fallback
from shaforge import kernels
from shaforge.intarith import primes_up_to

try:
    from shaforge import _kernels as compiled
except ImportError:
    compiled = None

# y^2 + y = x^3 - x^2 - 10x - 20
B2, B4, B6 = -4, -20, -79
A, B = -27 * 496, -54 * 20008


def test_backend_is_compiled_when_built():
    if compiled is None:
        assert kernels.BACKEND == "python"
    else:
        assert kernels.BACKEND == compiled.BACKEND


@pytest.mark.skipif(compiled is None, reason="extension not built")
def test_compiled_matches_fallback():
    for p in primes_up_to(3000).tolist()[5:]:
        if p == 11:
            continue
        args = (p, B2 % p, B4 % p, B6 % p)
        assert compiled.count_exhaustive(*args) == fallback.count_exhaustive(*args)
    for p in (1000003, 2147483647, 1000000007):
        assert compiled.count_bsgs(p, A % p, B % p) == fallback.count_bsgs(p, A % p, B % p)


@pytest.mark.skipif(compiled is None, reason="extension not built")
def test_batch_matches_fallback():
    ps = primes_up_to(100000)
    ps = ps[ps > 11][::37]
    cols = [np.array([v % p for p in ps.tolist()], dtype=np.int64) for v in (B2, B4, B6, A, B)]
    for thr in (0, 1 << 16):
        assert np.array_equal(compiled.ap_good_batch(ps, *cols, thr), fallback.ap_good_batch(ps, *cols, thr))


def test_pure_env_selects_fallback():
    env = dict(os.environ, SHAFORGE_PURE="1")
    out = subprocess.run([sys.executable, "-c", "from shaforge import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
