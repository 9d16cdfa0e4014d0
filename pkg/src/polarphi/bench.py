"""Micro-benchmarks: jitted scalar kernels vs their plain fallbacks.

Run as ``python -m polarphi.bench [--fast]``.  Each case times the numba
build (after a warm-up call that absorbs JIT compilation) against the twin
that serves as the POLARPHI_NUMBA=0 fallback -- the vectorized numpy build
where one exists, the plain scalar loop where that is what the fallback
actually runs (the polygamma ladder).  Prints one line per case with the
best-of-repeats wall time for each path and the speedup ratio.

Without numba installed the jitted column reuses the fallback, so the tool
still runs (ratio ~1) and the output says so.
"""

import argparse
import sys
import time

import numpy as np

from ._accel import HAVE_NUMBA, njit
from .revolution import _NB_BATCH, _NP_EVAL, parse_profile, polar_profile
from .rng import sample_bases_v
from .sampler import _fill_pball_nb, _pball_columns_np
from .specfun import _digamma_kernel, _trigamma_kernel
from .specfun import _psi_impls  # noqa: F401  (documents the dispatch origin)

if HAVE_NUMBA:
    from .specfun import _digamma_nb, _trigamma_nb

    @njit
    def _psi_sweep_nb(xs):
        s = 0.0
        for i in range(xs.shape[0]):
            s += _digamma_nb(xs[i]) + _trigamma_nb(xs[i])
        return s

else:  # pragma: no cover - exercised only without numba
    _psi_sweep_nb = None


def _psi_sweep_py(xs):
    s = 0.0
    for x in xs:
        s += _digamma_kernel(x) + _trigamma_kernel(x)
    return s


def _best_time(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _row(name, fn_nb, fn_py, repeats):
    if fn_nb is not None:
        fn_nb()  # warm-up: JIT compile outside the timed region
        t_nb = _best_time(fn_nb, repeats)
    else:
        t_nb = float("nan")
    t_py = _best_time(fn_py, repeats)
    ratio = t_py / t_nb if t_nb == t_nb and t_nb > 0 else float("nan")
    print(f"{name:<28s} numba {t_nb * 1e3:9.3f} ms   numpy {t_py * 1e3:9.3f} ms   x{ratio:6.1f}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="polarphi.bench", description=__doc__.splitlines()[0])
    parser.add_argument("--fast", action="store_true", help="small sizes (smoke run)")
    args = parser.parse_args(argv)

    scale = 0.05 if args.fast else 1.0
    repeats = 2 if args.fast else 5
    if not HAVE_NUMBA:
        print("numba not importable: jitted column reuses the fallback", file=sys.stderr)

    m_psi = max(1000, int(200_000 * scale))
    xs = np.linspace(0.5, 60.0, m_psi)
    _row(
        f"polygamma sweep ({m_psi})",
        (lambda: _psi_sweep_nb(xs)) if HAVE_NUMBA else None,
        lambda: _psi_sweep_py(xs),
        repeats,
    )

    m_samp = max(500, int(100_000 * scale))
    dim, p, seed = 5, 3.0, 12345
    idx = np.arange(m_samp, dtype=np.uint64)
    out = np.empty((m_samp, dim))
    bases = sample_bases_v(seed, idx)
    _row(
        f"p-ball sampling ({m_samp}x{dim})",
        (lambda: _fill_pball_nb(out, seed, idx, p)) if HAVE_NUMBA else None,
        lambda: _pball_columns_np(bases, dim, p),
        repeats,
    )

    m_pol = max(501, int(20_001 * scale))
    polar = polar_profile(parse_profile("pball:3"))
    kind, param, kt, kr = polar._data()
    ts = np.linspace(-1.0, 1.0, m_pol)
    _row(
        f"polar profile eval ({m_pol})",
        (lambda: _NB_BATCH[1](kind, param, kt, kr, ts)) if HAVE_NUMBA else None,
        lambda: _NP_EVAL[1](kind, param, kt, kr, ts),
        repeats,
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
