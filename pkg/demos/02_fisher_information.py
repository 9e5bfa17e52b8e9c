#!/usr/bin/env python3
"""Fisher information blocks and the per-time gain factor.

A single Hadamard-test pair at time t carries theta-information
c_i^2 t^2 f_i(t) about mode i, where the gain factor f_i is at least 1
everywhere and reaches the aligned-time value f_i_max whenever the
measurement becomes near-deterministic.  The demo assembles blocks for
single circuits, sums them over a schedule, and inverts the total to
compare the exact variance bound with its cheap diagonal surrogate.
"""

import numpy as np

from qpe_bounds import (
    Spectrum,
    crlb_diag,
    crlb_full,
    diag_ratio,
    f_i,
    f_i_max,
    ht_fim_single,
    qft_fim,
    total_fim,
)


def main():
    s = Spectrum([-0.85, 0.3, 1.7], [0.7, 0.2, 0.1])

    print("single test pair at t=3: theta-theta block")
    F = ht_fim_single(s, 3.0)
    print(np.round(F.theta_theta, 3))
    print()

    print("gain factor of the dominant mode (floor 1, aligned value "
          f"{f_i_max(s, 0):.4f} at t=0):")
    for t in (0.0, 0.7, 3.0, 11.0, 14.6):
        print(f"  f_0({t:5.1f}) = {f_i(s, 0, t):.4f}")
    print()

    c = np.array([0.27241843, 0.52721892, 0.20036266])
    s2 = Spectrum([-0.88147967, 0.80420184, 2.10798931], c / c.sum())
    t_star = 14.611250464900042
    print("the aligned value is a limit, not a pointwise ceiling; for this")
    print("spectrum a generic time beats it:")
    print(f"  f_0({t_star:.2f}) = {f_i(s2, 0, t_star):.4f}"
          f"  vs aligned value {f_i_max(s2, 0):.4f}")
    print()

    print("campaign totals at T=200 (50 times, 1 shot each):")
    for kind in ("qmegs", "csqpe", "qcels"):
        F = total_fim(s, kind, 200, 50, 1)
        print(f"  {kind:6s} I_00 = {F.theta_theta[0, 0]:.4e}"
              f"  var bound full = {crlb_full(F, 0):.3e}"
              f"  diagonal = {crlb_diag(F, 0):.3e}"
              f"  ratio = {diag_ratio(F, 0):.4f}")
    F = qft_fim(s, 8)
    print(f"  qft n=8 I_00 = {F.theta_theta[0, 0]:.4e}"
          f"  ratio = {diag_ratio(F, 0):.6f}")
    print()
    print("ratio near 1 means the cheap 1/I_ii surrogate is trustworthy;")
    print("clustered phases push it far above 1 (try head_dense at T=100).")


if __name__ == "__main__":
    main()
