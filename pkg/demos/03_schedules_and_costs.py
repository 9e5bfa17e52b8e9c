#!/usr/bin/env python3
"""Time schedules, their cost constants, and the cost-product bound.

Every Hadamard-test protocol is a distribution over evolution times.
Two dimensionless constants summarize its cost structure: gamma turns
shot counts into total evolution time (t_total = gamma N T) and chi is
the normalized second moment E[t^2]/T^2.  Together with the information
efficiency g_0 they give a protocol-level lower bound on the product
T x t_total x MSE, the quantity the benchmark scores as R.
"""

import numpy as np

from qpe_bounds import (
    chi,
    cost_product_bound,
    gamma,
    g_i,
    make_spectrum,
    realize,
    t_total,
)


def main():
    T, N_t, N_s = 400, 200, 3
    print(f"schedules drawn at T={T}, N_t={N_t}:")
    for kind in ("qmegs", "csqpe", "qcels", "rpe"):
        sched = realize(kind, 512 if kind == "rpe" else T, N_t, seed=5)
        t = sched.times
        print(f"  {kind:6s} {t.size:4d} times, |t| in [{np.abs(t).min():7.2f}, "
              f"{np.abs(t).max():7.2f}], mean|t|/T = {np.abs(t).mean() / sched.T:.4f}")
    print()

    print("cost constants (closed forms):")
    for kind in ("qmegs", "csqpe", "qcels"):
        g = gamma(kind, T=T, N_t=N_t)
        x = chi(kind, T=T, N_t=N_t)
        tt = t_total(kind, T, N_t, N_s)
        print(f"  {kind:6s} gamma={g:.6f}  chi={x:.6f}  t_total={tt:.4e}"
              f"  (= gamma N_s N_t T: {g * N_s * N_t * T:.4e})")
    print()

    s = make_spectrum("uniform", 10, 0.5)
    print(f"cost-product bounds, uniform L=10 alpha=0.5 (c0={s.overlap(0):.3f}):")
    for kind, Tk in (("qft", 255), ("qmegs", 256), ("csqpe", 256), ("qcels", 256)):
        n_t = 1 if kind == "qft" else N_t
        bound = cost_product_bound(s, kind, Tk, n_t, 1)
        g0 = g_i(s, kind, Tk, n_t, 1)
        print(f"  {kind:6s} T={Tk}  g0={g0:.4e}  T*t_total*MSE >= {bound:.4e}")
    print()
    print("smaller bound = cheaper protocol at equal accuracy; the register")
    print("readout wins at small c0, the test pair wins once c0 dominates.")


if __name__ == "__main__":
    main()
