"""Cramer-Rao evaluation: full-matrix and diagonal bounds, cost products.

The variance bound for mode i is (I^-1)_{ii} of the full 2L x 2L Fisher
matrix; the cheap surrogate is 1/I_{ii}.  Their product I_{ii} (I^-1)_{ii}
is the diagonal-approximation quality factor (1 when parameters decouple).
"""

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .errors import NoLinearCostForm, SingularFim
from .fim import f_i_max, g_i
from .schedules import ProtocolKind, _require_power_of_two, gamma


_COND_CAP = 1e12


def _inverse_entry(full, pos, L):
    """(full^-1)[pos, pos], robust to the breakdown regime.

    The matrix is first scaled symmetrically to unit diagonal so that the
    huge dynamic range of geometric overlaps (c_l^2 spans ~16 decades at
    L = 20) does not poison the factorization; what remains of the
    condition number measures genuine mode overlap.  The scaled system is
    solved by Cholesky with tenfold jitter escalation (1e-14 to 1e-8),
    accepting the entry once two consecutive levels agree to 1e-3.

    Unresolved spectra (T below 1/gap) produce valid but numerically
    singular matrices whose inverse entries are real and enormous.  For
    those the jitter ladder never stabilizes and the entry is computed
    from the eigendecomposition with eigenvalues floored at 1e-12 of the
    largest.  Flooring dominates the true matrix in the positive
    semidefinite order, so the returned entry understates the true
    (full^-1)[pos, pos]: it stays a correct variance lower bound, merely
    capped at condition 1e12.  SingularFim is reserved for matrices that
    are not valid information matrices at all (nonpositive diagonal,
    nonfinite entries, indefiniteness beyond roundoff).
    """
    d = np.diag(full).copy()
    if not (np.all(np.isfinite(d)) and np.all(d > 0.0)):
        raise SingularFim("Fisher matrix diagonal is not positive")
    rd = 1.0 / np.sqrt(d)
    scaled = full * np.outer(rd, rd)
    rhs = np.zeros(full.shape[0])
    rhs[pos] = 1.0
    jitters = [0.0] + [1e-14 * 10.0**k for k in range(7)]
    values = []
    for jit in jitters:
        try:
            factor = cho_factor(
                scaled + jit * np.eye(scaled.shape[0]), lower=True
            )
            x = cho_solve(factor, rhs)[pos] * rd[pos] ** 2
        except np.linalg.LinAlgError:
            values.append(None)
            continue
        values.append(x if np.isfinite(x) and x > 0.0 else None)
    for a, b in zip(values, values[1:]):
        if a is not None and b is not None and abs(a - b) <= 1e-3 * abs(a):
            return float(a)

    lam, vec = np.linalg.eigh(scaled)
    if not np.all(np.isfinite(lam)) or lam[-1] <= 0.0:
        raise SingularFim("Fisher matrix is not positive semidefinite")
    if lam[0] < -1e-8 * lam[-1]:
        cond = float(lam[-1] / abs(lam[0]))
        raise SingularFim(
            "Fisher matrix is indefinite beyond roundoff", condition=cond
        )
    floored = np.maximum(lam, lam[-1] / _COND_CAP)
    entry = float(np.sum(vec[pos] ** 2 / floored)) * rd[pos] ** 2
    return entry


def crlb_full(fim, label=0):
    """Variance lower bound (I^-1)_{ii} from the full block matrix."""
    pos = fim.index_of(label)
    return _inverse_entry(fim.full(), pos, fim.L)


def crlb_diag(fim, label=0):
    """Diagonal surrogate 1/I_{ii}; never below the full bound."""
    pos = fim.index_of(label)
    entry = fim.theta_theta[pos, pos]
    if entry <= 0.0:
        raise SingularFim("diagonal Fisher entry is not positive")
    return float(1.0 / entry)


def diag_ratio(fim, label=0):
    """I_{ii} (I^-1)_{ii} >= 1; how much the diagonal shortcut understates."""
    pos = fim.index_of(label)
    return float(fim.theta_theta[pos, pos]) * crlb_full(fim, label)


def cost_product_bound(spectrum, kind, T, N_t, N_s, label=0):
    """Lower bound on T * t_total for unit MSE: gamma / g_i.

    Divide by a target MSE to get the cost floor at that accuracy.
    QFT-QPE enters with gamma = 1 (its cost is exactly N_s T).
    """
    kind = ProtocolKind(kind)
    if kind == ProtocolKind.QFT_QPE:
        gam = 1.0
    elif kind == ProtocolKind.RPE:
        raise NoLinearCostForm("RPE has no linear cost form; use rpe_fim_bounds")
    else:
        gam = gamma(kind, T, N_t)
    return gam / g_i(spectrum, kind, T, N_t, N_s, label)


def rpe_fim_bounds(spectrum, T, N_s, label=0):
    """Envelope for the RPE diagonal information of mode i.

    The lower value N_s c_i^2 (4T^2 - 1)/3 is a hard floor (the gain
    factor is >= 1 at every time).  The upper value multiplies it by
    f_i_max, the aligned-time gain; both coincide with the exact entry
    when L = 1, where the gain factor is identically 2.
    """
    T = _require_power_of_two(T)
    c_i = spectrum.overlap(label)
    if c_i == 0.0:
        return 0.0, 0.0
    lo = N_s * c_i**2 * (4.0 * T**2 - 1.0) / 3.0
    return float(lo), float(lo * f_i_max(spectrum, label))
