"""Entanglement and correlation measures with closed-form series primaries.

The partial-transpose spectrum, logarithmic negativity, entropies, and
mutual information are all geometric-type series in q = tanh^2 r.  Two
evaluation routes are used:

* direct chunked summation while the required term count stays moderate
  (r up to ~5.3), and
* an Euler-Maclaurin integral approximation of the sums for larger r,
  where the weight spreads over ~cosh^2 r Fock levels and direct summation
  would need billions of terms.  The two routes agree to ~1e-10 in their
  overlap.

A useful exact rearrangement: the block traces of the partial transpose
telescope to 1, so the trace norm is 1 + D with
D = sum_n w_n (sqrt(T_n^2 + B) - T_n) >= 0, T_n = n/sinh^2 r + q,
B = 4/cosh^2 r.  The log-negativity log2(1 + D) is then cancellation-free
and manifestly nonnegative.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from ._kernels import get_series_impl
from .states import BipartiteState, FockTruncation, Representation, _as_r, _geometric_weights

_LN2 = math.log(2.0)
_CHUNK = 262_144
_DIRECT_NMAX = 700_000
_SERIES_TOL = 1e-15
_EM_XMAX = 60.0
_EM_PANELS = 60
_EM_NODES = 20


@dataclass(frozen=True)
class PptSpectrum:
    """Ground eigenvalue and the (lambda+, lambda-) pairs of the PT blocks."""

    lambda0: float
    pairs: np.ndarray  # shape (n_max, 2)
    r: float

    def all_values(self) -> np.ndarray:
        return np.concatenate(([self.lambda0], self.pairs.ravel()))

    def trace_norm(self) -> float:
        return float(np.abs(self.all_values()).sum())


@dataclass(frozen=True)
class EntanglementReport:
    r: float
    neg_log: float
    negativity: float
    s_a: float
    s_d: float
    s_ad: float
    mutual_info: float
    n_max_used: int
    tail_bound: float


# ---------------------------------------------------------------------------
# closed-form PT spectrum and its dense oracle
# ---------------------------------------------------------------------------

def _pt_block_entries(r: float, n_max: int):
    """(a_n, g_n, c_n) of the 2x2 PT blocks on {|1,n>, |0,n+1>}, n = 0..n_max-1."""
    w = _geometric_weights(r, n_max)
    n = np.arange(n_max, dtype=float)
    gam = np.sqrt(n + 1.0) / math.cosh(r)
    a = np.concatenate(([0.0], w[:-1] * gam[:-1] ** 2))
    c = w * math.tanh(r) ** 2
    g = w * gam
    return w, a, g, c


def ppt_spectrum_closed_form(r, trunc: Optional[FockTruncation] = None) -> PptSpectrum:
    """Eigenvalues of the partial transpose, in pairs per 2x2 block.

    Equivalent to lambda_+/-^(n) = tanh^{2n} r/(4 cosh^2 r) *
    (n/sinh^2 r + tanh^2 r +/- sqrt(Z_n)), evaluated in a form that stays
    finite through r -> 0.
    """
    r = _as_r(r)
    if trunc is None:
        trunc = FockTruncation.auto(r)
    trunc.check()
    w, a, g, c = _pt_block_entries(r, trunc.n_max)
    mean = 0.5 * (a + c)
    disc = np.sqrt((0.5 * (a - c)) ** 2 + g ** 2)
    pairs = np.stack([mean + disc, mean - disc], axis=1)
    return PptSpectrum(float(w[0]), pairs, r)


def ppt_spectrum_oracle(state: BipartiteState) -> np.ndarray:
    """Sorted eigenvalues of the assembled dense partial transpose."""
    if state.representation is not Representation.RHO_AD_PT:
        raise ValueError("ppt_spectrum_oracle expects the partial-transpose representation")
    return np.sort(np.linalg.eigvalsh(state.to_dense()))


# ---------------------------------------------------------------------------
# full-series engine
# ---------------------------------------------------------------------------

def _n_for_series(q: float, c2: float, tol: float) -> int:
    n = max(8, int(math.ceil(math.log(tol) / math.log(q))))
    for _ in range(4):
        n = int(math.ceil((math.log(tol) - math.log1p(n / (2.0 * c2))) / math.log(q)))
    return n + 64


def _direct_measures(r: float) -> dict:
    q = math.tanh(r) ** 2
    c2 = math.cosh(r) ** 2
    s2 = math.sinh(r) ** 2
    lnq = math.log(q)
    n_used = _n_for_series(q, c2, _SERIES_TOL)
    neg_chunk, entropy_chunk, mutinfo_chunk = get_series_impl()
    d_sum = 0.0
    s_ad = 0.0
    s_d = 0.0
    mi_sum = 0.0
    for n0 in range(0, n_used, _CHUNK):
        n1 = min(n0 + _CHUNK, n_used)
        d_sum += neg_chunk(lnq, c2, s2, n0, n1)
        ad, d = entropy_chunk(lnq, c2, s2, n0, n1)
        s_ad += ad
        s_d += d
        mi_sum += mutinfo_chunk(lnq, c2, s2, n0, n1)
    tail = math.exp(n_used * lnq) * (1.0 + n_used / (2.0 * c2))
    return {
        "neg_log": math.log1p(d_sum) / _LN2,
        "negativity": 0.5 * d_sum,
        "s_d": s_d,
        "s_ad": s_ad,
        "mutual_info": 1.0 - 0.5 * math.log2(q) - mi_sum,
        "n_max_used": n_used,
        "tail_bound": tail,
    }


def _em_measures(r: float) -> dict:
    """Euler-Maclaurin route: sum phi(n) ~ int phi + phi(0)/2 - phi'(0)/12.

    The summands vary on the scale cosh^2 r >> 1, so the correction series
    converges extremely fast; the reported tail_bound is a finite-difference
    estimate of the first neglected correction.
    """
    q = math.tanh(r) ** 2
    c2 = math.cosh(r) ** 2
    s2 = math.sinh(r) ** 2
    lnq = math.log(q)
    B = 4.0 / c2

    def w(t):
        return np.exp(t * lnq) / (2.0 * c2)

    def phi_neg(t):
        T = t / s2 + q
        return w(t) * (np.sqrt(T * T + B) - T)

    def phi_ad(t):
        p = w(t) * (1.0 + (t + 1.0) / c2)
        return -p * np.log2(p)

    def phi_d(t):
        p = w(t) * (1.0 + t / s2)
        return -p * np.log2(p)

    def phi_mi(t):
        e = 1.0 + t / s2
        c = 1.0 + (t + 1.0) / c2
        return w(t) * (e * np.log(e) - c * np.log(c)) / _LN2

    xs, ws = leggauss(_EM_NODES)
    edges = np.linspace(0.0, _EM_XMAX, _EM_PANELS + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    t_nodes = c2 * (mid[:, None] + half[:, None] * xs[None, :])
    t_weights = c2 * half[:, None] * ws[None, :]

    def em_sum(phi, dphi0):
        integral = float((t_weights * phi(t_nodes)).sum())
        return integral + 0.5 * float(phi(np.array([0.0]))[0]) - dphi0 / 12.0

    w0 = 1.0 / (2.0 * c2)
    dw0 = lnq * w0
    # phi_neg'(0)
    T0 = q
    root0 = math.sqrt(T0 * T0 + B)
    d_neg = dw0 * (root0 - T0) + w0 * (1.0 / s2) * (T0 / root0 - 1.0)
    # phi_ad'(0), phi_d'(0)
    p_ad0 = w0 * (1.0 + 1.0 / c2)
    dp_ad0 = dw0 * (1.0 + 1.0 / c2) + w0 / c2
    d_ad = -dp_ad0 * (math.log2(p_ad0) + 1.0 / _LN2)
    dp_d0 = dw0 + w0 / s2
    d_d = -dp_d0 * (math.log2(w0) + 1.0 / _LN2)
    # phi_mi'(0): e(0) = 1, c(0) = 1 + 1/c2
    c0 = 1.0 + 1.0 / c2
    d_mi = dw0 * (-c0 * math.log(c0)) / _LN2 + w0 * (
        (1.0 / s2) * 1.0 - (1.0 / c2) * (math.log(c0) + 1.0)
    ) / _LN2

    d_sum = em_sum(phi_neg, d_neg)
    s_ad = em_sum(phi_ad, d_ad)
    s_d = em_sum(phi_d, d_d)
    mi_sum = em_sum(phi_mi, d_mi)

    # first neglected EM correction, phi'''(0)/720, as the error proxy
    probe = phi_d(np.array([0.0, 1.0, 2.0, 3.0]))
    err = abs(probe[3] - 3.0 * probe[2] + 3.0 * probe[1] - probe[0]) / 720.0

    return {
        "neg_log": math.log1p(d_sum) / _LN2,
        "negativity": 0.5 * d_sum,
        "s_d": s_d,
        "s_ad": s_ad,
        "mutual_info": 1.0 - 0.5 * math.log2(q) - mi_sum,
        "n_max_used": 0,
        "tail_bound": float(err),
    }


def _measures_full(r: float) -> dict:
    """All measures from the untruncated series (analytic-limit branch at 0)."""
    r = _as_r(r)
    if r == 0.0:
        return {
            "neg_log": 1.0,
            "negativity": 0.5,
            "s_d": 1.0,
            "s_ad": 0.0,
            "mutual_info": 2.0,
            "n_max_used": 1,
            "tail_bound": 0.0,
        }
    q = math.tanh(r) ** 2
    c2 = math.cosh(r) ** 2
    if _n_for_series(q, c2, _SERIES_TOL) <= _DIRECT_NMAX:
        return _direct_measures(r)
    return _em_measures(r)


# ---------------------------------------------------------------------------
# public measures
# ---------------------------------------------------------------------------

def log_negativity(r, trunc: Optional[FockTruncation] = None) -> float:
    """log2 of the PT trace norm; 1 at r = 0, monotonically to 0 as r grows.

    With an explicit truncation the value is computed from exactly the
    truncated block spectrum (so it matches the dense oracle); otherwise the
    full series is used.
    """
    r = _as_r(r)
    if r == 0.0:
        return 1.0
    if trunc is not None:
        return math.log2(ppt_spectrum_closed_form(r, trunc).trace_norm())
    return _measures_full(r)["neg_log"]


def negativity(r, trunc: Optional[FockTruncation] = None) -> float:
    """Ordinary negativity N = (||rho^T||_1 - 1)/2; log-neg = log2(2N + 1)."""
    r = _as_r(r)
    if r == 0.0:
        return 0.5
    if trunc is not None:
        return 0.5 * (ppt_spectrum_closed_form(r, trunc).trace_norm() - 1.0)
    return _measures_full(r)["negativity"]


def entropies(r, trunc: Optional[FockTruncation] = None) -> Tuple[float, float, float]:
    """Base-2 von Neumann entropies (S_A, S_D, S_AD); S_A = 1 exactly."""
    r = _as_r(r)
    if r == 0.0:
        return 1.0, 1.0, 0.0
    if trunc is not None:
        trunc.check()
        w = _geometric_weights(r, trunc.n_max)
        n = np.arange(trunc.n_max, dtype=float)
        gam2 = (n + 1.0) / math.cosh(r) ** 2
        wa = w * (1.0 + gam2)
        wd = w + np.concatenate(([0.0], (w * gam2)[:-1]))
        s_ad = float(-(wa[wa > 0] * np.log2(wa[wa > 0])).sum())
        s_d = float(-(wd[wd > 0] * np.log2(wd[wd > 0])).sum())
        return 1.0, s_d, s_ad
    m = _measures_full(r)
    return 1.0, m["s_d"], m["s_ad"]


def mutual_information(r, trunc: Optional[FockTruncation] = None) -> float:
    """I = S_A + S_D - S_AD via the explicit series; in [1, 2], 2 at r = 0."""
    r = _as_r(r)
    if r == 0.0:
        return 2.0
    if trunc is not None:
        trunc.check()
        q = math.tanh(r) ** 2
        s2 = math.sinh(r) ** 2
        c2 = math.cosh(r) ** 2
        w = _geometric_weights(r, trunc.n_max)
        n = np.arange(trunc.n_max, dtype=float)
        e = 1.0 + n / s2
        c = 1.0 + (n + 1.0) / c2
        series = float((w * (e * np.log(e) - c * np.log(c))).sum() / _LN2)
        return 1.0 - 0.5 * math.log2(q) - series
    return _measures_full(r)["mutual_info"]


def report_for(r) -> EntanglementReport:
    """Full-series EntanglementReport at a single r."""
    r = _as_r(r)
    m = _measures_full(r)
    return EntanglementReport(
        r=r,
        neg_log=m["neg_log"],
        negativity=m["negativity"],
        s_a=1.0,
        s_d=m["s_d"],
        s_ad=m["s_ad"],
        mutual_info=m["mutual_info"],
        n_max_used=m["n_max_used"],
        tail_bound=m["tail_bound"],
    )


def r_from_lifetime(lifetime: float, omega: float) -> float:
    """Squeezing parameter of a diamond observer with the given lifetime."""
    if not (lifetime > 0 and omega > 0):
        raise ValueError("lifetime and omega must be positive (zero lifetime gives r = infinity)")
    omega_hat = omega * lifetime / 2.0
    return math.atanh(math.exp(-math.pi * omega_hat / 2.0))


def sweep(
    r_values=None,
    lifetimes=None,
    omega: Optional[float] = None,
) -> Tuple[List[Optional[EntanglementReport]], Dict[int, str]]:
    """Reports over a grid of r (or lifetimes at fixed omega).

    Per-point failures are collected in the error dict (index -> message)
    instead of aborting the sweep; failed slots hold None.  Result order
    follows input order; DIAMOND_NUM_THREADS > 1 parallelizes evaluation.
    """
    if (r_values is None) == (lifetimes is None):
        raise ValueError("provide exactly one of r_values or lifetimes")
    if lifetimes is not None:
        if omega is None:
            raise ValueError("lifetime grids need omega")
        grid = [r_from_lifetime(lt, omega) for lt in lifetimes]
    else:
        grid = [float(r) for r in r_values]
    if not grid:
        raise ValueError("empty grid")

    def one(idx_r):
        idx, r = idx_r
        try:
            return idx, report_for(r), None
        except Exception as exc:  # noqa: BLE001 - per-point failures are data
            return idx, None, f"{type(exc).__name__}: {exc}"

    workers = int(os.environ.get("DIAMOND_NUM_THREADS", "1") or "1")
    items = list(enumerate(grid))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, items))
    else:
        results = [one(it) for it in items]
    reports: List[Optional[EntanglementReport]] = [None] * len(grid)
    errors: Dict[int, str] = {}
    for idx, rep, err in results:
        reports[idx] = rep
        if err is not None:
            errors[idx] = err
    return reports, errors


def figure_grid(step: float = 0.05, r_max: float = 5.0) -> List[float]:
    """The r grid used for the degradation curves."""
    count = int(round(r_max / step)) + 1
    return [i * step for i in range(count)]
