"""Gaussian-state information calculus and CV-QKD key rates.

Covariance matrices are 2n x 2n real symmetric arrays over quadratures
ordered (x_1, p_1, x_2, p_2, ...), in shot-noise units where the vacuum
is the identity. Physicality is CM + i*Omega >= 0, equivalently every
symplectic eigenvalue >= 1.

Protocol: Gaussian coherent-state modulation of variance v_a (carried
in the entanglement-based picture by a two-mode squeezed vacuum of
quadrature variance V = v_a + 1), homodyne detection by the receiver,
reverse reconciliation, asymptotic regime, collective Gaussian attacks.
The physical link acts on the travelling mode as the kappa-dependent
amplifier followed by receiver loss eta; the amplifier idler mode and
the loss environment mode are tracked explicitly, so both eavesdropper
conventions are available:

    trusted_amplifier  (default)  Eve holds only the loss environment.
        The amplification noise is relativistic thermalization seen by
        the accelerated detector, not an interception channel: nothing
        escapes to an adversary at unit detector efficiency, so
        chi_BE(eta=1) = 0 and the rate stays positive at every kappa.
    purified_all                  Eve additionally purifies the
        amplifier idler. Strictly more pessimistic; at eta = 1 the key
        rate then dies for all kappa <= ln 2 regardless of modulation.

Entropies come from symplectic spectra via g(x) = (x+1)log2(x+1)
- x*log2(x), x = (nu-1)/2; conditioning on a homodyne outcome is the
usual Schur complement with a generalized inverse on the measured
quadrature (rank tolerance 1e-10).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel_analytic import gain_from_kappa

__all__ = [
    "omega_matrix",
    "tmsv",
    "two_mode_squeeze_symplectic",
    "beamsplitter_symplectic",
    "apply_channel",
    "channel_with_environment",
    "reduce_modes",
    "condition_on_homodyne",
    "symplectic_eigenvalues",
    "entropy_g",
    "cm_entropy",
    "KeyRateResult",
    "key_rate",
    "optimize_modulation",
    "threshold_kappa",
]

_RANK_TOL = 1e-10
_PHYS_TOL = 1e-9


def omega_matrix(n_modes: int) -> np.ndarray:
    """Symplectic form, block-diagonal [[0, 1], [-1, 0]] per mode."""
    block = np.array([[0.0, 1.0], [-1.0, 0.0]])
    out = np.zeros((2 * n_modes, 2 * n_modes))
    for m in range(n_modes):
        out[2 * m : 2 * m + 2, 2 * m : 2 * m + 2] = block
    return out


def tmsv(V: float) -> np.ndarray:
    """Two-mode squeezed vacuum with quadrature variance V >= 1 per mode."""
    if not V >= 1.0:
        raise ValueError(f"TMSV variance must be >= 1, got {V}")
    c = math.sqrt(V * V - 1.0)
    eye = np.eye(2)
    z = np.diag([1.0, -1.0])
    return np.block([[V * eye, c * z], [c * z, V * eye]])


def two_mode_squeeze_symplectic(G: float) -> np.ndarray:
    """Symplectic of a phase-insensitive amplifier of gain G with its idler."""
    if not G >= 1.0:
        raise ValueError(f"amplifier gain must be >= 1, got {G}")
    eye = np.eye(2)
    z = np.diag([1.0, -1.0])
    c, s = math.sqrt(G), math.sqrt(G - 1.0)
    return np.block([[c * eye, s * z], [s * z, c * eye]])


def beamsplitter_symplectic(eta: float) -> np.ndarray:
    """Symplectic of a transmissivity-eta beamsplitter on two modes."""
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"transmissivity must lie in (0, 1], got {eta}")
    eye = np.eye(2)
    t, r = math.sqrt(eta), math.sqrt(1.0 - eta)
    return np.block([[t * eye, r * eye], [-r * eye, t * eye]])


def _embed(symp: np.ndarray, modes: tuple[int, ...], n_modes: int) -> np.ndarray:
    """Embed a symplectic acting on ``modes`` into an n-mode identity."""
    out = np.eye(2 * n_modes)
    idx = np.concatenate([[2 * m, 2 * m + 1] for m in modes])
    out[np.ix_(idx, idx)] = symp
    return out


def apply_channel(cm: np.ndarray, mode_index: int, G: float, eta: float) -> np.ndarray:
    """Amplifier (gain G, vacuum idler) then loss eta on one mode of a CM.

    Diagonal block of the mode maps to eta*G*block + (eta*(G-1) + 1 -
    eta)*I; every cross block scales by sqrt(eta*G). Environment modes
    are traced out; use channel_with_environment to keep them.
    """
    if not G >= 1.0:
        raise ValueError(f"amplifier gain must be >= 1, got {G}")
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"transmissivity must lie in (0, 1], got {eta}")
    cm = np.asarray(cm, dtype=float)
    n = cm.shape[0] // 2
    out = cm.copy()
    i = slice(2 * mode_index, 2 * mode_index + 2)
    scale = math.sqrt(eta * G)
    for m in range(n):
        j = slice(2 * m, 2 * m + 2)
        if m == mode_index:
            continue
        out[i, j] = scale * cm[i, j]
        out[j, i] = scale * cm[j, i]
    out[i, i] = eta * G * cm[i, i] + (eta * (G - 1.0) + 1.0 - eta) * np.eye(2)
    return out


def channel_with_environment(cm: np.ndarray, mode_index: int, G: float, eta: float) -> np.ndarray:
    """Same channel, keeping idler and loss environment as new modes.

    Appends the amplifier idler then the loss environment (both vacuum
    inputs) after the existing modes and returns the full output CM, so
    eavesdropper reductions can be taken explicitly.
    """
    cm = np.asarray(cm, dtype=float)
    n = cm.shape[0] // 2
    big = np.eye(2 * (n + 2))
    big[: 2 * n, : 2 * n] = cm
    idler, env = n, n + 1
    s_amp = _embed(two_mode_squeeze_symplectic(G), (mode_index, idler), n + 2)
    s_loss = _embed(beamsplitter_symplectic(eta), (mode_index, env), n + 2)
    s_total = s_loss @ s_amp
    return s_total @ big @ s_total.T


def reduce_modes(cm: np.ndarray, keep: list[int]) -> np.ndarray:
    """Partial trace down to the listed modes, in the order given."""
    idx = np.concatenate([[2 * m, 2 * m + 1] for m in keep])
    return np.asarray(cm, dtype=float)[np.ix_(idx, idx)]


def condition_on_homodyne(cm: np.ndarray, mode_index: int, quadrature: str = "x") -> np.ndarray:
    """CM of the remaining modes after a homodyne outcome on one mode.

    Schur complement against the measured quadrature only; the
    generalized inverse (rank tolerance 1e-10) handles the rank-one
    projection. Gaussian conditioning is outcome-independent, so no
    outcome value is needed.
    """
    cm = np.asarray(cm, dtype=float)
    n = cm.shape[0] // 2
    if quadrature not in ("x", "p"):
        raise ValueError(f"quadrature must be 'x' or 'p', got {quadrature!r}")
    b = [2 * mode_index, 2 * mode_index + 1]
    rest = [i for i in range(2 * n) if i not in b]
    proj = np.diag([1.0, 0.0]) if quadrature == "x" else np.diag([0.0, 1.0])
    sigma_b = proj @ cm[np.ix_(b, b)] @ proj
    cross = cm[np.ix_(rest, b)] @ proj
    return cm[np.ix_(rest, rest)] - cross @ np.linalg.pinv(sigma_b, rcond=_RANK_TOL) @ cross.T


def symplectic_eigenvalues(cm: np.ndarray, check: bool = True) -> np.ndarray:
    """Symplectic spectrum: moduli of eig(i*Omega*CM), one per pair,
    sorted descending. With ``check`` a spectrum below 1 - 1e-9 raises."""
    cm = np.asarray(cm, dtype=float)
    n = cm.shape[0] // 2
    vals = np.linalg.eigvals(1j * omega_matrix(n) @ cm)
    mods = np.sort(np.abs(vals))[::-1]
    nu = mods[::2]
    if check and np.any(nu < 1.0 - _PHYS_TOL):
        raise ValueError(
            f"covariance matrix is unphysical: symplectic eigenvalues {nu}"
        )
    return nu


def entropy_g(x: float) -> float:
    """Gaussian mode entropy g(x) = (x+1)log2(x+1) - x log2 x in bits.

    Continuous at 0; tiny negative x from eigenvalue roundoff clamps
    to 0.
    """
    if x <= 0.0:
        return 0.0
    return (x + 1.0) * math.log2(x + 1.0) - x * math.log2(x)


def cm_entropy(cm: np.ndarray) -> float:
    """Von Neumann entropy in bits of the Gaussian state with this CM."""
    return float(sum(entropy_g((nu - 1.0) / 2.0) for nu in symplectic_eigenvalues(cm)))


@dataclass(frozen=True)
class KeyRateResult:
    """Information quantities for one link configuration (bits/use)."""

    i_ab: float
    chi_be: float
    key_rate: float
    v_a_used: float
    optimizer_iterations: int = 0
    flags: tuple[str, ...] = ()


_ATTACKS = ("trusted_amplifier", "purified_all")


def key_rate(
    kappa: float,
    eta: float,
    v_a: float,
    beta_rec: float = 1.0,
    detection: str = "homodyne",
    attack: str = "trusted_amplifier",
) -> KeyRateResult:
    """Asymptotic secret key rate K = max(0, beta_rec*I_AB - chi_BE).

    Builds the entanglement-based state, pushes the travelling mode
    through the amplifier+loss dilation, and evaluates mutual
    information (bits) and the Holevo bound against the selected
    eavesdropper convention. kappa = +inf gives the identity channel.
    """
    if not kappa > 0:
        raise ValueError(f"channel parameter kappa must be positive, got {kappa}")
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"transmissivity eta must lie in (0, 1], got {eta}")
    if not v_a > 0:
        raise ValueError(f"modulation variance must be positive, got {v_a}")
    if not 0.0 < beta_rec <= 1.0:
        raise ValueError(f"reconciliation efficiency must lie in (0, 1], got {beta_rec}")
    if detection != "homodyne":
        raise ValueError(f"only homodyne detection is supported, got {detection!r}")
    if attack not in _ATTACKS:
        raise ValueError(f"attack must be one of {_ATTACKS}, got {attack!r}")

    G = gain_from_kappa(kappa)
    V = v_a + 1.0
    # modes: A=0, B=1, idler F=2, loss environment E=3
    full = channel_with_environment(tmsv(V), 1, G, eta)
    sigma_ab = reduce_modes(full, [0, 1])

    v_bx = sigma_ab[2, 2]
    # receiver variance conditioned on the sender's (heterodyne) data
    sigma_a = sigma_ab[:2, :2]
    cross = sigma_ab[2:, :2]
    cond_b = sigma_ab[2:, 2:] - cross @ np.linalg.inv(sigma_a + np.eye(2)) @ cross.T
    v_bx_given_a = cond_b[0, 0]
    i_ab = 0.5 * math.log2(v_bx / v_bx_given_a)

    if attack == "trusted_amplifier":
        eve_modes = [3]
    else:
        eve_modes = [2, 3]
    s_eve = cm_entropy(reduce_modes(full, eve_modes))
    conditioned = condition_on_homodyne(full, 1, "x")
    # mode indices shift down past the measured mode
    eve_after = [m - 1 if m > 1 else m for m in eve_modes]
    s_eve_given_b = cm_entropy(conditioned[np.ix_(
        np.concatenate([[2 * m, 2 * m + 1] for m in eve_after]),
        np.concatenate([[2 * m, 2 * m + 1] for m in eve_after]),
    )])
    chi_be = s_eve - s_eve_given_b

    k = max(0.0, beta_rec * i_ab - chi_be)
    return KeyRateResult(i_ab=i_ab, chi_be=chi_be, key_rate=k, v_a_used=v_a)


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def optimize_modulation(
    kappa: float,
    eta: float,
    beta_rec: float = 1.0,
    detection: str = "homodyne",
    attack: str = "trusted_amplifier",
    v_a_bounds: tuple[float, float] = (1e-3, 1e3),
    rel_tol: float = 1e-4,
) -> tuple[float, KeyRateResult]:
    """Golden-section maximization of the key rate over the modulation.

    Searches log-spaced v_a in ``v_a_bounds`` to a relative tolerance of
    1e-4. The search runs on the unclamped objective beta*I - chi: the
    clamped rate is flat wherever it is zero, and a flat stretch feeds
    golden section ties that can walk the bracket away from a positive
    sliver near a bound. A maximizer pinned at either bound is flagged
    'boundary' (the identity channel has no interior optimum); a
    landscape that never rises above zero returns K = 0 with v_a marked
    undefined (NaN) and the flag 'no_positive_rate'.
    """

    def rate(x: float) -> float:
        result = key_rate(kappa, eta, 10.0**x, beta_rec, detection, attack)
        return beta_rec * result.i_ab - result.chi_be

    lo, hi = (math.log10(v_a_bounds[0]), math.log10(v_a_bounds[1]))
    x_tol = math.log10(1.0 + rel_tol)
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = rate(c), rate(d)
    iterations = 2
    while (b - a) > x_tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = rate(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = rate(d)
        iterations += 1

    x_best = c if fc >= fd else d
    k_best = max(fc, fd)
    flags: list[str] = []
    if k_best <= 0.0:
        result = key_rate(kappa, eta, 10.0**x_best, beta_rec, detection, attack)
        return (
            math.nan,
            KeyRateResult(
                i_ab=result.i_ab,
                chi_be=result.chi_be,
                key_rate=0.0,
                v_a_used=math.nan,
                optimizer_iterations=iterations,
                flags=("no_positive_rate",),
            ),
        )
    if x_best >= hi - 2.0 * x_tol:
        flags.append("boundary")
    if x_best <= lo + 2.0 * x_tol:
        flags.append("boundary")
    v_a_best = 10.0**x_best
    result = key_rate(kappa, eta, v_a_best, beta_rec, detection, attack)
    result = KeyRateResult(
        i_ab=result.i_ab,
        chi_be=result.chi_be,
        key_rate=result.key_rate,
        v_a_used=v_a_best,
        optimizer_iterations=iterations,
        flags=tuple(flags),
    )
    return v_a_best, result


def threshold_kappa(
    eta: float,
    beta_rec: float = 1.0,
    detection: str = "homodyne",
    attack: str = "trusted_amplifier",
    rel_tol: float = 1e-6,
) -> float:
    """Smallest kappa with positive optimized key rate, by bisection.

    Returns 0.0 when the rate is already positive at arbitrarily early
    emission (no finite threshold), as happens for a lossless trusted
    receiver. Monotone non-increasing in eta.
    """

    def positive(kappa: float) -> bool:
        return optimize_modulation(kappa, eta, beta_rec, detection, attack)[1].key_rate > 0.0

    lo = 1e-6
    if positive(lo):
        return 0.0
    hi = 1.0
    while not positive(hi):
        hi *= 2.0
        if hi > 1e6:
            raise RuntimeError(
                f"no positive key rate found up to kappa = {hi}; "
                f"eta={eta}, beta_rec={beta_rec}, attack={attack}"
            )
    while (hi - lo) > rel_tol * hi:
        mid = 0.5 * (lo + hi)
        if positive(mid):
            hi = mid
        else:
            lo = mid
    return hi
