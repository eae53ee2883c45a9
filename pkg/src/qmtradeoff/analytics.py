"""Closed-form tradeoff quantities for single-qubit measurements.

All quantities are functions of the strength ratio ``lam`` (smaller over
larger singular value of the operator) and, for the fidelity, of two angles
of the left unitary factor. Conventions:

* information gain is measured in bits and quantifies how much the outcome
  sharpens an initially uniform Bloch-sphere prior;
* fidelity is the posterior-averaged squared overlap between pre- and
  post-measurement states;
* reversibility is the worst-case success probability with which the
  pre-measurement state can be recovered exactly by a second measurement.

A projective measurement (``lam = 0``) extracts the most information
(1 - 1/(2 ln 2) ~ 0.2787 bits) and is unrecoverable; the identity limit
(``lam = 1``) extracts nothing and is reversible with certainty.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, IncompleteSetError
from .linalg import su2_params
from .measurement import MeasurementOperator, MeasurementSet

LN2 = math.log(2.0)

#: Information gain of a projective measurement, in bits: 1 - 1/(2 ln 2).
INFO_AT_ZERO = 1.0 - 1.0 / (2.0 * LN2)

#: Fidelity-efficiency endpoints: 3*(1 - 1/(2 ln 2)) at lam=0, 1/ln 2 at lam=1.
EFF_FIDELITY_AT_ZERO = 3.0 * INFO_AT_ZERO
EFF_FIDELITY_AT_ONE = 1.0 / LN2

# Taylor coefficients of the information gain about lam = 1, in powers of
# x = 1 - lam, derived symbolically and frozen. The expansion starts at x^2:
#   I(1-x) = [x^2/6 + x^3/6 + 7x^4/120 - x^5/20 - 2x^6/21 - 13x^7/168
#             - 629x^8/20160] / ln 2 + O(x^9)
_INFO_SERIES = (
    1.0 / 6.0,
    1.0 / 6.0,
    7.0 / 120.0,
    -1.0 / 20.0,
    -2.0 / 21.0,
    -13.0 / 168.0,
    -629.0 / 20160.0,
)

#: Strength ratios above this use the series branch of the information gain.
INFO_SERIES_SEAM = 1.0 - 1e-4

#: Strength ratios above this use the series branch of the fidelity efficiency.
#: The direct quotient loses its last ~6 digits already near lam ~ 0.999
#: (the numerator's cancellation floor is divided by (1-lam)^2), so this seam
#: sits where both branches still agree to ~3e-12.
EFF_SERIES_SEAM = 1.0 - 1e-2

#: Below this the information gain is indistinguishable from its lam=0 value
#: in double precision (the correction is O(lam^2 / ln 2) < 1e-18).
_INFO_SMALL_LAM = 1e-9


def _check_lam(lam: float) -> float:
    if not (isinstance(lam, (int, float)) and math.isfinite(lam)):
        raise DomainError(f"lam must be a finite number, got {lam!r}")
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"lam must lie in [0, 1], got {lam}")
    return float(lam)


def _info_series(x: float) -> float:
    # Horner evaluation of sum_k c_k x^(k+2) / ln 2.
    acc = 0.0
    for c in reversed(_INFO_SERIES):
        acc = acc * x + c
    return acc * x * x / LN2


def _info_direct(lam: float) -> float:
    # Loses accuracy near lam = 1 (catastrophic cancellation); callers must
    # switch to _info_series beyond INFO_SERIES_SEAM.
    lam2 = lam * lam
    lam4 = lam2 * lam2
    return (
        1.0
        - 1.0 / (2.0 * LN2)
        - lam4 / (1.0 - lam4) * math.log2(lam2)
        - math.log2(1.0 + lam2)
    )


def information_gain(lam: float) -> float:
    """Mean information gain, in bits, of an outcome with strength ratio ``lam``.

    Strictly decreasing on [0, 1], from 1 - 1/(2 ln 2) down to 0.

    Notes
    -----
    The closed form::

        1 - 1/(2 ln 2) - lam^4/(1 - lam^4) * log2(lam^2) - log2(1 + lam^2)

    cancels to O((1-lam)^2) near lam = 1, so for ``lam > INFO_SERIES_SEAM``
    the value comes from the frozen Taylor series about 1 instead; the two
    branches agree to ~3e-13 at the seam.
    """
    lam = _check_lam(lam)
    if lam < _INFO_SMALL_LAM:
        return INFO_AT_ZERO
    if lam > INFO_SERIES_SEAM:
        return _info_series(1.0 - lam)
    return _info_direct(lam)


def optimal_fidelity(lam: float) -> float:
    """Largest achievable mean fidelity at strength ratio ``lam``.

    ``(2/3) * (1 + lam / (1 + lam^2))``, attained when the left unitary
    factor is trivial. Strictly increasing from 2/3 to 1.
    """
    lam = _check_lam(lam)
    return (2.0 / 3.0) * (1.0 + lam / (1.0 + lam * lam))


def fidelity_closed(lam: float, beta: float, gamma: float) -> float:
    """Mean fidelity of an outcome with strength ratio ``lam`` and left
    unitary angles ``beta``, ``gamma`` (see :class:`~qmtradeoff.linalg.Su2Params`).

    ::

        F = 1/3 + (1/3) * [1 + 2 lam/(1+lam^2) * cos(2 beta)] * cos^2(gamma)

    Bounded between 1/3 (reached whenever cos(gamma) = 0, e.g. a spin-flip
    unitary factor) and :func:`optimal_fidelity` (reached at beta = gamma = 0).
    The angles ``alpha`` and ``delta`` drop out of the average.
    """
    lam = _check_lam(lam)
    if not (math.isfinite(beta) and math.isfinite(gamma)):
        raise DomainError("angles must be finite")
    cg = math.cos(gamma)
    bracket = 1.0 + (2.0 * lam / (1.0 + lam * lam)) * math.cos(2.0 * beta)
    return (1.0 + bracket * cg * cg) / 3.0


def fidelity_of_operator(op: MeasurementOperator) -> float:
    """Mean fidelity of a single outcome, by the canonical-form convention.

    Evaluates :func:`fidelity_closed` with the angles of the canonical left
    unitary ``u``. By this convention the value is unchanged when the
    operator is multiplied by a unitary on the right (the right factor can
    always be relabeled away against a uniform prior).
    """
    ang = su2_params(op.canonical.u)
    return fidelity_closed(op.lam, ang.beta, ang.gamma)


def reversibility(lam: float) -> float:
    """Mean success probability of exactly undoing the outcome.

    ``2 lam^2 / (1 + lam^2)``: zero for projective outcomes, one in the
    identity limit. Strictly increasing in ``lam``.
    """
    lam = _check_lam(lam)
    return 2.0 * lam * lam / (1.0 + lam * lam)


def efficiency_fidelity(lam: float) -> float:
    """Information gain per unit of forgone optimal fidelity:
    ``I(lam) / (1 - optimal_fidelity(lam))``.

    Strictly increasing from 3*(1 - 1/(2 ln 2)) ~ 0.8360 at lam = 0 to the
    limit 1/ln 2 ~ 1.4427 at lam = 1: weak measurements buy information at
    the best rate per fidelity lost. The denominator is evaluated in the
    cancellation-free form (1-lam)^2 / (3 (1+lam^2)); above
    ``EFF_SERIES_SEAM`` the whole quotient switches to the series branch.
    """
    lam = _check_lam(lam)
    if lam == 1.0:
        return EFF_FIDELITY_AT_ONE
    if lam > EFF_SERIES_SEAM:
        x = 1.0 - lam
        acc = 0.0
        for c in reversed(_INFO_SERIES):
            acc = acc * x + c
        return 3.0 * (1.0 + lam * lam) * acc / LN2
    deficit = (1.0 - lam) ** 2 / (3.0 * (1.0 + lam * lam))
    return information_gain(lam) / deficit


def efficiency_reversibility(lam: float) -> float:
    """Information gain per unit of forgone reversibility:
    ``I(lam) / (1 - reversibility(lam))``.

    Strictly decreasing from 1 - 1/(2 ln 2) at lam = 0 to 0 at lam = 1:
    strong measurements cost the least reversibility per bit. The
    denominator is evaluated as (1-lam)(1+lam)/(1+lam^2), which stays exact
    near lam = 1 where the information-gain series takes over.
    """
    lam = _check_lam(lam)
    if lam == 1.0:
        return 0.0
    deficit = (1.0 - lam) * (1.0 + lam) / (1.0 + lam * lam)
    return information_gain(lam) / deficit


def outcome_probability_total(kappa: float, lam: float) -> float:
    """Probability of this outcome across a uniform Bloch-sphere prior:
    ``kappa^2 (1 + lam^2) / 2``.

    Callers guarantee ``kappa >= 0`` and ``lam`` in [0, 1]; nothing is
    validated here.
    """
    return 0.5 * kappa * kappa * (1.0 + lam * lam)


@dataclass(frozen=True)
class TradeoffRecord:
    """All tradeoff quantities evaluated at one strength ratio."""

    lam: float
    info: float
    fidelity_opt: float
    reversibility: float
    eff_fidelity: float
    eff_reversibility: float


def tradeoff_record(lam: float) -> TradeoffRecord:
    """Evaluate every closed form at ``lam``."""
    return TradeoffRecord(
        lam=float(lam),
        info=information_gain(lam),
        fidelity_opt=optimal_fidelity(lam),
        reversibility=reversibility(lam),
        eff_fidelity=efficiency_fidelity(lam),
        eff_reversibility=efficiency_reversibility(lam),
    )


@dataclass(frozen=True)
class AveragedQuantities:
    """Outcome-averaged tradeoff quantities of a complete measurement set."""

    info: float
    fidelity: float
    reversibility: float
    outcome_probabilities: tuple


def averaged_quantities(mset: MeasurementSet) -> AveragedQuantities:
    """Average information gain, fidelity, and reversibility over outcomes.

    Each outcome is weighted by its total probability
    ``p(m) = kappa_m^2 (1 + lam_m^2) / 2`` (these sum to 1 for a complete
    set, enforced to 1e-10). The set-level fidelity is the physical mean
    operation fidelity: for an outcome factored as ``kappa u D v`` the
    squared pre/post overlap averages to the closed form evaluated with the
    angles of ``v @ u`` — the right factor rotates the input state, so it
    re-enters here, unlike in the single-outcome relabeling convention.

    The mean reversibility is computed both as ``sum p(m) R(lam_m)`` and in
    the equivalent direct form ``sum kappa_m^2 lam_m^2``; the two must agree
    to 1e-12 or an ``ArithmeticError`` is raised.
    """
    probs = []
    info = 0.0
    fid = 0.0
    rev_weighted = 0.0
    rev_direct = 0.0
    for op in mset.operators:
        canon = op.canonical
        p = outcome_probability_total(op.kappa, op.lam)
        probs.append(p)
        info += p * information_gain(canon.lam)
        ang = su2_params(canon.v @ canon.u)
        fid += p * fidelity_closed(canon.lam, ang.beta, ang.gamma)
        rev_weighted += p * reversibility(canon.lam)
        rev_direct += (canon.kappa * canon.lam) ** 2
    total = float(np.sum(probs))
    if abs(total - 1.0) > 1e-10:
        raise IncompleteSetError(
            f"outcome probabilities sum to {total!r}, not 1"
        )
    if abs(rev_weighted - rev_direct) > 1e-12:
        raise ArithmeticError(
            "reversibility cross-check failed: "
            f"{rev_weighted!r} (weighted) vs {rev_direct!r} (direct)"
        )
    return AveragedQuantities(
        info=info,
        fidelity=fid,
        reversibility=rev_weighted,
        outcome_probabilities=tuple(probs),
    )
