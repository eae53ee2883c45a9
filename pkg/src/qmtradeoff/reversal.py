"""Probabilistic reversal of a single measurement outcome.

An outcome with operator ``M = kappa * u @ diag(1, lam) @ v`` (``lam > 0``)
can be undone by a second measurement whose success operator is proportional
to ``M^{-1}``. Writing the success operator as ``R0 = eta * M^{-1}``, the
success branch restores the pre-measurement state exactly; the scale is
bounded by ``|eta|^2 <= kappa^2 lam^2`` so that ``R0`` itself has operator
norm at most 1, and the optimum takes ``eta = kappa * lam`` real positive,
giving ``R0 = v† @ diag(lam, 1) @ u†``.

Only the success operator is returned: completing ``R0`` into a full
measurement requires one or more extra operators with
``sum R† R = I - R0† R0``, and that completion is not unique.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, IrreversibleError, ZeroProbabilityError
from .linalg import dagger
from .measurement import MeasurementOperator, PureState, outcome_probability

#: Strength ratios below this are treated as exactly singular (irreversible).
REVERSIBLE_LAM_TOL = 1e-14

#: Required overlap between the original and the recovered state on success.
RECOVERY_OVERLAP_TOL = 1e-10


@dataclass(frozen=True)
class ReversingMeasurement:
    """Success operator of the optimal reversing measurement.

    Attributes
    ----------
    matrix : np.ndarray
        The success operator ``R0``; its singular values are (1, lam), so it
        is a valid measurement operator.
    eta : float
        The proportionality scale in ``R0 = eta * M^{-1}``; equals
        ``kappa * lam`` at the optimum.
    source : MeasurementOperator
        The outcome operator this reversal was built for; the pair satisfies
        ``matrix @ source.matrix == eta * I``.
    """

    matrix: np.ndarray
    eta: float
    source: MeasurementOperator


@dataclass(frozen=True)
class ReversalStats:
    """Tally of a simulated reverse-or-fail experiment."""

    trials: int
    successes: int
    empirical_rate: float
    predicted_rate: float
    recovered_fidelity_min: float


def optimal_reversing(op: MeasurementOperator) -> ReversingMeasurement:
    """Build the optimal reversing measurement for one outcome.

    Raises
    ------
    IrreversibleError
        If the strength ratio vanishes: a singular operator erases one
        amplitude and nothing can restore it.
    """
    canon = op.canonical
    if canon.lam < REVERSIBLE_LAM_TOL:
        raise IrreversibleError(
            "operator has a zero singular value; the outcome cannot be undone"
        )
    core = np.diag([canon.lam, 1.0]).astype(complex)
    matrix = dagger(canon.v) @ core @ dagger(canon.u)
    return ReversingMeasurement(matrix=matrix, eta=canon.kappa * canon.lam, source=op)


def reversal_success_probability(op: MeasurementOperator, state: PureState) -> float:
    """Probability that the optimal reversal succeeds, given the outcome
    occurred on ``state``.

    Equals ``kappa^2 lam^2 / p(outcome | state)``, which simplifies to
    ``lam^2 / q`` with ``q`` the scaled outcome probability; always in
    (0, 1], and exactly 1 when the state sits where the operator is
    weakest.
    """
    canon = op.canonical
    if canon.lam < REVERSIBLE_LAM_TOL:
        raise IrreversibleError(
            "operator has a zero singular value; the outcome cannot be undone"
        )
    p = outcome_probability(op, state)
    if p <= 0.0:
        raise ZeroProbabilityError("outcome has zero probability on this state")
    return min((canon.kappa * canon.lam) ** 2 / p, 1.0)


def simulate_reversal(
    op: MeasurementOperator,
    state: PureState,
    trials: int,
    rng: np.random.Generator,
) -> ReversalStats:
    """Monte Carlo check of the reversal success probability.

    Each trial post-selects the given outcome on ``state`` and then attempts
    the optimal reversal, which succeeds with the predicted probability.
    Successful trials recover the pre-measurement state; the minimum overlap
    ``|<psi|psi_recovered>|`` across successes is verified against 1 within
    ``RECOVERY_OVERLAP_TOL`` and reported (vacuously 1.0 when every trial
    fails).

    Raises
    ------
    DomainError
        If ``trials`` is not a positive integer.
    ArithmeticError
        If a successful reversal fails to restore the state — that would be
        an internal error, not a statistical fluctuation.
    """
    if not isinstance(trials, (int, np.integer)) or trials < 1:
        raise DomainError(f"trials must be a positive integer, got {trials!r}")
    predicted = reversal_success_probability(op, state)
    successes = int(np.count_nonzero(rng.random(trials) < predicted))

    recovered_min = 1.0
    if successes:
        # The post-selected chain is deterministic: every successful trial
        # produces the same recovered state, so one overlap serves them all.
        post = op.matrix @ state.amplitudes()
        recovered = optimal_reversing(op).matrix @ post
        recovered_state = PureState.from_amplitudes(recovered)
        recovered_min = state.overlap(recovered_state)
        if recovered_min < 1.0 - RECOVERY_OVERLAP_TOL:
            raise ArithmeticError(
                f"successful reversal left overlap {recovered_min!r} < 1 - 1e-10"
            )
    return ReversalStats(
        trials=int(trials),
        successes=successes,
        empirical_rate=successes / float(trials),
        predicted_rate=predicted,
        recovered_fidelity_min=recovered_min,
    )
