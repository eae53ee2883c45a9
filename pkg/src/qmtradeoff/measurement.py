"""Pure states, measurement operators, and complete measurement sets.

A measurement on a qubit in state ``|psi>`` with operator ``M`` occurs with
probability ``<psi| M† M |psi>`` and leaves the system in ``M|psi>`` up to
normalization. Operators are stored together with their canonical
factorization (see :func:`qmtradeoff.linalg.svd2`), since every derived
quantity in this package depends only on the scale ``kappa``, the strength
ratio ``lam``, and the unitary factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    DomainError,
    FormatError,
    IncompleteSetError,
    InvalidStrengthError,
    ZeroProbabilityError,
)
from .linalg import Svd2Result, as_matrix2, dagger, matrix_from_json, matrix_to_json, svd2

#: Default tolerance on || sum M† M - I || for complete sets.
COMPLETENESS_TOL = 1e-10

#: Allowed overshoot of the operator norm above 1.
OPERATOR_NORM_TOL = 1e-12

#: Probability round-off this far outside [0, 1] is clamped; beyond it, raised.
PROBABILITY_CLAMP = 1e-12

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PureState:
    """A qubit pure state by its polar and azimuthal angles.

    ``theta`` in [0, pi] measures from the +z axis, ``phi`` is stored
    normalized into [0, 2*pi). Amplitudes follow the convention
    ``(cos(theta/2), exp(i phi) sin(theta/2))``.
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise DomainError("state angles must be finite")
        if not -1e-12 <= self.theta <= math.pi + 1e-12:
            raise DomainError(f"theta must lie in [0, pi], got {self.theta}")
        object.__setattr__(self, "theta", min(max(self.theta, 0.0), math.pi))
        object.__setattr__(self, "phi", self.phi % _TWO_PI)

    def amplitudes(self) -> np.ndarray:
        """Complex amplitude pair, unit norm within 1e-14."""
        half = 0.5 * self.theta
        return np.array([math.cos(half), np.exp(1j * self.phi) * math.sin(half)])

    def bloch_vector(self) -> np.ndarray:
        """Cartesian (x, y, z) on the unit sphere."""
        st = math.sin(self.theta)
        return np.array(
            [st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)]
        )

    @classmethod
    def from_amplitudes(cls, vec) -> "PureState":
        """Build from a 2-component complex vector, removing norm and global phase."""
        arr = np.asarray(vec, dtype=complex).reshape(-1)
        if arr.shape != (2,):
            raise FormatError("amplitude vector must have exactly 2 components")
        norm = float(np.linalg.norm(arr))
        if norm < 1e-14:
            raise DomainError("cannot normalize a zero state vector")
        arr = arr / norm
        theta = 2.0 * math.atan2(abs(arr[1]), abs(arr[0]))
        phi = 0.0
        if abs(arr[1]) > 1e-15:
            phi = math.atan2(arr[1].imag, arr[1].real)
            if abs(arr[0]) > 1e-15:
                phi -= math.atan2(arr[0].imag, arr[0].real)
        return cls(theta=theta, phi=phi)

    def overlap(self, other: "PureState") -> float:
        """|<self|other>|, in [0, 1]."""
        val = abs(np.vdot(self.amplitudes(), other.amplitudes()))
        return min(val, 1.0)


class MeasurementOperator:
    """A single Kraus operator with its cached canonical factorization.

    Parameters
    ----------
    matrix : array_like
        2x2 complex matrix with operator norm at most 1 (within 1e-12),
        as required for membership in a complete measurement set.

    Raises
    ------
    ZeroOperatorError
        If the matrix is numerically zero.
    InvalidStrengthError
        If the largest singular value exceeds 1 beyond tolerance.
    """

    __slots__ = ("_matrix", "_canonical")

    def __init__(self, matrix):
        self._matrix = as_matrix2(matrix)
        self._matrix.setflags(write=False)
        self._canonical = svd2(self._matrix)
        if self._canonical.kappa > 1.0 + OPERATOR_NORM_TOL:
            raise InvalidStrengthError(
                f"operator norm {self._canonical.kappa:.12g} exceeds 1"
            )

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def canonical(self) -> Svd2Result:
        return self._canonical

    @property
    def kappa(self) -> float:
        """Overall scale (largest singular value)."""
        return self._canonical.kappa

    @property
    def lam(self) -> float:
        """Strength ratio: smaller over larger singular value, in [0, 1]."""
        return self._canonical.lam

    def gram(self) -> np.ndarray:
        """M† M."""
        return dagger(self._matrix) @ self._matrix

    def __repr__(self):
        return (
            f"MeasurementOperator(kappa={self.kappa:.6g}, lam={self.lam:.6g})"
        )


def _clamp_probability(p: float) -> float:
    if -PROBABILITY_CLAMP <= p < 0.0:
        return 0.0
    if 1.0 < p <= 1.0 + PROBABILITY_CLAMP:
        return 1.0
    if p < 0.0 or p > 1.0:
        raise ArithmeticError(f"probability {p!r} outside [0, 1] beyond round-off")
    return p


def outcome_probability(op: MeasurementOperator, state: PureState) -> float:
    """Probability ``<psi| M† M |psi>`` of obtaining this outcome."""
    amp = state.amplitudes()
    p = float(np.real(np.vdot(amp, op.gram() @ amp)))
    return _clamp_probability(p)


def q_value(lam: float, theta: float) -> float:
    """Scaled outcome probability ``cos^2(theta/2) + lam^2 sin^2(theta/2)``.

    This is the outcome probability of the canonical operator
    ``diag(1, lam)`` on the state at polar angle ``theta``, i.e. the raw
    probability with the scale ``kappa^2`` divided out. Ranges over
    [lam^2, 1].
    """
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"lam must lie in [0, 1], got {lam}")
    if not -1e-12 <= theta <= math.pi + 1e-12:
        raise DomainError(f"theta must lie in [0, pi], got {theta}")
    c = math.cos(0.5 * theta)
    s = math.sin(0.5 * theta)
    return c * c + lam * lam * s * s


def post_measurement_state(op: MeasurementOperator, state: PureState) -> PureState:
    """State after obtaining this outcome: ``M|psi>`` renormalized.

    Raises
    ------
    ZeroProbabilityError
        When the outcome probability vanishes (below 1e-14), e.g. a
        projective operator applied to an orthogonal state.
    """
    amp = op.matrix @ state.amplitudes()
    norm_sq = float(np.real(np.vdot(amp, amp)))
    if norm_sq < 1e-14:
        raise ZeroProbabilityError(
            "outcome has zero probability on this state; no post-state exists"
        )
    return PureState.from_amplitudes(amp)


@dataclass(frozen=True)
class CompletenessReport:
    """Result of checking sum_m M† M against the identity."""

    max_deviation: float
    tol: float
    passed: bool


def check_completeness(
    operators: "Sequence[MeasurementOperator] | MeasurementSet",
    tol: float = COMPLETENESS_TOL,
) -> CompletenessReport:
    """Measure how far ``sum_m M† M`` is from the identity, entrywise."""
    if isinstance(operators, MeasurementSet):
        operators = operators.operators
    total = np.zeros((2, 2), dtype=complex)
    for op in operators:
        if not isinstance(op, MeasurementOperator):
            op = MeasurementOperator(op)
        total += op.gram()
    dev = float(np.max(np.abs(total - np.eye(2))))
    return CompletenessReport(max_deviation=dev, tol=tol, passed=dev <= tol)


@dataclass(frozen=True)
class MeasurementRecord:
    """One sampled measurement event."""

    outcome: object
    probability: float
    pre_state: PureState
    post_state: PureState


@dataclass(frozen=True)
class MeasurementSet:
    """A complete collection of measurement operators.

    Completeness (``sum_m M† M = I`` within ``tol``) is enforced at
    construction; labels default to the operator indices.
    """

    operators: tuple
    labels: tuple = field(default=())
    tol: float = COMPLETENESS_TOL

    def __post_init__(self):
        ops = tuple(
            op if isinstance(op, MeasurementOperator) else MeasurementOperator(op)
            for op in self.operators
        )
        object.__setattr__(self, "operators", ops)
        if not ops:
            raise IncompleteSetError("a measurement set needs at least one operator")
        labels = self.labels if self.labels else tuple(str(i) for i in range(len(ops)))
        if len(labels) != len(ops):
            raise FormatError(
                f"{len(labels)} labels for {len(ops)} operators"
            )
        object.__setattr__(self, "labels", tuple(labels))
        report = check_completeness(ops, self.tol)
        if not report.passed:
            raise IncompleteSetError(
                f"operators sum deviates from identity by {report.max_deviation:.3e}"
                f" > {self.tol:.3e}"
            )

    def __len__(self):
        return len(self.operators)

    def to_json(self) -> dict:
        """Serialize as ``{"operators": [...], "labels": [...]}``."""
        return {
            "operators": [matrix_to_json(op.matrix) for op in self.operators],
            "labels": list(self.labels),
        }

    @classmethod
    def from_json(cls, payload, tol: float = COMPLETENESS_TOL) -> "MeasurementSet":
        """Inverse of :meth:`to_json`; labels are optional in the payload."""
        if not isinstance(payload, dict) or "operators" not in payload:
            raise FormatError('measurement set payload must contain "operators"')
        mats = payload["operators"]
        if not isinstance(mats, (list, tuple)) or not mats:
            raise FormatError('"operators" must be a non-empty list')
        ops = tuple(MeasurementOperator(matrix_from_json(m)) for m in mats)
        labels = payload.get("labels") or ()
        return cls(operators=ops, labels=tuple(labels), tol=tol)


def sample_outcome(
    mset: MeasurementSet, state: PureState, rng: np.random.Generator
) -> MeasurementRecord:
    """Draw one outcome and return the full measurement record.

    Probabilities are renormalized if rounding puts their sum within
    1e-10 of (but not exactly at) 1.
    """
    probs = np.array([outcome_probability(op, state) for op in mset.operators])
    total = float(probs.sum())
    if abs(total - 1.0) > COMPLETENESS_TOL:
        raise IncompleteSetError(
            f"outcome probabilities sum to {total!r}, not 1"
        )
    probs = probs / total
    idx = int(rng.choice(len(probs), p=probs))
    return MeasurementRecord(
        outcome=mset.labels[idx],
        probability=float(probs[idx]),
        pre_state=state,
        post_state=post_measurement_state(mset.operators[idx], state),
    )


def two_outcome_family(lam0: float, kappa0: float) -> MeasurementSet:
    """The standard two-outcome measurement of strength ratio ``lam0``.

    Outcome 0 applies ``kappa0 * diag(1, lam0)``; outcome 1 carries the
    completing operator ``diag(sqrt(1 - kappa0^2), sqrt(1 - kappa0^2 lam0^2))``.
    Completeness is exact by construction.

    Raises
    ------
    InvalidStrengthError
        If ``lam0`` or ``kappa0`` leave their ranges (lam0 in [0, 1],
        kappa0 in (0, 1]), or at the degenerate corner lam0 = kappa0 = 1
        where the second operator would vanish.
    """
    if not 0.0 <= lam0 <= 1.0:
        raise InvalidStrengthError(f"lam0 must lie in [0, 1], got {lam0}")
    if not 0.0 < kappa0 <= 1.0:
        raise InvalidStrengthError(f"kappa0 must lie in (0, 1], got {kappa0}")
    comp0 = 1.0 - kappa0 * kappa0
    comp1 = 1.0 - (kappa0 * lam0) ** 2
    if comp0 < 1e-28 and comp1 < 1e-28:
        raise InvalidStrengthError(
            "lam0 = kappa0 = 1 leaves a zero completing operator"
        )
    m0 = kappa0 * np.diag([1.0, lam0]).astype(complex)
    m1 = np.diag([math.sqrt(max(comp0, 0.0)), math.sqrt(max(comp1, 0.0))]).astype(complex)
    return MeasurementSet(operators=(m0, m1), labels=("0", "1"))
