"""State constructors: Werner family, the six reference examples, the
isospectral pair, general pure two-qubit states, and seeded samplers.

Computational basis order is |11>, |10>, |01>, |00> throughout, matching
the amplitude labels (a11, a10, a01, a00) of a pure state.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    I2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    TOLS,
    CheckError,
    DensityMatrix,
    Tolerances,
)
from .structure import LocalDecomposition

__all__ = [
    "PureStateAmplitudes",
    "BlochVector",
    "CorrelationTensor",
    "MarginalEigenData",
    "RegistryError",
    "werner",
    "werner_local_decomposition",
    "example_state",
    "isospectral_pair",
    "pure_density",
    "bloch_vectors",
    "correlation_tensor",
    "marginal_eigendata",
    "purity_check",
    "random_pure",
    "random_mixed",
    "from_registry",
    "EXAMPLE_NAMES",
]

EXAMPLE_NAMES = ("E1", "E2", "E3", "E4", "E5", "E6")

_PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)


class RegistryError(ValueError):
    """Unknown or malformed state-registry specifier."""


@dataclass(frozen=True)
class PureStateAmplitudes:
    """The four amplitudes of a two-qubit pure state, unit normalized."""

    a11: complex
    a10: complex
    a01: complex
    a00: complex

    def __post_init__(self):
        norm_err = abs(self.norm_squared() - 1.0)
        if norm_err > 1e-8:
            raise CheckError("normalization", norm_err, "amplitudes are not renormalized silently")

    def norm_squared(self) -> float:
        return abs(self.a11) ** 2 + abs(self.a10) ** 2 + abs(self.a01) ** 2 + abs(self.a00) ** 2

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.a11, self.a10, self.a01, self.a00], dtype=complex)


@dataclass(frozen=True)
class BlochVector:
    """Single-qubit polarization vector, |s| <= 1."""

    s1: float
    s2: float
    s3: float

    def __post_init__(self):
        if self.norm_squared() > 1.0 + 1e-10:
            raise CheckError("bloch norm", self.norm_squared() - 1.0)

    def norm_squared(self) -> float:
        return self.s1 * self.s1 + self.s2 * self.s2 + self.s3 * self.s3

    def norm(self) -> float:
        return math.sqrt(self.norm_squared())


@dataclass(frozen=True)
class CorrelationTensor:
    """3x3 real two-qubit correlation tensor, entries in [-1, 1]."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (3, 3):
            raise CheckError("shape", 0.0, f"correlation tensor must be 3x3, got {m.shape}")
        worst = float(np.max(np.abs(m)))
        if worst > 1.0 + 1e-10:
            raise CheckError("correlation bound", worst - 1.0)


@dataclass(frozen=True)
class MarginalEigenData:
    """Eigendata of a qubit marginal (I + s.tau)/2.

    Eigenvalues are (1 +/- |s|)/2; the eigenvectors are built from the
    amplitudes (amp_plus, amp_minus) and the azimuthal phase.  When the
    transverse part of s vanishes the phase is fixed to 0, and when s
    itself vanishes the eigenvectors default to the computational basis.
    """

    p_plus: float
    p_minus: float
    phase: float
    amp_plus: float
    amp_minus: float

    def __post_init__(self):
        if abs(self.p_plus + self.p_minus - 1.0) > 1e-10:
            raise CheckError("probability normalization", abs(self.p_plus + self.p_minus - 1.0))
        amp_err = abs(self.amp_plus**2 + self.amp_minus**2 - 1.0)
        if amp_err > 1e-10:
            raise CheckError("amplitude normalization", amp_err)

    def vectors(self) -> np.ndarray:
        """2x2 matrix whose columns are the (+) and (-) eigenvectors."""
        phase = cmath.exp(1j * self.phase)
        return np.array(
            [
                [self.amp_plus, -phase.conjugate() * self.amp_minus],
                [phase * self.amp_minus, self.amp_plus],
            ],
            dtype=complex,
        )


def _ket(entries) -> np.ndarray:
    return np.asarray(entries, dtype=complex)


def _projector(entries) -> np.ndarray:
    v = _ket(entries)
    return np.outer(v, v.conj())


_BELL_PHI_PLUS = _ket([1, 0, 0, 1]) / math.sqrt(2)  # (|11> + |00>)/sqrt(2)


def werner(p: float, *, tols: Tolerances = TOLS) -> DensityMatrix:
    """p |Phi><Phi| + (1-p) I/4 with Phi the (|00>+|11>)/sqrt(2) Bell state."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"werner parameter must lie in [0, 1], got {p}")
    mat = p * _projector(_BELL_PHI_PLUS) + (1.0 - p) * np.eye(4) / 4.0
    return DensityMatrix(mat, (2, 2), tols=tols)


def werner_local_decomposition(p: float, *, tols: Tolerances = TOLS) -> LocalDecomposition:
    """Seven-term local representation of the Werner state.

    One identity term with weight (1 - 3p) plus six spin-projector product
    terms of weight p/2: matched signs for the x and z axes, opposed signs
    for y.  All weights are nonnegative exactly when p <= 1/3.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"werner parameter must lie in [0, 1], got {p}")
    half = DensityMatrix(I2 / 2.0, (2, 1), tols=tols)
    terms = [(1.0 - 3.0 * p, half, half)]
    for i, pauli in enumerate(_PAULI):
        flip = -1.0 if i == 1 else 1.0
        for eps in (1.0, -1.0):
            fac_a = DensityMatrix((I2 + eps * pauli) / 2.0, (2, 1), tols=tols)
            fac_b = DensityMatrix((I2 + flip * eps * pauli) / 2.0, (2, 1), tols=tols)
            terms.append((p / 2.0, fac_a, fac_b))
    return LocalDecomposition(tuple(term for term in terms if term[0] != 0.0))


def _example_matrix(name: str) -> np.ndarray:
    if name == "E1":
        return (_projector([0, -2, 1, 0]) + _projector([0, 0, 0, 1])) / 6.0
    if name == "E2":
        return (_projector([0, 1, 1, 0]) + 4.0 * _projector([0, 0, 0, 1])) / 6.0
    if name == "E3":
        return (_projector([0, 1, 1, 0]) + _projector([0, 0, 0, 1])) / 3.0
    if name == "E4":
        return _projector(_ket([0, 1, -1, 0]) / math.sqrt(2))
    if name == "E5":
        return np.diag([0.0, 0.0, 0.5, 0.5]).astype(complex)
    if name == "E6":
        return np.diag([0.5, 0.0, 0.0, 0.5]).astype(complex)
    raise RegistryError(f"unknown example state {name!r}")


def example_state(name: str, *, tols: Tolerances = TOLS) -> DensityMatrix:
    """One of the six reference mixed/pure states E1..E6."""
    return DensityMatrix(_example_matrix(name), (2, 2), tols=tols)


def isospectral_pair(*, tols: Tolerances = TOLS) -> tuple[DensityMatrix, DensityMatrix]:
    """Two states with identical global and marginal spectra.

    The first is entangled, the second separable; they are distinguished
    by the quantum deficit but not by any spectrum-only functional.
    """
    entangled = (
        _projector([1, 0, 0, 0])
        + np.array(
            [
                [0, 0, 0, 0],
                [0, 1, 1, 0],
                [0, 1, 1, 0],
                [0, 0, 0, 0],
            ],
            dtype=complex,
        )
    ) / 3.0
    separable = np.diag([1.0, 0.0, 0.0, 2.0]).astype(complex) / 3.0
    return (
        DensityMatrix(entangled, (2, 2), tols=tols),
        DensityMatrix(separable, (2, 2), tols=tols),
    )


def pure_density(amps: PureStateAmplitudes, *, tols: Tolerances = TOLS) -> DensityMatrix:
    """Rank-one projector |Psi><Psi| of a normalized pure state."""
    return DensityMatrix(_projector(amps.vector), (2, 2), tols=tols)


def bloch_vectors(amps: PureStateAmplitudes) -> tuple[BlochVector, BlochVector]:
    """Polarization vectors of both qubits of a pure state."""
    a11, a10, a01, a00 = amps.a11, amps.a10, amps.a01, amps.a00

    def _real(z: complex, label: str) -> float:
        if abs(z.imag) > 1e-12:
            raise CheckError("real component", abs(z.imag), label)
        return z.real

    s_a = BlochVector(
        _real(a11 * a01.conjugate() + a11.conjugate() * a01 + a10 * a00.conjugate() + a10.conjugate() * a00, "s1(A)"),
        _real(1j * (a11 * a01.conjugate() - a11.conjugate() * a01 + a10 * a00.conjugate() - a10.conjugate() * a00), "s2(A)"),
        abs(a11) ** 2 - abs(a01) ** 2 + abs(a10) ** 2 - abs(a00) ** 2,
    )
    s_b = BlochVector(
        _real(a11 * a10.conjugate() + a11.conjugate() * a10 + a01 * a00.conjugate() + a01.conjugate() * a00, "s1(B)"),
        _real(1j * (a11 * a10.conjugate() - a11.conjugate() * a10 + a01 * a00.conjugate() - a01.conjugate() * a00), "s2(B)"),
        abs(a11) ** 2 - abs(a10) ** 2 + abs(a01) ** 2 - abs(a00) ** 2,
    )
    return s_a, s_b


def correlation_tensor(amps: PureStateAmplitudes) -> CorrelationTensor:
    """Two-qubit correlation tensor C_ij = <tau_i x tau_j> of a pure state."""
    a11, a10, a01, a00 = amps.a11, amps.a10, amps.a01, amps.a00

    def _re2(x: complex, y: complex) -> float:
        # x y* + y x*
        return 2.0 * (x * y.conjugate()).real

    def _im2(x: complex, y: complex) -> float:
        # i (x y* - y x*)
        return -2.0 * (x * y.conjugate()).imag

    c = np.empty((3, 3))
    c[0, 0] = _re2(a11, a00) + _re2(a10, a01)
    c[0, 1] = _im2(a11, a00) - _im2(a10, a01)
    c[0, 2] = _re2(a11, a01) - _re2(a10, a00)
    c[1, 0] = _im2(a11, a00) + _im2(a10, a01)
    c[1, 1] = -_re2(a11, a00) + _re2(a10, a01)
    c[1, 2] = _im2(a11, a01) - _im2(a10, a00)
    c[2, 0] = _re2(a11, a10) - _re2(a01, a00)
    c[2, 1] = _im2(a11, a10) - _im2(a01, a00)
    c[2, 2] = abs(a11) ** 2 - abs(a10) ** 2 - abs(a01) ** 2 + abs(a00) ** 2
    return CorrelationTensor(c)


def marginal_eigendata(s: BlochVector) -> MarginalEigenData:
    """Eigendecomposition of the qubit state (I + s.tau)/2.

    Conventions at the singular points: a vanishing transverse component
    fixes the azimuthal phase to 0, and a vanishing s returns the fully
    degenerate (1/2, 1/2) spectrum with computational-basis eigenvectors.
    """
    mag = s.norm()
    p_plus = (1.0 + mag) / 2.0
    p_minus = (1.0 - mag) / 2.0
    if mag < 1e-15:
        return MarginalEigenData(p_plus, p_minus, 0.0, 1.0, 0.0)
    transverse = math.hypot(s.s1, s.s2)
    phase = 0.0 if transverse < 1e-15 else math.atan2(s.s2, s.s1)
    amp_plus = math.sqrt(max((mag + s.s3) / (2.0 * mag), 0.0))
    amp_minus = math.sqrt(max((mag - s.s3) / (2.0 * mag), 0.0))
    return MarginalEigenData(p_plus, p_minus, phase, amp_plus, amp_minus)


def purity_check(amps: PureStateAmplitudes) -> tuple[float, float]:
    """Marginal purity (1 + |s|^2)/2 and the residual of the identity
    1 - |s(A)|^2 = 4 |a11 a00 - a01 a10|^2."""
    s_a, _ = bloch_vectors(amps)
    mag2 = s_a.norm_squared()
    det = amps.a11 * amps.a00 - amps.a01 * amps.a10
    return (1.0 + mag2) / 2.0, abs((1.0 - mag2) - 4.0 * abs(det) ** 2)


def random_pure(seed: int) -> PureStateAmplitudes:
    """Haar-uniform pure state: four normalized standard complex Gaussians."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    z /= np.linalg.norm(z)
    return PureStateAmplitudes(*z)


def _haar_amplitudes(rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    return z / np.linalg.norm(z)


def _haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_mixed(seed: int, rank: int, *, tols: Tolerances = TOLS) -> DensityMatrix:
    """Convex mix of ``rank`` Haar-random pure projectors with flat-simplex weights."""
    if not 1 <= rank <= 4:
        raise ValueError(f"rank must lie in 1..4, got {rank}")
    rng = np.random.default_rng(seed)
    weights = rng.exponential(size=rank)
    weights /= weights.sum()
    mat = np.zeros((4, 4), dtype=complex)
    for w in weights:
        v = _haar_amplitudes(rng)
        mat += w * np.outer(v, v.conj())
    return DensityMatrix(0.5 * (mat + mat.conj().T), (2, 2), tols=tols)


def from_registry(spec: str, *, tols: Tolerances = TOLS) -> DensityMatrix:
    """Resolve a registry name to a state.

    Accepted forms: ``E1``..``E6``, ``iso:E``, ``iso:S``, ``werner:<p>``,
    and ``pure:<a11>,<a10>,<a01>,<a00>`` with complex-literal components
    such as ``0.5+0.5j``.
    """
    spec = spec.strip()
    if spec in EXAMPLE_NAMES:
        return example_state(spec, tols=tols)
    if spec in ("iso:E", "iso:S"):
        pair = isospectral_pair(tols=tols)
        return pair[0] if spec == "iso:E" else pair[1]
    if spec.startswith("werner:"):
        try:
            p = float(spec.split(":", 1)[1])
        except ValueError as exc:
            raise RegistryError(f"bad werner parameter in {spec!r}") from exc
        try:
            return werner(p, tols=tols)
        except ValueError as exc:
            raise RegistryError(str(exc)) from exc
    if spec.startswith("pure:"):
        parts = spec.split(":", 1)[1].split(",")
        if len(parts) != 4:
            raise RegistryError(f"pure state needs 4 amplitudes, got {len(parts)}")
        try:
            amps = PureStateAmplitudes(*(complex(part.strip()) for part in parts))
        except ValueError as exc:
            raise RegistryError(f"bad amplitude in {spec!r}: {exc}") from exc
        return pure_density(amps, tols=tols)
    raise RegistryError(f"unknown state specifier {spec!r}")
