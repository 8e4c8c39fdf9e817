"""Tensor-product state and operator algebra for SQUID registers in a cavity.

The composite system is N three-level SQUIDs plus one truncated cavity mode.
Conventions fixed here and relied on everywhere else in the package:

* SQUID levels are indexed 0, 1, 2 for the two flux states ``|0>``, ``|1>``
  and the upper level ``|e>``.
* The cavity keeps Fock states ``|0> .. |n_max>``.  ``n_max`` defaults to 2:
  the ideal protocols never populate more than one photon, so the second
  photon level acts purely as a guard where leakage would show up.
* Factor order is SQUID 0, SQUID 1, ..., SQUID N-1, cavity last.  Amplitude
  vectors are C-ordered over the mixed-radix digits of that factor list
  (first SQUID varies slowest, cavity digit fastest).
* Operators address factors through site indices.  Negative indices count
  from the end of the factor list, so site ``-1`` is always the cavity.

Layouts and operators are immutable after construction and safe to share
between threads.  A CompositeState is owned by whichever evolution is
currently producing it; independent runs can proceed concurrently on their
own states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SQUID_DIM = 3
LEVEL_0, LEVEL_1, LEVEL_E = 0, 1, 2

HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class SpaceLayout:
    """Shape of the composite space: ``n_squids`` qutrits plus one cavity mode."""

    n_squids: int
    fock_cutoff: int = 2

    def __post_init__(self):
        if self.n_squids < 1:
            raise ValueError(f"need at least one SQUID, got n_squids={self.n_squids}")
        if self.fock_cutoff < 0:
            raise ValueError(f"fock_cutoff must be >= 0, got {self.fock_cutoff}")

    @property
    def n_factors(self) -> int:
        return self.n_squids + 1

    @property
    def cavity_site(self) -> int:
        return self.n_squids

    @property
    def dims(self) -> tuple[int, ...]:
        return (SQUID_DIM,) * self.n_squids + (self.fock_cutoff + 1,)

    @property
    def total_dim(self) -> int:
        return SQUID_DIM**self.n_squids * (self.fock_cutoff + 1)

    def resolve_site(self, site: int) -> int:
        """Map a possibly-negative site index to a factor position."""
        if not -self.n_factors <= site < self.n_factors:
            raise ValueError(
                f"site {site} out of range for {self.n_factors} factors"
            )
        return site % self.n_factors

    def resolve_sites(self, sites) -> tuple[int, ...]:
        resolved = tuple(self.resolve_site(s) for s in sites)
        if len(set(resolved)) != len(resolved):
            raise ValueError(f"duplicate sites in {tuple(sites)}")
        return resolved


@dataclass
class CompositeState:
    """Complex amplitude vector over the full register, in layout order."""

    layout: SpaceLayout
    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amp.size != self.layout.total_dim:
            raise ValueError(
                f"amplitude vector has length {amp.size}, "
                f"layout dimension is {self.layout.total_dim}"
            )
        if not np.isfinite(amp).all():
            raise ValueError("amplitudes contain NaN or Inf")
        self.amplitudes = amp

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> "CompositeState":
        return CompositeState(self.layout, self.amplitudes.copy())


def basis_index(layout: SpaceLayout, levels, photons: int = 0) -> int:
    """Flat index of the product basis state with the given SQUID levels.

    ``levels`` lists one level (0, 1 or 2) per SQUID in layout order;
    ``photons`` is the cavity Fock digit.
    """
    levels = tuple(int(v) for v in levels)
    if len(levels) != layout.n_squids:
        raise ValueError(
            f"expected {layout.n_squids} levels, got {len(levels)}"
        )
    for i, v in enumerate(levels):
        if not 0 <= v < SQUID_DIM:
            raise ValueError(f"level {v} at SQUID {i} outside 0..2")
    if not 0 <= photons <= layout.fock_cutoff:
        raise ValueError(f"photon number {photons} exceeds cutoff {layout.fock_cutoff}")
    index = 0
    for v in levels:
        index = index * SQUID_DIM + v
    return index * (layout.fock_cutoff + 1) + photons


def basis_state(layout: SpaceLayout, levels, photons: int = 0) -> CompositeState:
    """Product basis state |levels> x |photons>."""
    amp = np.zeros(layout.total_dim, dtype=complex)
    amp[basis_index(layout, levels, photons)] = 1.0
    return CompositeState(layout, amp)


@dataclass(frozen=True)
class LocalOperator:
    """Dense matrix acting on a declared subset of tensor factors.

    ``sites`` lists the factors the operator touches, in the order matched by
    the row/column mixed-radix convention of ``matrix`` (first listed site is
    the slowest digit).  ``local_dims`` gives the corresponding factor
    dimensions; the matrix must be square with dimension equal to their
    product.  Setting ``hermitian`` asserts Hermiticity at construction.
    """

    sites: tuple[int, ...]
    local_dims: tuple[int, ...]
    matrix: np.ndarray
    hermitian: bool = False

    def __post_init__(self):
        object.__setattr__(self, "sites", tuple(int(s) for s in self.sites))
        object.__setattr__(self, "local_dims", tuple(int(d) for d in self.local_dims))
        mat = np.asarray(self.matrix, dtype=complex)
        if len(self.sites) != len(self.local_dims):
            raise ValueError("sites and local_dims differ in length")
        dim = math.prod(self.local_dims)
        if mat.shape != (dim, dim):
            raise ValueError(
                f"matrix shape {mat.shape} does not match local dimensions "
                f"{self.local_dims} (product {dim})"
            )
        if self.hermitian:
            defect = np.max(np.abs(mat - mat.conj().T)) if dim else 0.0
            if defect > HERMITICITY_TOL:
                raise ValueError(
                    f"operator flagged hermitian but max |M - M^dag| = {defect:.3e}"
                )
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def tensor_state(local_factors) -> CompositeState:
    """Assemble a product state from per-factor amplitude vectors.

    The factor list follows layout order: one length-3 vector per SQUID, then
    the cavity vector last (its length fixes the Fock cutoff).  The amplitude
    of each mixed-radix basis index is the product of the local amplitudes.
    """
    factors = [np.asarray(f, dtype=complex).reshape(-1) for f in local_factors]
    if len(factors) < 2:
        raise ValueError("need at least one SQUID factor plus the cavity factor")
    for i, f in enumerate(factors[:-1]):
        if f.size != SQUID_DIM:
            raise ValueError(
                f"factor {i} has dimension {f.size}, expected {SQUID_DIM} for a SQUID"
            )
    cavity = factors[-1]
    if cavity.size < 1:
        raise ValueError(f"factor {len(factors) - 1} (cavity) is empty")
    layout = SpaceLayout(n_squids=len(factors) - 1, fock_cutoff=cavity.size - 1)
    amp = factors[0]
    for f in factors[1:]:
        amp = np.kron(amp, f)
    return CompositeState(layout, amp)


def apply_local(state: CompositeState, op: LocalOperator) -> CompositeState:
    """Apply a local operator, embedding it with identities elsewhere."""
    layout = state.layout
    sites = layout.resolve_sites(op.sites)
    for s, d in zip(sites, op.local_dims):
        if layout.dims[s] != d:
            raise ValueError(
                f"operator expects dimension {d} at site {s}, layout has {layout.dims[s]}"
            )
    k = len(sites)
    psi = state.amplitudes.reshape(layout.dims)
    mat = op.matrix.reshape(op.local_dims + op.local_dims)
    out = np.tensordot(mat, psi, axes=(tuple(range(k, 2 * k)), sites))
    out = np.moveaxis(out, tuple(range(k)), sites)
    return CompositeState(layout, out.reshape(-1))


def expectation(state: CompositeState, op: LocalOperator) -> complex:
    """<psi| O |psi> with O embedded on its declared sites."""
    return complex(np.vdot(state.amplitudes, apply_local(state, op).amplitudes))


def embedded_matrix(op: LocalOperator, layout: SpaceLayout) -> np.ndarray:
    """Full-space dense matrix of a local operator (identity on other factors).

    Only used where a global matrix is genuinely needed (Lindblad runs on
    small composites); state evolution goes through apply_local instead.
    """
    sites = layout.resolve_sites(op.sites)
    for s, d in zip(sites, op.local_dims):
        if layout.dims[s] != d:
            raise ValueError(
                f"operator expects dimension {d} at site {s}, layout has {layout.dims[s]}"
            )
    rest = [f for f in range(layout.n_factors) if f not in sites]
    rest_dim = math.prod(layout.dims[f] for f in rest) if rest else 1
    full = np.kron(op.matrix, np.eye(rest_dim, dtype=complex))
    # reorder from (sites..., rest...) digit order to layout order
    order = list(sites) + rest
    inv = np.argsort(order)
    tensor_dims = [layout.dims[f] for f in order]
    full = full.reshape(tensor_dims + tensor_dims)
    n = layout.n_factors
    full = np.transpose(full, list(inv) + [n + i for i in inv])
    return full.reshape(layout.total_dim, layout.total_dim)


@dataclass
class DensityMatrix:
    """Density matrix over a (possibly reduced) list of tensor factors."""

    dims: tuple[int, ...]
    matrix: np.ndarray
    layout: SpaceLayout | None = None

    def __post_init__(self):
        self.dims = tuple(int(d) for d in self.dims)
        mat = np.asarray(self.matrix, dtype=complex)
        dim = math.prod(self.dims)
        if mat.shape != (dim, dim):
            raise ValueError(
                f"matrix shape {mat.shape} does not match dims {self.dims}"
            )
        self.matrix = mat

    @classmethod
    def from_pure(cls, state: CompositeState) -> "DensityMatrix":
        amp = state.amplitudes
        return cls(state.layout.dims, np.outer(amp, amp.conj()), layout=state.layout)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def trace(self) -> float:
        return float(np.real(np.trace(self.matrix)))

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh((self.matrix + self.matrix.conj().T) / 2)[0])


def reduced_density(state: CompositeState, keep_sites) -> DensityMatrix:
    """Partial trace down to the listed factors (in the listed order)."""
    layout = state.layout
    keep = layout.resolve_sites(keep_sites)
    if not keep:
        raise ValueError("keep_sites must be nonempty")
    psi = state.amplitudes.reshape(layout.dims)
    psi = np.moveaxis(psi, keep, tuple(range(len(keep))))
    keep_dim = math.prod(layout.dims[s] for s in keep)
    mat = psi.reshape(keep_dim, -1)
    rho = mat @ mat.conj().T
    return DensityMatrix(tuple(layout.dims[s] for s in keep), rho)
