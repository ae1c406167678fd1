"""Scalar information and correlation functionals.

All entropies and informations are in nats.  Argmin/argmax branches use a
fixed lexicographic tie-break (cuts AB|E, AE|B, BE|A; pairs AB, AE, BE) so
that emitted branch columns are deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .densemat import (
    DensityMatrix,
    clamp_spectrum,
    hermitian_eigenvalues,
    partial_trace,
)

CUT_LABELS = ("AB|E", "AE|B", "BE|A")
PAIR_LABELS = ("AB", "AE", "BE")
#: Pair whose mutual information completes the monogamy identity for each cut.
COMPLEMENT_PAIR = {"AB|E": "AB", "AE|B": "AE", "BE|A": "BE"}

_SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_YY = np.kron(_SIGMA_Y, _SIGMA_Y)


@dataclass(frozen=True)
class BipartitionCut:
    """One side of a bipartition plus its complement within a layout."""

    group: frozenset[str]
    complement: frozenset[str]

    @staticmethod
    def of(layout_labels: tuple[str, ...], group) -> "BipartitionCut":
        group = frozenset(group)
        all_labels = frozenset(layout_labels)
        if not group or not group < all_labels:
            raise ValueError(f"cut {sorted(group)} is not a proper non-empty subset "
                             f"of {list(layout_labels)}")
        return BipartitionCut(group, all_labels - group)


def tripartite_cuts() -> tuple[tuple[str, BipartitionCut], ...]:
    """The three canonical cuts of an A/B/E layout, in tie-break order."""
    labels = ("A", "B", "E")
    return (
        ("AB|E", BipartitionCut.of(labels, {"A", "B"})),
        ("AE|B", BipartitionCut.of(labels, {"A", "E"})),
        ("BE|A", BipartitionCut.of(labels, {"B", "E"})),
    )


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """-Tr rho ln rho over the clamped spectrum, with 0 ln 0 = 0."""
    values = clamp_spectrum(hermitian_eigenvalues(rho.matrix))
    positive = values[values > 0.0]
    return max(0.0, float(-(positive * np.log(positive)).sum()))


def mutual_information(rho: DensityMatrix, cut: BipartitionCut) -> float:
    """S(group) + S(complement) - S(whole) across the given bipartition."""
    labels = frozenset(rho.layout.labels)
    if cut.group | cut.complement != labels or cut.group & cut.complement:
        raise ValueError(f"cut {sorted(cut.group)}|{sorted(cut.complement)} does not "
                         f"bipartition {sorted(labels)}")
    s_group = von_neumann_entropy(partial_trace(rho, cut.group))
    s_complement = von_neumann_entropy(partial_trace(rho, cut.complement))
    return s_group + s_complement - von_neumann_entropy(rho)


def pair_mutual_information(rho_tri: DensityMatrix, pair: tuple[str, str]) -> float:
    """Mutual information of the two-party reduced state rho_ij."""
    i, j = pair
    labels = set(rho_tri.layout.labels)
    if i not in labels or j not in labels or i == j:
        raise ValueError(f"invalid pair {pair} for labels {sorted(labels)}")
    rho_ij = partial_trace(rho_tri, {i, j})
    s_i = von_neumann_entropy(partial_trace(rho_ij, {i}))
    s_j = von_neumann_entropy(partial_trace(rho_ij, {j}))
    return s_i + s_j - von_neumann_entropy(rho_ij)


def _sqrtm_psd(matrix: np.ndarray) -> np.ndarray:
    values, vectors = np.linalg.eigh(matrix)
    roots = np.sqrt(np.clip(values, 0.0, None))
    return (vectors * roots) @ vectors.conj().T


def concurrence(rho_ab: DensityMatrix) -> float:
    """Two-qubit concurrence from the spin-flipped spectrum.

    Uses the Hermitian form R = sqrt(rho) (sy (x) sy) rho* (sy (x) sy)
    sqrt(rho), which is numerically robust near rank deficiency; the
    descending square roots of its spectrum enter max(0, l1 - l2 - l3 - l4).
    """
    if rho_ab.dim != 4:
        raise ValueError("concurrence requires a 4x4 two-qubit state")
    m = rho_ab.matrix
    root = _sqrtm_psd(m)
    r = root @ _YY @ m.conj() @ _YY @ root
    lam = np.sqrt(np.clip(np.linalg.eigvalsh(r)[::-1], 0.0, None))
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def genuine_tripartite_tau(rho_tri: DensityMatrix) -> tuple[float, str]:
    """Minimum bipartition mutual information and its (first) argmin cut."""
    if rho_tri.dim != 8:
        raise ValueError("expected an 8-dimensional tripartite state")
    values = [mutual_information(rho_tri, cut) for _, cut in tripartite_cuts()]
    index = int(np.argmin(values))
    return values[index], CUT_LABELS[index]


def state_information(rho: DensityMatrix) -> float:
    """ln(dim) - S(rho): information content relative to maximal mixing."""
    return math.log(rho.dim) - von_neumann_entropy(rho)


def local_information(rho_tri: DensityMatrix) -> float:
    """Sum of single-party state informations over the layout's parties."""
    total = 0.0
    for label, dim in rho_tri.layout.parts:
        reduced = partial_trace(rho_tri, {label})
        total += math.log(dim) - von_neumann_entropy(reduced)
    return total


@dataclass(frozen=True)
class MonogamyLedger:
    """Decomposition of total state information at one time sample.

    ``residual = total_info - local_info - mu2 - tau`` vanishes exactly
    when the maximizing pair complements the minimizing cut; the ledger
    reports it rather than assuming it, so branch mismatches are visible.
    """

    t: float
    total_info: float
    local_info: float
    mu2: float
    mu2_branch: str
    tau: float
    tau_branch: str
    residual: float
    branch_complementary: bool


def monogamy_ledger(rho_tri: DensityMatrix, t: float) -> MonogamyLedger:
    """Evaluate the monogamy decomposition on one tripartite state."""
    tau, tau_branch = genuine_tripartite_tau(rho_tri)
    pair_values = [pair_mutual_information(rho_tri, (p[0], p[1])) for p in PAIR_LABELS]
    mu2_index = int(np.argmax(pair_values))
    mu2 = pair_values[mu2_index]
    mu2_branch = PAIR_LABELS[mu2_index]
    total = state_information(rho_tri)
    local = local_information(rho_tri)
    return MonogamyLedger(
        t=t,
        total_info=total,
        local_info=local,
        mu2=mu2,
        mu2_branch=mu2_branch,
        tau=tau,
        tau_branch=tau_branch,
        residual=total - local - mu2 - tau,
        branch_complementary=COMPLEMENT_PAIR[tau_branch] == mu2_branch,
    )
