"""Linearization at an operating point and the Kalman rank test."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from crnlie.linalg import columns, in_column_space, matmul, rank
from crnlie.lie import parameter_var, step_field
from crnlie.network import ReactionNetwork
from crnlie.poly import Polynomial, PolyVectorField


@dataclass(frozen=True)
class LinearizedSystem:
    A: tuple[tuple[Fraction, ...], ...]
    B: tuple[tuple[Fraction, ...], ...]
    point: tuple[Fraction, ...]
    k_values: tuple[Fraction, ...]
    residual: tuple[Fraction, ...]
    warnings: tuple[str, ...] = ()

    @property
    def is_equilibrium(self) -> bool:
        return not any(self.residual)

    @property
    def rank_B(self) -> int:
        return rank(columns(self.B), len(self.point))


@dataclass(frozen=True)
class KalmanResult:
    matrix: tuple[tuple[Fraction, ...], ...]
    rank: int


def full_field(net: ReactionNetwork) -> PolyVectorField:
    """Right-hand side ``sum_r k_r g_r`` with symbolic rate coefficients."""
    out = PolyVectorField.zero(net.num_species)
    for r in range(net.num_steps):
        out = out + step_field(net, r).scale(Polynomial.variable(parameter_var(net, r)))
    return out


def linearize_at(net: ReactionNetwork, point: Sequence, k_values: Sequence) -> LinearizedSystem:
    point = tuple(Fraction(v) for v in point)
    k_values = tuple(Fraction(v) for v in k_values)
    if len(point) != net.num_species or len(k_values) != net.num_steps:
        raise ValueError("point needs one value per species and k_values one per step")
    warnings = []
    if any(v <= 0 for v in point):
        warnings.append("operating point is not strictly positive")
    if any(v <= 0 for v in k_values):
        warnings.append("rate coefficients are not all positive")
    values = list(point) + list(k_values)
    rhs = full_field(net)
    A = tuple(tuple(entry.evaluate(values) for entry in row) for row in rhs.jacobian())
    gcols = [step_field(net, r).evaluate(values) for r in range(net.num_steps)]
    B = tuple(tuple(col[m] for col in gcols) for m in range(net.num_species))
    residual = tuple(rhs.evaluate(values))
    if any(residual):
        warnings.append("point is not an equilibrium (nonzero residual)")
    return LinearizedSystem(A, B, point, k_values, residual, tuple(warnings))


def controllability_matrix(A, B) -> list[list[Fraction]]:
    """``[B, AB, ..., A^(n-1) B]`` as a list of rows."""
    n = len(A)
    blocks = [[list(row) for row in B]]
    for _ in range(n - 1):
        blocks.append(matmul(A, blocks[-1]))
    return [sum((blk[i] for blk in blocks), []) for i in range(n)]


def kalman_rank(lin: LinearizedSystem) -> KalmanResult:
    mc = controllability_matrix(lin.A, lin.B)
    return KalmanResult(tuple(tuple(row) for row in mc), rank(columns(mc), len(lin.A)))


def stoichiometric_space_invariant(lin: LinearizedSystem, net: ReactionNetwork) -> bool:
    """True iff ``A`` maps every column of gamma back into the column space of gamma."""
    cols = [net.steps[r].vector for r in range(net.num_steps)]
    images = matmul(lin.A, [list(row) for row in net.gamma])
    return all(in_column_space(c, cols) for c in columns(images))
