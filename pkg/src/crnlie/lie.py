"""Mass-action vector fields and the controllability distribution.

Variables of the polynomial ring: concentration ``x_m`` is variable ``m``
(0-based) and the rate coefficient of step ``r`` is variable ``M + r``.

Generic ("almost everywhere") rank is decided by exact evaluation at random
strictly positive rational points: a set of polynomial fields that is
independent at one point has a nonzero minor polynomial, hence is independent
off a measure-zero variety. A max-rank witness is therefore a proof; falling
short of the target is only a probabilistic statement.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from crnlie.linalg import Echelon, in_column_space
from crnlie.network import InputSet, ReactionNetwork, make_reversible, stoichiometric_rank
from crnlie.poly import Polynomial, PolyVectorField, lie_bracket, monomial_poly

DEFAULT_SEED = 0xC0FFEE
DEFAULT_TRIALS = 5
SAMPLE_RANGE = 10**6

# provenance: a leaf name ("f", "g", "g_k1") or a pair (left, right) meaning [left, right]
Expr = Union[str, tuple]


def expr_label(expr: Expr) -> str:
    if isinstance(expr, str):
        return expr
    left, right = expr
    return f"[{expr_label(left)},{expr_label(right)}]"


def expr_depth(expr: Expr) -> int:
    if isinstance(expr, str):
        return 0
    return 1 + max(expr_depth(expr[0]), expr_depth(expr[1]))


def parameter_var(net: ReactionNetwork, r: int) -> int:
    return net.num_species + r


def variable_names(net: ReactionNetwork) -> list[str]:
    """Display names: ``x1..xM`` for concentrations, rate symbols for parameters."""
    return [f"x{m + 1}" for m in range(net.num_species)] + net.rate_symbols


def step_field(net: ReactionNetwork, r: int) -> PolyVectorField:
    """``g_r(x) = gamma(., r) * x^alpha(., r)``."""
    step = net.steps[r]
    return PolyVectorField.from_direction(step.vector, monomial_poly(step.reactant))


# -- sample points ------------------------------------------------------


@dataclass(frozen=True)
class RationalPoint:
    """Exact values for every concentration and every rate coefficient."""

    x: tuple[Fraction, ...]
    k: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(Fraction(v) for v in self.x))
        object.__setattr__(self, "k", tuple(Fraction(v) for v in self.k))

    def assignment(self) -> list[Fraction]:
        return list(self.x) + list(self.k)

    def as_dict(self, net: ReactionNetwork) -> dict[str, str]:
        out = {net.species[m].name: str(v) for m, v in enumerate(self.x)}
        out.update({net.steps[r].rate_symbol: str(v) for r, v in enumerate(self.k)})
        return out


def _positive_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, SAMPLE_RANGE), rng.randint(1, SAMPLE_RANGE))


def sample_points(net: ReactionNetwork, trials: int, seed: int) -> list[RationalPoint]:
    rng = random.Random(seed)
    return [RationalPoint(tuple(_positive_rational(rng) for _ in range(net.num_species)),
                          tuple(_positive_rational(rng) for _ in range(net.num_steps)))
            for _ in range(trials)]


# -- the control system --------------------------------------------------


@dataclass(frozen=True)
class MassActionSystem:
    network: ReactionNetwork
    inputs: InputSet
    drift: PolyVectorField
    controls: tuple[tuple[str, PolyVectorField], ...]

    @property
    def dim(self) -> int:
        return self.network.num_species


def generator_name(net: ReactionNetwork, inputs: InputSet, r: int) -> str:
    return "g" if len(inputs) == 1 else f"g_{net.steps[r].rate_symbol}"


def build_system(net: ReactionNetwork, inputs: InputSet) -> MassActionSystem:
    drift = PolyVectorField.zero(net.num_species)
    for n in inputs.drift:
        drift = drift + step_field(net, n).scale(Polynomial.variable(parameter_var(net, n)))
    controls = tuple((generator_name(net, inputs, i), step_field(net, i)) for i in inputs)
    return MassActionSystem(net, inputs, drift, controls)


# -- structural bracket classification ------------------------------------


class BracketClass(enum.Enum):
    ZERO = "zero"
    MINUS_I = "minus_i"  # [g_i, g_j] = -kappa_ij x^alpha_j gamma_i
    PLUS_J = "plus_j"  # [g_i, g_j] = +kappa_ji x^alpha_i gamma_j
    MIXED = "mixed"


def _hadamard_nonzero(a: Sequence[int], b: Sequence[int]) -> bool:
    return any(x * y for x, y in zip(a, b))


def structural_bracket_class(net: ReactionNetwork, i: int, j: int) -> BracketClass:
    if i == j:
        raise ValueError("structural_bracket_class needs two distinct steps")
    net._check_step(i)
    net._check_step(j)
    si, sj = net.steps[i], net.steps[j]
    ij = _hadamard_nonzero(si.reactant, sj.vector)  # kappa_{i,j} not identically zero
    ji = _hadamard_nonzero(sj.reactant, si.vector)
    if ij and ji:
        return BracketClass.MIXED
    if ij:
        return BracketClass.MINUS_I
    if ji:
        return BracketClass.PLUS_J
    return BracketClass.ZERO


def kappa(net: ReactionNetwork, i: int, j: int) -> Polynomial:
    """``alpha(., i)^T D_i(x) gamma(., j)``."""
    a = net.steps[i].reactant
    g = net.steps[j].vector
    out = Polynomial()
    for m in range(net.num_species):
        if a[m] and g[m]:
            exps = list(a)
            exps[m] -= 1
            out = out + monomial_poly(exps, coeff=a[m] * g[m])
    return out


def bracket_closed_form(net: ReactionNetwork, i: int, j: int) -> PolyVectorField:
    """Bracket of two step fields via the kappa formula."""
    xi = monomial_poly(net.steps[i].reactant)
    xj = monomial_poly(net.steps[j].reactant)
    first = PolyVectorField.from_direction(net.steps[j].vector, kappa(net, j, i) * xi)
    second = PolyVectorField.from_direction(net.steps[i].vector, kappa(net, i, j) * xj)
    return first - second


# -- distribution generation ---------------------------------------------


@dataclass(frozen=True)
class BasisField:
    expr: Expr
    field: PolyVectorField

    @property
    def label(self) -> str:
        return expr_label(self.expr)

    @property
    def depth(self) -> int:
        return expr_depth(self.expr)


@dataclass
class DistributionBasis:
    fields: list[BasisField]
    points: list[RationalPoint]
    depth_reached: int
    depth_cap: int
    saturated: bool
    pruned: int
    seed: int
    target: int

    @property
    def labels(self) -> list[str]:
        return [f.label for f in self.fields]

    def find(self, label: str) -> BasisField:
        for f in self.fields:
            if f.label == label:
                return f
        raise KeyError(label)


def _step_of(expr: Expr, system: MassActionSystem) -> int | None:
    if isinstance(expr, str):
        for (name, _), r in zip(system.controls, system.inputs.inputs):
            if name == expr:
                return r
    return None


def default_depth_cap(net: ReactionNetwork) -> int:
    return 2 * net.num_species


def generate_distribution(system: MassActionSystem, depth_cap: int | None = None,
                          seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS,
                          extra_points: Iterable[RationalPoint] = ()) -> DistributionBasis:
    """Worklist closure of the inputs under brackets with the drift and each other.

    Candidates are admitted only if they enlarge the span at one of the sample
    points (``trials`` random positive points plus ``extra_points``). The loop
    stops once every sample point reaches the stoichiometric rank, when a full
    sweep admits nothing (saturated), or at ``depth_cap``.
    """
    net = system.network
    if depth_cap is None:
        depth_cap = default_depth_cap(net)
    if depth_cap < 1:
        raise ValueError("depth_cap must be at least 1")
    target = stoichiometric_rank(net)
    points = sample_points(net, trials, seed) + list(extra_points)
    values = [p.assignment() for p in points]
    spans = [Echelon(net.num_species) for _ in points]
    fields: list[BasisField] = []
    pruned = 0

    def admit(expr: Expr, vf: PolyVectorField, force: bool = False) -> bool:
        grew = False
        for span, val in zip(spans, values):
            if span.add(vf.evaluate(val)):
                grew = True
        if grew or force:
            fields.append(BasisField(expr, vf))
        return grew or force

    def done() -> bool:
        return all(s.rank >= target for s in spans)

    f_expr: Expr = "f"
    drift_zero = system.drift.is_zero()
    frontier: list[BasisField] = []
    for name, g in system.controls:
        admit(name, g, force=True)
    frontier = list(fields)
    for name, g in system.controls:
        if drift_zero:
            break
        vf = lie_bracket(system.drift, g)
        if vf.is_zero():
            pruned += 1
        elif admit((f_expr, name), vf):
            frontier.append(fields[-1])
        else:
            pruned += 1

    depth = 1
    saturated = False
    seen = {f.label for f in fields}
    while True:
        if done() or not fields:
            saturated = True
            break
        if depth >= depth_cap:
            break
        depth += 1
        new: list[BasisField] = []
        candidates: list[tuple[Expr, BasisField | None, BasisField]] = []
        for v in frontier:
            if not drift_zero:
                candidates.append(((f_expr, v.expr), None, v))
        frontier_ids = {id(v) for v in frontier}
        for a, u in enumerate(fields):
            for v in fields[a + 1:]:
                if id(u) in frontier_ids or id(v) in frontier_ids:
                    candidates.append(((u.expr, v.expr), u, v))
        for expr, u, v in candidates:
            label = expr_label(expr)
            if label in seen:
                continue
            seen.add(label)
            if u is None:
                vf = lie_bracket(system.drift, v.field)
            else:
                si, sj = _step_of(u.expr, system), _step_of(v.expr, system)
                if si is not None and sj is not None and \
                        structural_bracket_class(net, si, sj) is BracketClass.ZERO:
                    pruned += 1
                    continue
                vf = lie_bracket(u.field, v.field)
            if vf.is_zero():
                pruned += 1
                continue
            if admit(expr, vf):
                new.append(fields[-1])
                if done():
                    break
            else:
                pruned += 1
        if not new:
            saturated = True
            break
        frontier = new

    return DistributionBasis(fields, points, depth, depth_cap, saturated, pruned, seed, target)


# -- rank decisions --------------------------------------------------------


@dataclass(frozen=True)
class PointRank:
    point: RationalPoint
    rank: int
    certificate: tuple[str, ...]  # labels of basis fields spanning the value space


def rank_at_point(basis: DistributionBasis, point: RationalPoint) -> PointRank:
    """Exact rank of the basis fields evaluated at ``point`` (zeros allowed)."""
    val = point.assignment()
    span = Echelon(len(point.x))
    cert = []
    for bf in basis.fields:
        if span.add(bf.field.evaluate(val)):
            cert.append(bf.label)
    return PointRank(point, span.rank, tuple(cert))


@dataclass(frozen=True)
class RankVerdict:
    generic_rank: int
    target: int
    controllable_ae: bool
    trials: tuple[PointRank, ...]
    seed: int
    depth_reached: int
    saturated: bool
    inputs: tuple[int, ...] = ()

    @property
    def status(self) -> str:
        if self.controllable_ae:
            return "controllable a.e."
        if self.saturated:
            return f"not controllable a.e. (probabilistic, seed {self.seed})"
        return f"not shown controllable (depth {self.depth_reached}, saturated=no)"


def generic_rank(basis: DistributionBasis, net: ReactionNetwork, trials: int = DEFAULT_TRIALS,
                 seed: int | None = None) -> RankVerdict:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if seed is None:
        seed = basis.seed
    target = stoichiometric_rank(net)
    results = tuple(rank_at_point(basis, p) for p in sample_points(net, trials, seed))
    best = max(r.rank for r in results)
    return RankVerdict(best, target, best == target, results, seed, basis.depth_reached,
                       basis.saturated)


def analyze_inputs(net: ReactionNetwork, inputs: InputSet, trials: int = DEFAULT_TRIALS,
                   depth_cap: int | None = None, seed: int = DEFAULT_SEED
                   ) -> tuple[DistributionBasis, RankVerdict]:
    """Full pipeline: build the system, close the distribution, decide generic rank."""
    if len(inputs) == 0:
        target = stoichiometric_rank(net)
        empty = DistributionBasis([], sample_points(net, trials, seed), 0,
                                  depth_cap or default_depth_cap(net), True, 0, seed, target)
        v = generic_rank(empty, net, trials, seed)
        return empty, v
    system = build_system(net, inputs)
    basis = generate_distribution(system, depth_cap, seed, trials)
    v = generic_rank(basis, net, trials, seed)
    return basis, RankVerdict(v.generic_rank, v.target, v.controllable_ae, v.trials, v.seed,
                              v.depth_reached, v.saturated, tuple(inputs.inputs))


def rank_at(net: ReactionNetwork, inputs: InputSet, point: RationalPoint,
            trials: int = DEFAULT_TRIALS, depth_cap: int | None = None,
            seed: int = DEFAULT_SEED) -> tuple[DistributionBasis, PointRank]:
    """Pointwise rank with the query point included among the admission points.

    Fields that are redundant at generic points but not at ``point`` (e.g. on
    a coordinate hyperplane) are then kept in the basis.
    """
    if len(inputs) == 0:
        basis = DistributionBasis([], [point], 0, 0, True, 0, seed, stoichiometric_rank(net))
        return basis, rank_at_point(basis, point)
    system = build_system(net, inputs)
    basis = generate_distribution(system, depth_cap, seed, trials, extra_points=[point])
    return basis, rank_at_point(basis, point)


def fields_in_stoichiometric_space(basis: DistributionBasis, net: ReactionNetwork,
                                   point: RationalPoint) -> bool:
    cols = [net.steps[r].vector for r in range(net.num_steps)]
    val = point.assignment()
    return all(in_column_space(bf.field.evaluate(val), cols) for bf in basis.fields)


def reversibility_preserves(net: ReactionNetwork, r: int, trials: int = DEFAULT_TRIALS,
                            seed: int = DEFAULT_SEED) -> bool:
    """Reverse step ``r``, take all steps as inputs, and re-decide controllability."""
    aug = make_reversible(net, r)
    _, verdict = analyze_inputs(aug, InputSet.all_steps(aug), trials, seed=seed)
    return verdict.controllable_ae


def point_from_mappings(net: ReactionNetwork, x: Mapping[str, object] | None = None,
                        k: Mapping[str, object] | None = None, default=1) -> RationalPoint:
    """Build a point from name->value maps; unnamed coordinates take ``default``."""
    x = dict(x or {})
    k = dict(k or {})
    for name in x:
        net.species_index(name)
    for name in k:
        net.step_index(name)
    xs = tuple(Fraction(str(x.get(s.name, default))) for s in net.species)
    ks = tuple(Fraction(str(k.get(s.rate_symbol, default))) for s in net.steps)
    return RationalPoint(xs, ks)
