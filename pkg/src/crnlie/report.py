"""Analysis reports as plain JSON-compatible dicts, plus a text renderer."""

from __future__ import annotations

from crnlie import __version__
from crnlie.lie import DistributionBasis, PointRank, RankVerdict, RationalPoint, variable_names
from crnlie.linearization import KalmanResult, LinearizedSystem, stoichiometric_space_invariant
from crnlie.network import InputSet, ReactionNetwork, stoichiometric_rank
from crnlie.parser import format_step
from crnlie.structure import ConsecutiveCertificate, InitializerReport, MinimalInputSearch

ASSUMPTION = "stoichiometric and kinetic subspaces are assumed to coincide"


def _symbols(net: ReactionNetwork, steps) -> list[str]:
    return [net.steps[r].rate_symbol for r in sorted(steps)]


def _point(net: ReactionNetwork, p: RationalPoint) -> dict[str, str]:
    return p.as_dict(net)


def network_summary(net: ReactionNetwork) -> dict:
    return {
        "species": net.species_names,
        "steps": [{"symbol": s.rate_symbol, "text": format_step(net, r)}
                  for r, s in enumerate(net.steps)],
        "M": net.num_species,
        "R": net.num_steps,
        "rank_gamma": stoichiometric_rank(net),
        "assumption": ASSUMPTION,
    }


def structure_summary(net: ReactionNetwork, init: InitializerReport,
                      cons: ConsecutiveCertificate) -> dict:
    return {
        "initializers": _symbols(net, init.initializers),
        "classes": [_symbols(net, c) for c in init.classes],
        "lower_bound": init.lower_bound,
        "consecutive": {
            "is_consecutive": cons.is_consecutive,
            "order": [net.steps[r].rate_symbol for r in cons.order],
            "failure_reason": cons.failure_reason,
        },
    }


def basis_listing(net: ReactionNetwork, basis: DistributionBasis) -> list[dict]:
    names = variable_names(net)
    return [{"expr": bf.label, "depth": bf.depth,
             "components": [c.format(names) for c in bf.field]} for bf in basis.fields]


def verdict_summary(net: ReactionNetwork, inputs: InputSet, basis: DistributionBasis,
                    verdict: RankVerdict, init: InitializerReport | None = None,
                    critical: tuple[int, ...] | None = None, minimal: bool | None = None) -> dict:
    notes = []
    if init is not None:
        missing = [r for r in init.initializers if r not in inputs.indices]
        for r in missing:
            notes.append(f"initializer {net.steps[r].rate_symbol} is not an input; "
                         "initializers are always critical, so the system is not controllable")
        for c in init.classes:
            if not c & inputs.indices:
                notes.append(f"no input from initializer class {{{', '.join(_symbols(net, c))}}}; "
                             "each class contains a critical step")
    return {
        "inputs": inputs.symbols(net),
        "generic_rank": verdict.generic_rank,
        "target": verdict.target,
        "controllable_ae": verdict.controllable_ae,
        "status": verdict.status,
        "saturated": verdict.saturated,
        "depth_reached": verdict.depth_reached,
        "depth_cap": basis.depth_cap,
        "pruned": basis.pruned,
        "seed": verdict.seed,
        "trials": [{"point": _point(net, t.point), "rank": t.rank} for t in verdict.trials],
        "basis": basis_listing(net, basis),
        "critical_steps": None if critical is None else _symbols(net, critical),
        "minimal": minimal,
        "notes": notes,
    }


def minimal_summary(net: ReactionNetwork, search: MinimalInputSearch) -> dict:
    return {
        "sets": [_symbols(net, v.inputs) for v in search.sets],
        "size": search.size,
        "lower_bound": search.lower_bound,
        "attained": search.attained,
        "partial": search.partial,
        "evaluated": search.evaluated,
    }


def point_rank_summary(net: ReactionNetwork, inputs: InputSet, basis: DistributionBasis,
                       pr: PointRank) -> dict:
    target = stoichiometric_rank(net)
    warnings = []
    if any(v == 0 for v in pr.point.x):
        warnings.append("point has zero coordinates")
    return {
        "inputs": inputs.symbols(net),
        "point": _point(net, pr.point),
        "rank": pr.rank,
        "target": target,
        "controllable_at_point": pr.rank == target,
        "certificate": list(pr.certificate),
        "basis": basis_listing(net, basis),
        "saturated": basis.saturated,
        "depth_reached": basis.depth_reached,
        "warnings": warnings,
    }


def linearization_summary(net: ReactionNetwork, lin: LinearizedSystem, kal: KalmanResult) -> dict:
    fmt = lambda rows: [[str(v) for v in row] for row in rows]  # noqa: E731
    return {
        "point": {net.species[m].name: str(v) for m, v in enumerate(lin.point)},
        "params": {net.steps[r].rate_symbol: str(v) for r, v in enumerate(lin.k_values)},
        "residual": [str(v) for v in lin.residual],
        "is_equilibrium": lin.is_equilibrium,
        "A": fmt(lin.A),
        "B": fmt(lin.B),
        "rank_B": lin.rank_B,
        "rank_gamma": stoichiometric_rank(net),
        "kalman_rank": kal.rank,
        "gamma_invariant_under_A": stoichiometric_space_invariant(lin, net),
        "warnings": list(lin.warnings),
    }


def envelope(net: ReactionNetwork, seed: int, structure: dict | None = None,
             verdicts: list | None = None, minimal_sets: list | None = None, **extra) -> dict:
    doc = {
        "network": network_summary(net),
        "structure": structure,
        "verdicts": verdicts or [],
        "minimal_sets": minimal_sets or [],
        "seed": seed,
        "version": __version__,
    }
    doc.update(extra)
    return doc


# -- text rendering ----------------------------------------------------------


def _set(symbols) -> str:
    return "{" + ", ".join(symbols) + "}"


def render_text(doc: dict) -> str:
    net = doc["network"]
    lines = [f"# {ASSUMPTION}",
             f"network: M={net['M']} species, R={net['R']} steps, rank gamma = {net['rank_gamma']}"]
    for s in net["steps"]:
        lines.append(f"  {s['text']}")
    st = doc.get("structure")
    if st:
        cons = st["consecutive"]
        lines.append(f"initializers: {_set(st['initializers'])}")
        lines.append("initializer classes: "
                     + (", ".join(_set(c) for c in st["classes"]) if st["classes"] else "none"))
        lines.append(f"lower bound on inputs: {st['lower_bound']}")
        if cons["is_consecutive"]:
            lines.append(f"consecutive: yes, order {', '.join(cons['order'])}")
        else:
            lines.append(f"consecutive: no ({cons['failure_reason']})")
    for v in doc.get("verdicts", []):
        lines.append("")
        lines.append(f"inputs {_set(v['inputs'])}: rank {v['generic_rank']}/{v['target']}, "
                     f"{v['status']}")
        lines.append(f"  depth reached {v['depth_reached']} (cap {v['depth_cap']}), "
                     f"saturated={'yes' if v['saturated'] else 'no'}, seed {v['seed']}")
        lines.append("  brackets:")
        for b in v["basis"]:
            lines.append(f"    {b['expr']} = ({', '.join(b['components'])})")
        if v.get("critical_steps") is not None:
            lines.append(f"  critical steps: {_set(v['critical_steps'])}"
                         + ("  (minimal input set)" if v.get("minimal") else ""))
        for n in v["notes"]:
            lines.append(f"  note: {n}")
    ms = doc.get("minimal_search")
    if ms is not None:
        lines.append("")
        sets = ", ".join(_set(s) for s in ms["sets"]) or "none found"
        lines.append(f"minimal input sets: {sets}")
        lines.append(f"  lower bound {ms['lower_bound']} "
                     f"({'attained' if ms['attained'] else 'not attained'}), "
                     f"{ms['evaluated']} sets evaluated"
                     + (", search incomplete (budget exhausted)" if ms["partial"] else ""))
    pr = doc.get("point_rank")
    if pr is not None:
        lines.append("")
        pt = ", ".join(f"{k}={v}" for k, v in pr["point"].items())
        verdict = "controllable" if pr["controllable_at_point"] else "not controllable"
        lines.append(f"at {pt}: rank {pr['rank']}/{pr['target']}, {verdict} at point")
        lines.append(f"  spanned by: {', '.join(pr['certificate']) or 'nothing'}")
        for w in pr["warnings"]:
            lines.append(f"  warning: {w}")
    lin = doc.get("linearization")
    if lin is not None:
        lines.append("")
        lines.append(f"residual: ({', '.join(lin['residual'])})"
                     + ("  equilibrium" if lin["is_equilibrium"] else "  NOT an equilibrium"))
        lines.append(f"rank B = {lin['rank_B']}, rank gamma = {lin['rank_gamma']}, "
                     f"Kalman rank = {lin['kalman_rank']}")
        lines.append(f"A maps Im gamma into itself: {'yes' if lin['gamma_invariant_under_A'] else 'no'}")
        for w in lin["warnings"]:
            lines.append(f"warning: {w}")
    lines.append("")
    lines.append(f"seed {doc['seed']}, crnlie {doc['version']}")
    return "\n".join(lines) + "\n"
