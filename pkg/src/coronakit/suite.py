"""Randomized cross-validation of the closed forms against the oracle.

Two independent routes to every number: structured block assembly on one
side, eigendecomposition of the full corona Laplacian on the other.  The
suite draws seeded random bases and crowns, runs both routes, and reports
worst-case residuals per named check.  All randomness flows from one
``random.Random(seed)``, and the JSON report is byte-stable for a given
parameter set.

Closed-form entry points are deliberately called through the module object
(``closed_form.rv_one_inverse`` and so on) rather than imported names, so a
test harness can monkeypatch a deliberately wrong implementation and watch
the verdict flip.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field

import numpy as np

from . import closed_form
from .corona import r_edge_corona, r_vertex_corona
from .graphs import Graph, laplacian, serialize_edge_list
from .linalg import (
    block_one_inverse,
    max_abs,
    pseudo_group_inverse,
    shifted_rank_one_inverse,
    verify_one_inverse,
)
from .resistance import (
    cut_vertex_check,
    edge_sum_check,
    kirchhoff_from_one_inverse,
    kirchhoff_index,
    neighbor_recursion_check,
    resistance_matrix,
)

SCHEMA = "corona-suite-report/1"

# Residual tolerances, one entry per named check.  Identity-level checks are
# exact linear algebra and sit at machine precision; pair and Kirchhoff
# comparisons go through two eigendecompositions and get more headroom.
IDENTITY_TOLERANCES: dict[str, float] = {
    "group_inverse_nullvector": 1e-9,
    "block_one_inverse_scaled": 1e-8,
    "kirchhoff_two_routes": 1e-8,
    "edge_resistance_sum": 1e-8,
    "neighbor_recursion": 1e-8,
    "shifted_inverse_scaled": 1e-8,
    "cut_vertex_additivity": 1e-8,
}

INSTANCE_TOLERANCES: dict[str, float] = {
    "one_inverse_scaled": 1e-8,
    "pair_dispatch_max": 1e-8,
    "pair_inverse_max": 1e-8,
    "schur_defect": 1e-12,
    "complement_defect": 1e-12,
    "crown_trace_defect": 1e-8,
    "ones_shift_defect": 1e-8,
    "kf_rel_err": 1e-6,
    "kf_expanded_dev": 1e-8,
}


def graph_digest(g: Graph) -> str:
    """Short stable identifier: sha256 of the canonical edge list."""
    return hashlib.sha256(serialize_edge_list(g).encode("ascii")).hexdigest()[:12]


# ---------------------------------------------------------------------------
# Random generators


def random_connected_graph(
    rng: random.Random, n_min: int = 2, n_max: int = 6, m_max: int | None = None
) -> Graph:
    """Connected graph with uniform order in [n_min, n_max].

    A random attachment tree guarantees connectivity; extra edges are then
    sampled without replacement up to the target count.  ``m_max`` caps the
    edge count (never below the n - 1 a tree needs); when omitted the cap is
    n + 5, enough slack for cycles without blowing up corona sizes.
    """
    if not 1 <= n_min <= n_max:
        raise ValueError(f"need 1 <= n_min <= n_max, got {n_min}, {n_max}")
    n = rng.randint(n_min, n_max)
    if n == 1:
        return Graph(1, ())
    edges: set[tuple[int, int]] = set()
    for v in range(1, n):
        edges.add((rng.randrange(v), v))
    cap = min(n * (n - 1) // 2, m_max if m_max is not None else n + 5)
    target = rng.randint(n - 1, max(n - 1, cap))
    spare = sorted(
        (u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges
    )
    extra = rng.sample(spare, min(target - len(edges), len(spare)))
    return Graph(n, tuple(sorted(edges | set(extra))))


def random_crown(rng: random.Random, t_max: int = 3) -> Graph:
    """Crown graph of random order in [0, t_max] with independent 1/2 edges.

    Crowns may be empty or disconnected; nothing in the closed forms needs
    them connected.
    """
    t = rng.randint(0, t_max)
    edges = tuple(
        (u, v) for u in range(t) for v in range(u + 1, t) if rng.random() < 0.5
    )
    return Graph(t, edges)


def random_crowns(rng: random.Random, count: int, t_max: int = 3) -> tuple[Graph, ...]:
    return tuple(random_crown(rng, t_max) for _ in range(count))


# ---------------------------------------------------------------------------
# Identity battery: identities that hold for every connected graph


def identity_residuals(g: Graph, rng: random.Random) -> dict[str, float]:
    """Residual per named identity, evaluated on one connected graph.

    The block-inverse and shifted-inverse draws use the rng so the battery
    covers a different split and shift on every graph.
    """
    n = g.n
    lap = laplacian(g)
    ls = pseudo_group_inverse(lap)
    out: dict[str, float] = {}

    out["group_inverse_nullvector"] = max_abs(ls @ np.ones(n))

    if n >= 2:
        k = rng.randint(1, n - 1)
        x = block_one_inverse(lap[:k, :k], lap[:k, k:], lap[k:, k:])
        out["block_one_inverse_scaled"] = verify_one_inverse(lap, x) / max(
            1.0, max_abs(lap)
        )
        out["kirchhoff_two_routes"] = abs(
            kirchhoff_from_one_inverse(ls) - kirchhoff_from_one_inverse(x)
        )

        out["edge_resistance_sum"] = edge_sum_check(g)

        pairs = {tuple(sorted(rng.sample(range(n), 2))) for _ in range(3)}
        out["neighbor_recursion"] = max(
            neighbor_recursion_check(g, i, j) for i, j in pairs
        )

        # Cut-vertex additivity on a corona built from this graph: pendant
        # crown vertices reach the rest only through their host, so the
        # host splits the resistance exactly.
        hosts = rng.sample(range(n), 2)
        crowns = tuple(
            Graph(1, ()) if v in hosts else Graph(0, ()) for v in range(n)
        )
        built = r_vertex_corona(g, crowns)
        first, second = sorted(hosts)
        pendant = built.partition.crowns[first][0]
        out["cut_vertex_additivity"] = cut_vertex_check(
            built.graph, pendant, first, second
        )

    shift_h = random_crown(rng, 4)
    a = 0.5 + 1.5 * rng.random()
    b = rng.uniform(0.1, 2.0 * max(shift_h.n, 1))
    if abs(b - shift_h.n) < 0.25:
        b = shift_h.n + 0.5
    if shift_h.n > 0:
        lap_h = laplacian(shift_h)
        x = shifted_rank_one_inverse(lap_h, a, b)
        target = lap_h + a * np.eye(shift_h.n) - (a / b) * np.ones(
            (shift_h.n, shift_h.n)
        )
        out["shifted_inverse_scaled"] = max_abs(target @ x - np.eye(shift_h.n)) / max(
            1.0, max_abs(target)
        )
    return out


def run_identity_battery(
    seed: int, count: int, n_min: int = 2, n_max: int = 10
) -> tuple[dict[str, float], int]:
    """Worst residual per identity over ``count`` random connected graphs."""
    rng = random.Random(seed)
    worst: dict[str, float] = {}
    for _ in range(count):
        g = random_connected_graph(rng, n_min, n_max)
        for name, value in identity_residuals(g, rng).items():
            worst[name] = max(worst.get(name, 0.0), value)
    return worst, count


# ---------------------------------------------------------------------------
# Instance checks: closed forms against the oracle on one corona


@dataclass(frozen=True)
class InstanceReport:
    """One corona instance's closed-form-versus-oracle comparison."""

    kind: str
    case: int
    base_digest: str
    n: int
    m: int
    crown_sizes: tuple[int, ...]
    values: dict[str, float]
    residuals: dict[str, float]
    passed: bool

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "case": self.case,
            "base": {"digest": self.base_digest, "n": self.n, "m": self.m},
            "crown_sizes": list(self.crown_sizes),
            "values": dict(self.values),
            "residuals": dict(self.residuals),
            "passed": self.passed,
        }


def _instance_passed(residuals: dict[str, float]) -> bool:
    return all(
        value <= INSTANCE_TOLERANCES[name] for name, value in residuals.items()
    )


def check_corona_instance(
    kind: str, g: Graph, crowns: tuple[Graph, ...], case: int = 0
) -> InstanceReport:
    """Run every closed-form route on one instance and compare to the oracle.

    Checks, in order: the assembled {1}-inverse really inverts (M X M = M),
    resistances read off that inverse match the oracle entrywise, the
    per-pair dispatch matches the oracle entrywise, the internal Schur and
    crown-block identities hold, and the Kirchhoff index agrees between the
    assembled inverse, the expanded invariant formula, and the oracle.
    """
    if kind == "r_vertex":
        built = r_vertex_corona(g, crowns)
        blocks = closed_form.rv_blocks(g, crowns)
        x = closed_form.rv_one_inverse(g, crowns)
        closed_r = closed_form.rv_resistance_matrix(g, crowns)
        breakdown = closed_form.rv_kirchhoff_terms(g, crowns)
        crown_trace = float(np.trace(blocks.t_inv))
        crown_trace_target = sum(
            closed_form.crown_eigen_sum(c) for c in blocks.crowns
        )
        residual_extra = {
            "crown_trace_defect": abs(crown_trace - crown_trace_target),
        }
    elif kind == "r_edge":
        built = r_edge_corona(g, crowns)
        blocks = closed_form.re_blocks(g, crowns)
        x = closed_form.re_one_inverse(g, crowns)
        closed_r = closed_form.re_resistance_matrix(g, crowns)
        breakdown = closed_form.re_kirchhoff_terms(g, crowns)
        crown_trace = float(np.trace(blocks.s_inv))
        crown_trace_target = sum(
            closed_form.crown_eigen_sum(c) + c.n / 2.0 for c in blocks.crowns
        )
        sizes = np.array(blocks.sizes, dtype=float)
        ones_quad = float(np.ones(blocks.s_inv.shape[0]) @ blocks.s_inv @ np.ones(blocks.s_inv.shape[0]))
        residual_extra = {
            "crown_trace_defect": abs(crown_trace - crown_trace_target),
            "complement_defect": blocks.complement_defect,
            "ones_shift_defect": abs(ones_quad - 0.5 * float(np.sum(sizes * (2.0 + sizes)))),
        }
    else:
        raise ValueError(f"unknown corona kind {kind!r}")

    lap_c = laplacian(built.graph)
    oracle_r = resistance_matrix(built.graph)
    diag = np.diag(x)
    inverse_r = diag[:, None] + diag[None, :] - 2.0 * x
    np.fill_diagonal(inverse_r, 0.0)

    kf_closed = kirchhoff_from_one_inverse(x)
    kf_oracle = kirchhoff_index(built.graph)

    residuals = {
        "one_inverse_scaled": verify_one_inverse(lap_c, x) / max(1.0, max_abs(lap_c)),
        "pair_dispatch_max": max_abs(closed_r - oracle_r),
        "pair_inverse_max": max_abs(inverse_r - oracle_r),
        "schur_defect": blocks.schur_defect,
        "kf_rel_err": abs(kf_closed - kf_oracle) / max(1.0, abs(kf_oracle)),
        "kf_expanded_dev": breakdown.deviation,
    }
    residuals.update(residual_extra)

    return InstanceReport(
        kind=kind,
        case=case,
        base_digest=graph_digest(g),
        n=g.n,
        m=g.m,
        crown_sizes=tuple(c.n for c in crowns),
        values={
            "kf_closed": kf_closed,
            "kf_expanded": breakdown.expanded,
            "kf_oracle": kf_oracle,
        },
        residuals=residuals,
        passed=_instance_passed(residuals),
    )


# ---------------------------------------------------------------------------
# Full suite


@dataclass(frozen=True)
class ComparisonReport:
    """Aggregated suite outcome: identity battery plus per-instance comparisons."""

    seed: int
    cases: int
    n_max: int
    t_max: int
    identity_worst: dict[str, float]
    instances: tuple[InstanceReport, ...] = field(default_factory=tuple)

    @property
    def identities_passed(self) -> bool:
        return all(
            value <= IDENTITY_TOLERANCES[name]
            for name, value in self.identity_worst.items()
        )

    @property
    def verdict(self) -> str:
        instances_ok = all(inst.passed for inst in self.instances)
        return "pass" if (self.identities_passed and instances_ok) else "fail"

    def to_dict(self) -> dict:
        identity = {
            name: {
                "max_residual": value,
                "tolerance": IDENTITY_TOLERANCES[name],
                "passed": value <= IDENTITY_TOLERANCES[name],
            }
            for name, value in self.identity_worst.items()
        }
        return round_floats(
            {
                "schema": SCHEMA,
                "parameters": {
                    "seed": self.seed,
                    "cases": self.cases,
                    "n_max": self.n_max,
                    "t_max": self.t_max,
                },
                "tolerances": {
                    "identity": dict(IDENTITY_TOLERANCES),
                    "instance": dict(INSTANCE_TOLERANCES),
                },
                "identity_checks": identity,
                "instances": [inst.to_dict() for inst in self.instances],
                "summary": {
                    "instances_total": len(self.instances),
                    "instances_passed": sum(1 for i in self.instances if i.passed),
                },
                "verdict": self.verdict,
            }
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def round_floats(obj):
    """12-significant-digit float normalization for byte-stable JSON.

    Also folds numpy scalars (float64, bool_, int64) back to plain Python
    types so json.dumps never chokes on a stray array element.
    """
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, dict):
        return {k: round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v) for v in obj]
    return obj


def run_suite(
    seed: int = 0, cases: int = 20, n_max: int = 5, t_max: int = 3
) -> ComparisonReport:
    """Draw ``cases`` random bases; run the battery and both corona kinds on each.

    Instance bases are capped at 8 edges to keep the brute-force oracle
    cheap; the verdict is "pass" only if every residual everywhere sits
    inside its tolerance.
    """
    if cases < 0:
        raise ValueError("cases must be nonnegative")
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    rng = random.Random(seed)
    identity_worst: dict[str, float] = {}
    instances: list[InstanceReport] = []
    for case in range(cases):
        g = random_connected_graph(rng, 2, n_max, m_max=8)
        for name, value in identity_residuals(g, rng).items():
            identity_worst[name] = max(identity_worst.get(name, 0.0), value)
        instances.append(
            check_corona_instance("r_vertex", g, random_crowns(rng, g.n, t_max), case)
        )
        instances.append(
            check_corona_instance("r_edge", g, random_crowns(rng, g.m, t_max), case)
        )
    return ComparisonReport(
        seed=seed,
        cases=cases,
        n_max=n_max,
        t_max=t_max,
        identity_worst=identity_worst,
        instances=tuple(instances),
    )
