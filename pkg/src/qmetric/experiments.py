"""Config-driven experiment runners behind the qmetric command line.

Each runner consumes a JSON config and produces a Report: ordered rows, an
auditable meta block (config hash, tool version, tolerances), and a pass
flag for runs that carry assertions.  Identical configs yield byte-identical
reports.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import __version__
from .errors import ConfigError
from .groups import Group, decode_element, group_from_json
from .metrics import connes_bracket, connes_heuristic, d_2, d_inf
from .opalgebra import AlgebraElement
from .states import (CharacterState, DensityState, StateRep, kappa_bounds,
                     state_from_json)
from .wordlength import enumerate_ball, growth_fit, square_sum_evidence

ORDER_TOL = 1e-9
HEURISTIC_SLACK = 1e-6


@dataclass
class Report:
    experiment: str
    columns: list[str]
    rows: list[list]
    meta: dict = field(default_factory=dict)
    passed: bool = True

    def _cell(self, value) -> str:
        if value is None:
            return ""
        if isinstance(value, (bool, np.bool_)):
            return "true" if value else "false"
        if isinstance(value, (float, np.floating)):
            value = float(value)
            return "inf" if math.isinf(value) else repr(value)
        if isinstance(value, np.integer):
            return str(int(value))
        return str(value)

    def to_csv(self) -> str:
        lines = [f"# experiment={self.experiment}"]
        for key in sorted(self.meta):
            lines.append(f"# {key}={self._cell(self.meta[key])}")
        lines.append(f"# passed={self._cell(self.passed)}")
        lines.append(",".join(self.columns))
        for row in self.rows:
            lines.append(",".join(self._cell(v) for v in row))
        return "\n".join(lines) + "\n"

    @staticmethod
    def _plain(value):
        if isinstance(value, (bool, np.bool_)):
            return bool(value)
        if isinstance(value, (float, np.floating)):
            value = float(value)
            return "inf" if math.isinf(value) else value
        if isinstance(value, np.integer):
            return int(value)
        return value

    def to_json(self) -> str:
        payload = {
            "experiment": self.experiment,
            "meta": {k: self._plain(v) for k, v in self.meta.items()},
            "columns": self.columns,
            "rows": [[self._plain(v) for v in row] for row in self.rows],
            "passed": self.passed,
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def config_hash(config: dict) -> str:
    canonical = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# config helpers
# ---------------------------------------------------------------------------

def _load_spec(value, what: str):
    """A spec field is either an inline object or a path to a JSON file."""
    if isinstance(value, str):
        if not os.path.exists(value):
            raise ConfigError(f"{what}: file {value!r} does not exist")
        with open(value) as fh:
            try:
                return json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"{what}: invalid JSON in {value!r}: {exc}") from exc
    return value


def _require(config: dict, key: str):
    if key not in config:
        raise ConfigError(f"missing required config field {key!r}")
    return config[key]


def _get_group(config: dict) -> Group:
    return group_from_json(_load_spec(_require(config, "group"), "group"))


def _get_radius(config: dict, key: str = "radius") -> int:
    value = _require(config, key)
    if not isinstance(value, int) or value < 1:
        raise ConfigError(f"{key}: must be a positive integer")
    return value


def _get_states(config: dict, group: Group) -> list[tuple[str, StateRep]]:
    raw = _require(config, "states")
    if not isinstance(raw, list) or not raw:
        raise ConfigError("states: must be a non-empty list")
    out = []
    for k, item in enumerate(raw):
        if isinstance(item, dict) and "state" in item:
            label = str(item.get("label", f"state{k}"))
            spec = _load_spec(item["state"], f"states[{k}].state")
        else:
            label = f"state{k}"
            spec = _load_spec(item, f"states[{k}]")
        out.append((label, state_from_json(group, spec)))
    return out


def _base_meta(config: dict, **extra) -> dict:
    meta = {"config_hash": config_hash(config), "version": __version__}
    meta.update(extra)
    return meta


# ---------------------------------------------------------------------------
# runners
# ---------------------------------------------------------------------------

def _ball_rows(group: Group, radius: int):
    ball = enumerate_ball(group, radius)
    shells = ball.shell_sizes
    bound = group.shell_bound
    rows = []
    cumulative = 0
    partial = 0.0
    for k in range(radius + 1):
        cumulative += int(shells[k])
        if k >= 1:
            partial += int(shells[k]) / k ** 2
        tail = bound / k if (bound is not None and k >= 1) else None
        rows.append([k, cumulative, int(shells[k]), partial, tail])
    return ball, rows


def run_ball(config: dict) -> Report:
    group = _get_group(config)
    radius = _get_radius(config)
    _, rows = _ball_rows(group, radius)
    return Report("ball",
                  ["radius", "ball_size", "shell_size", "partial_square_sum",
                   "tail_bound"],
                  rows, _base_meta(config, family=group.family))


def run_growth(config: dict) -> Report:
    group = _get_group(config)
    radius = _get_radius(config)
    if radius < 3:
        raise ConfigError("growth: radius must be >= 3")
    ball, rows = _ball_rows(group, radius)
    fit = growth_fit(ball)
    meta = _base_meta(config, family=group.family, fit_k=fit.fit_k, fit_l=fit.fit_l,
                      residual=fit.residual,
                      shell_bound=fit.shell_bound,
                      shell_bound_provenance=fit.shell_bound_provenance)
    return Report("growth",
                  ["radius", "ball_size", "shell_size", "partial_square_sum",
                   "tail_bound"],
                  rows, meta)


def run_summable(config: dict) -> Report:
    group = _get_group(config)
    radius = _get_radius(config)
    ball = enumerate_ball(group, radius)
    partial, tail = square_sum_evidence(ball)
    _, rows = _ball_rows(group, radius)
    rows = [[row[0], row[3], row[4]] for row in rows if row[0] >= 1]
    meta = _base_meta(config, family=group.family, partial=partial, tail_bound=tail)
    passed = True
    threshold = config.get("require_exceeds")
    if threshold is not None:
        passed = partial > float(threshold)
        meta["threshold"] = float(threshold)
    return Report("summable", ["radius", "partial_square_sum", "tail_bound"],
                  rows, meta, passed)


def _dist_row(group: Group, phi: StateRep, psi: StateRep, radius: int,
              trunc: int, mode: str, support_radius: int):
    ball = enumerate_ball(group, radius)
    growth = growth_fit(ball) if radius >= 3 else None
    lower = d_inf(phi, psi, ball)
    upper = d_2(phi, psi, ball, growth)
    bracket = connes_bracket(phi, psi, ball, growth)
    heuristic = drift = None
    if mode in ("heuristic", "both"):
        result = connes_heuristic(phi, psi, group, support_radius, trunc)
        heuristic, drift = result.estimate, result.sigma_drift
    return [lower.lo, lower.hi, upper.lo, upper.hi, bracket.lo, bracket.hi,
            heuristic, drift, radius, trunc]


def run_dist(config: dict) -> Report:
    group = _get_group(config)
    phi = state_from_json(group, _load_spec(_require(config, "state_a"), "state_a"))
    psi = state_from_json(group, _load_spec(_require(config, "state_b"), "state_b"))
    radius = _get_radius(config)
    trunc = _get_radius(config, "trunc")
    mode = config.get("mode", "both")
    if mode not in ("bracket", "heuristic", "both"):
        raise ConfigError("mode: must be one of bracket, heuristic, both")
    support_radius = config.get("support_radius", min(3, max(1, trunc // 2)))
    if not isinstance(support_radius, int) or support_radius < 1:
        raise ConfigError("support_radius: must be a positive integer")
    if trunc < 2 * support_radius:
        raise ConfigError("trunc: must be at least twice the support radius")
    row = _dist_row(group, phi, psi, radius, trunc, mode, support_radius)
    return Report("dist",
                  ["d_inf_lo", "d_inf_hi", "d2_lo", "d2_hi", "d_lo", "d_hi",
                   "heuristic", "sigma_drift", "radius", "trunc"],
                  [row], _base_meta(config, family=group.family, mode=mode,
                                    support_radius=support_radius))


def run_sandwich(config: dict) -> Report:
    group = _get_group(config)
    states = _get_states(config, group)
    radius = _get_radius(config)
    trunc = config.get("trunc", 40)
    support_radius = config.get("support_radius", 3)
    ball = enumerate_ball(group, radius)
    growth = growth_fit(ball) if radius >= 3 else None
    rows = []
    all_pass = True
    for i in range(len(states)):
        for j in range(i + 1, len(states)):
            (la, phi), (lb, psi) = states[i], states[j]
            lower = d_inf(phi, psi, ball)
            upper = d_2(phi, psi, ball, growth)
            result = connes_heuristic(phi, psi, group, support_radius, trunc)
            divergent = math.isinf(upper.hi)
            ok = (lower.lo <= upper.lo + ORDER_TOL
                  and result.estimate >= lower.lo - HEURISTIC_SLACK
                  and (divergent or result.estimate
                       <= upper.hi + result.sigma_drift + ORDER_TOL))
            all_pass = all_pass and ok
            rows.append([f"{la}|{lb}", lower.lo, result.estimate, upper.lo,
                         upper.hi, result.sigma_drift, divergent, ok])
    meta = _base_meta(config, family=group.family, radius=radius, trunc=trunc,
                      support_radius=support_radius, order_tol=ORDER_TOL,
                      heuristic_slack=HEURISTIC_SLACK)
    return Report("sandwich",
                  ["pair", "d_inf_lo", "heuristic", "d2_lo", "d2_hi",
                   "sigma_drift", "d2_divergent", "pass"],
                  rows, meta, all_pass)


def _sequence_states(config: dict, group: Group) -> list[tuple[int, StateRep]]:
    seq = _require(config, "sequence")
    if not isinstance(seq, dict) or "kind" not in seq:
        raise ConfigError("sequence: must be an object with a 'kind'")
    kind = seq["kind"]
    if kind == "character_inverse_n":
        n_max = seq.get("n_max", 50)
        if group.family != "free_abelian":
            raise ConfigError("character_inverse_n requires a free abelian group")
        return [(n, CharacterState(group, [np.exp(1j / n)] * group.rank))
                for n in range(1, n_max + 1)]
    if kind == "density_inverse_n":
        n_max = seq.get("n_max", 50)
        base_el = decode_element(group, _require(seq, "base_element"))
        step_el = decode_element(group, _require(seq, "step_element"))
        return [(n, DensityState(group, AlgebraElement({base_el: 1.0,
                                                        step_el: 1.0 / n})))
                for n in range(1, n_max + 1)]
    if kind == "explicit":
        states = seq.get("states")
        if not isinstance(states, list) or not states:
            raise ConfigError("sequence.states: must be a non-empty list")
        return [(n + 1, state_from_json(group, _load_spec(s, f"sequence.states[{n}]")))
                for n, s in enumerate(states)]
    raise ConfigError(f"sequence.kind: unknown kind {kind!r}")


def run_converge(config: dict) -> Report:
    group = _get_group(config)
    limit = state_from_json(group, _load_spec(_require(config, "limit_state"),
                                              "limit_state"))
    sequence = _sequence_states(config, group)
    radius = _get_radius(config)
    epsilon = float(_require(config, "epsilon"))
    ball = enumerate_ball(group, radius)
    growth = growth_fit(ball) if radius >= 3 else None
    rows = []
    prev_inf = prev_2 = math.inf
    monotone = True
    for n, state in sequence:
        hi_inf = d_inf(state, limit, ball).hi
        hi_2 = d_2(state, limit, ball, growth).hi
        monotone = monotone and hi_inf <= prev_inf + 1e-12 and hi_2 <= prev_2 + 1e-12
        prev_inf, prev_2 = hi_inf, hi_2
        rows.append([n, hi_inf, hi_2])
    passed = monotone and rows[-1][1] < epsilon
    meta = _base_meta(config, family=group.family, radius=radius, epsilon=epsilon,
                      monotone=monotone)
    return Report("converge", ["n", "d_inf_hi", "d2_hi"], rows, meta, passed)


def run_kappa(config: dict) -> Report:
    group = _get_group(config)
    states = _get_states(config, group)
    radius = _get_radius(config)
    ball = enumerate_ball(group, radius)
    growth = growth_fit(ball) if radius >= 3 else None
    rows = []
    all_pass = True
    kappas = {}
    for label, state in states:
        if not isinstance(state, DensityState):
            raise ConfigError(f"state {label!r}: kappa runs need density states")
        bound = kappa_bounds(state, ball)
        sum_sq = float(sum(abs(c) ** 2 for c in state.rho.coeffs.values()))
        ok = sum_sq <= bound.kappa_upper + ORDER_TOL and bound.kappa_upper >= 1.0
        kappas[label] = bound.kappa_upper
        all_pass = all_pass and ok
        rows.append(["state", label, bound.kappa_lower, bound.kappa_upper,
                     sum_sq, ok])
    labels = [label for label, _ in states]
    for i in range(len(states)):
        for j in range(i + 1, len(states)):
            (la, phi), (lb, psi) = states[i], states[j]
            hi = d_2(phi, psi, ball, growth).hi
            cap = 2.0 * max(kappas[la], kappas[lb])
            ok = hi <= cap + ORDER_TOL
            all_pass = all_pass and ok
            rows.append(["pair", f"{la}|{lb}", hi, cap, None, ok])
    meta = _base_meta(config, family=group.family, radius=radius,
                      order_tol=ORDER_TOL, labels=",".join(labels))
    return Report("kappa",
                  ["row_kind", "label", "value_lo", "value_hi", "sum_sq_coeff",
                   "pass"],
                  rows, meta, all_pass)


RUNNERS: dict[str, Callable[[dict], Report]] = {
    "ball": run_ball,
    "growth": run_growth,
    "summable": run_summable,
    "dist": run_dist,
    "sandwich": run_sandwich,
    "converge": run_converge,
    "kappa": run_kappa,
}
