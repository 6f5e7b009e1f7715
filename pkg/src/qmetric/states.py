"""State representations on the reduced group C*-algebra.

Every metric in this package depends on a state only through its coefficient
function g -> phi(lam_g), so states are represented purely by evaluators:

* the trace (coefficient 1 at the identity, 0 elsewhere),
* the constant positive-definite function 1,
* characters of free abelian groups,
* explicit finite tables (allowed to fail positivity; see pd_check),
* vector states from finitely supported unit vectors,
* trace-bounded states with density rho = b*b / tau(b*b).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from .errors import ConfigError, ResourceError, StateError
from .groups import FreeAbelian, Group, GroupElement, decode_element
from .opalgebra import AlgebraElement, conv_mul, norm_lower, op_matrix, star, trace_coeff
from .wordlength import Ball


class StateRep:
    """Base state evaluator; subclasses implement coeff(g)."""

    kind: str = ""

    def __init__(self, group: Group):
        self.group = group

    def coeff(self, g: GroupElement) -> complex:
        raise NotImplementedError

    def coeff_array(self, ball: Ball) -> np.ndarray:
        """Coefficients over a ball, in ball order."""
        return np.array([self.coeff(g) for g in ball.elements], dtype=complex)


class TraceState(StateRep):
    kind = "trace"

    def coeff(self, g: GroupElement) -> complex:
        self.group.check(g)
        return 1.0 + 0.0j if g == self.group.identity else 0.0 + 0.0j

    def coeff_array(self, ball: Ball) -> np.ndarray:
        out = np.zeros(len(ball), dtype=complex)
        out[ball.index(self.group.identity)] = 1.0
        return out


class OneState(StateRep):
    """The state induced by the constant positive-definite function 1."""

    kind = "one"

    def coeff(self, g: GroupElement) -> complex:
        self.group.check(g)
        return 1.0 + 0.0j

    def coeff_array(self, ball: Ball) -> np.ndarray:
        return np.ones(len(ball), dtype=complex)


class CharacterState(StateRep):
    """Character of a free abelian group: g -> prod z_i^(m_i) with |z_i| = 1."""

    kind = "character"

    def __init__(self, group: Group, z: Sequence[complex]):
        if not isinstance(group, FreeAbelian):
            raise StateError("character states require a free abelian group")
        if len(z) != group.rank:
            raise StateError(f"character needs {group.rank} parameters, got {len(z)}")
        z = np.asarray(z, dtype=complex)
        if np.any(np.abs(np.abs(z) - 1.0) > 1e-9):
            raise StateError("character parameters must lie on the unit circle")
        super().__init__(group)
        self.theta = np.angle(z)

    def coeff(self, g: GroupElement) -> complex:
        self.group.check(g)
        return complex(np.exp(1j * float(np.dot(self.theta, g.z))))

    def coeff_array(self, ball: Ball) -> np.ndarray:
        return np.exp(1j * (ball.z_matrix() @ self.theta))


class TableState(StateRep):
    """Explicit coefficient table with declared extension 0 outside its domain.

    With extend_zero=False a lookup outside the table raises instead.  Tables
    are permitted to violate positivity; pd_check is the validator.
    """

    kind = "table"

    def __init__(self, group: Group, entries: Mapping[GroupElement, complex],
                 extend_zero: bool = True):
        super().__init__(group)
        self.entries = {g: complex(v) for g, v in entries.items()}
        ident = self.entries.get(group.identity)
        if ident is not None and ident != 1:
            raise StateError("table value at the identity must be 1 (states are unital)")
        self.extend_zero = extend_zero

    def coeff(self, g: GroupElement) -> complex:
        self.group.check(g)
        if g == self.group.identity:
            return 1.0 + 0.0j
        value = self.entries.get(g)
        if value is None:
            if self.extend_zero:
                return 0.0 + 0.0j
            raise StateError(f"element {g} is outside the state table")
        return value


class VectorState(StateRep):
    """Vector state from a finitely supported unit vector xi on the group."""

    kind = "vector"

    def __init__(self, group: Group, xi: Mapping[GroupElement, complex]):
        super().__init__(group)
        self.xi = {g: complex(v) for g, v in xi.items() if complex(v) != 0}
        for g in self.xi:
            group.check(g)
        norm_sq = sum(abs(v) ** 2 for v in self.xi.values())
        if abs(norm_sq - 1.0) > 1e-12:
            raise StateError(f"vector state must be normalized; |xi|^2 = {norm_sq}")

    def coeff(self, g: GroupElement) -> complex:
        self.group.check(g)
        g_inv = self.group.inv(g)
        acc = 0.0 + 0.0j
        for h, xh in self.xi.items():
            val = self.xi.get(self.group.mul(g_inv, h))
            if val is not None:
                acc += val * xh.conjugate()
        return acc


class DensityState(StateRep):
    """Trace-bounded state with density rho = b*b / tau(b*b) for finitely supported b."""

    kind = "density"

    def __init__(self, group: Group, b: AlgebraElement):
        super().__init__(group)
        bb = conv_mul(group, star(group, b), b)
        total = trace_coeff(group, bb)
        if abs(total) == 0:
            raise StateError("density generator b must be nonzero")
        self.b = b
        self.rho = bb.scaled(1.0 / total.real)

    def coeff(self, g: GroupElement) -> complex:
        self.group.check(g)
        return self.rho.coeffs.get(self.group.inv(g), 0.0 + 0.0j)


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

@dataclass
class PdCheckResult:
    passed: bool
    min_eigenvalue: float
    max_eigenvalue: float


_PD_MAX_BALL = 2000


def pd_check(state: StateRep, ball: Ball, tol: float = 1e-8) -> PdCheckResult:
    """Positivity certificate: smallest eigenvalue of the Gram matrix over the ball.

    Builds G[i, j] = coeff(g_i^-1 g_j) and passes iff the smallest eigenvalue
    is >= -tol relative to the largest.
    """
    n = len(ball)
    if n > _PD_MAX_BALL:
        raise ResourceError(
            f"Gram matrix would be {n} x {n}; the dense eigensolve is capped at "
            f"{_PD_MAX_BALL}")
    group = ball.group
    gram = np.empty((n, n), dtype=complex)
    for i, gi in enumerate(ball.elements):
        gi_inv = group.inv(gi)
        for j, gj in enumerate(ball.elements):
            gram[i, j] = state.coeff(group.mul(gi_inv, gj))
    gram = (gram + gram.conj().T) / 2.0
    eigs = np.linalg.eigvalsh(gram)
    lo, hi = float(eigs[0]), float(eigs[-1])
    return PdCheckResult(lo >= -tol * max(hi, 1.0), lo, hi)


@dataclass
class KappaBound:
    """Certified interval for a trace-domination constant kappa with phi <= kappa * tau."""

    kappa_lower: float
    kappa_upper: float


def kappa_bounds(state: StateRep, ball: Ball) -> KappaBound:
    """Bracket kappa = |rho|^2: l1 bound from above, truncated norm from below."""
    if not isinstance(state, DensityState):
        raise StateError("kappa bounds are defined for trace-density states")
    upper = float(sum(abs(c) for c in state.rho.coeffs.values())) ** 2
    lower = norm_lower(op_matrix(state.rho, ball)).value ** 2
    return KappaBound(min(lower, upper), upper)


# ---------------------------------------------------------------------------
# JSON encoding
# ---------------------------------------------------------------------------

def _decode_complex(obj, where: str) -> complex:
    if not isinstance(obj, dict) or "re" not in obj:
        raise ConfigError(f"{where}: expected an object with 're' and 'im'")
    return complex(float(obj["re"]), float(obj.get("im", 0.0)))


def _decode_weighted(group: Group, items, where: str) -> dict[GroupElement, complex]:
    out: dict[GroupElement, complex] = {}
    if not isinstance(items, list):
        raise ConfigError(f"{where}: expected a list of {{element, re, im}}")
    for k, item in enumerate(items):
        if not isinstance(item, dict) or "element" not in item:
            raise ConfigError(f"{where}[{k}]: expected an object with 'element'")
        el = decode_element(group, item["element"])
        out[el] = out.get(el, 0.0) + _decode_complex(item, f"{where}[{k}]")
    return out


def algebra_element_from_json(group: Group, items,
                              where: str = "coefficients") -> AlgebraElement:
    return AlgebraElement(_decode_weighted(group, items, where))


def state_from_json(group: Group, data) -> StateRep:
    """Build a state from its JSON specification (dict or JSON text)."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON for state spec: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("state spec must be a JSON object")
    kind = data.get("kind")
    try:
        if kind == "trace":
            return TraceState(group)
        if kind == "one":
            return OneState(group)
        if kind == "character":
            if "z" not in data:
                raise ConfigError("character: missing 'z'")
            z = [_decode_complex(item, f"z[{k}]") for k, item in enumerate(data["z"])]
            return CharacterState(group, z)
        if kind == "vector":
            return VectorState(group, _decode_weighted(group, data.get("support"), "support"))
        if kind == "density":
            return DensityState(group, algebra_element_from_json(group, data.get("b"), "b"))
        if kind == "table":
            entries = _decode_weighted(group, data.get("entries"), "entries")
            return TableState(group, entries, bool(data.get("extend_zero", True)))
    except StateError as exc:
        raise ConfigError(str(exc)) from exc
    raise ConfigError(f"unknown state kind {kind!r}")
