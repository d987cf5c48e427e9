"""Integer program for Max. Common Voter-Subelection, its LP-format export,
and checks of 0/1 assignments against it.

Variables: ``N_v_u`` (voter ``v`` of E matched with voter ``u`` of F) and
``M_c_d`` (candidate ``c`` of E matched with candidate ``d`` of F). The
candidate matching is a full permutation; a voter pair may be matched only if
every candidate sits at the same position in both votes under it.
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass
from typing import Mapping, TextIO

import numpy as np

from .core import Election, InvalidArgumentError


@dataclass(frozen=True)
class Constraint:
    name: str
    terms: tuple[tuple[int, str], ...]  # (coefficient, variable)
    sense: str  # "<=", ">=" or "="
    rhs: int

    def holds(self, values: Mapping[str, int]) -> bool:
        lhs = sum(coef * values[var] for coef, var in self.terms)
        if self.sense == "<=":
            return lhs <= self.rhs
        if self.sense == ">=":
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class IlpModel:
    n1: int
    n2: int
    m: int
    weights: np.ndarray  # w[v, u, c, d] in {0, 1}
    constraints: tuple[Constraint, ...]

    @property
    def voter_vars(self) -> list[str]:
        return [voter_var(v, u) for v in range(self.n1) for u in range(self.n2)]

    @property
    def candidate_vars(self) -> list[str]:
        return [cand_var(c, d) for c in range(self.m) for d in range(self.m)]

    @property
    def variables(self) -> list[str]:
        return self.voter_vars + self.candidate_vars

    @property
    def objective(self) -> list[str]:
        return self.voter_vars


def voter_var(v: int, u: int) -> str:
    return f"N_{v}_{u}"


def cand_var(c: int, d: int) -> str:
    return f"M_{c}_{d}"


def build_ilp(e: Election, f: Election) -> IlpModel:
    if e.m != f.m:
        raise InvalidArgumentError("elections need the same number of candidates")
    m = e.m
    pos_e = np.asarray(e.positions)
    pos_f = np.asarray(f.positions)
    # w[v, u, c, d] = 1 iff v ranks c where u ranks d
    weights = (pos_e[:, None, :, None] == pos_f[None, :, None, :]).astype(np.int8)

    rows = []
    for v in range(e.n):
        rows.append(Constraint(f"voter_e_{v}", tuple((1, voter_var(v, u)) for u in range(f.n)), "<=", 1))
    for u in range(f.n):
        rows.append(Constraint(f"voter_f_{u}", tuple((1, voter_var(v, u)) for v in range(e.n)), "<=", 1))
    for c in range(m):
        rows.append(Constraint(f"cand_e_{c}", tuple((1, cand_var(c, d)) for d in range(m)), "=", 1))
    for d in range(m):
        rows.append(Constraint(f"cand_f_{d}", tuple((1, cand_var(c, d)) for c in range(m)), "=", 1))
    for v in range(e.n):
        for u in range(f.n):
            terms = [(1, cand_var(c, d)) for c in range(m) for d in range(m) if weights[v, u, c, d]]
            terms.append((-m, voter_var(v, u)))
            rows.append(Constraint(f"couple_{v}_{u}", tuple(terms), ">=", 0))
    return IlpModel(e.n, f.n, m, weights, tuple(rows))


def _format_terms(terms) -> str:
    parts = []
    for i, (coef, var) in enumerate(terms):
        sign = "-" if coef < 0 else "+"
        mag = abs(coef)
        body = var if mag == 1 else f"{mag} {var}"
        if i == 0:
            parts.append(body if coef > 0 else f"- {body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def write_lp(model: IlpModel, sink: TextIO | None = None) -> str:
    """Render the model in CPLEX LP format; also written to ``sink`` if given."""
    lines = [
        f"\\ max common voter subelection: {model.n1} x {model.n2} voters, {model.m} candidates",
        "Maximize",
        " obj: " + _format_terms([(1, v) for v in model.objective]),
        "Subject To",
    ]
    for row in model.constraints:
        lines.append(f" {row.name}: {_format_terms(row.terms)} {row.sense} {row.rhs}")
    lines.append("Binary")
    lines.extend(f" {var}" for var in model.variables)
    lines.append("End")
    text = "\n".join(lines) + "\n"
    if sink is not None:
        sink.write(text)
    return text


_TERM_RE = re.compile(r"([+-])?\s*(\d+)?\s*([A-Za-z_][\w.]*)")
_ROW_RE = re.compile(r"^\s*(\w+):\s*(.*?)\s*(<=|>=|=)\s*(-?\d+)\s*$")


@dataclass
class ParsedLp:
    sense: str
    objective: list[tuple[int, str]]
    constraints: list[Constraint]
    binaries: list[str]


def _parse_terms(text: str) -> list[tuple[int, str]]:
    terms = []
    for sign, coef, var in _TERM_RE.findall(text):
        value = int(coef) if coef else 1
        terms.append((-value if sign == "-" else value, var))
    return terms


def read_lp(text: str | TextIO) -> ParsedLp:
    """Parse the subset of LP format emitted by :func:`write_lp`."""
    if not isinstance(text, str):
        text = text.read()
    section = None
    sense = None
    objective: list[tuple[int, str]] = []
    rows: list[Constraint] = []
    binaries: list[str] = []
    for raw in io.StringIO(text):
        line = raw.strip()
        if not line or line.startswith("\\"):
            continue
        low = line.lower()
        if low in ("maximize", "minimize"):
            section = "obj"
            sense = low
            continue
        if low == "subject to":
            section = "rows"
            continue
        if low == "binary":
            section = "bin"
            continue
        if low == "end":
            break
        if section == "obj":
            objective = _parse_terms(line.split(":", 1)[1])
        elif section == "rows":
            match = _ROW_RE.match(line)
            if not match:
                raise ValueError(f"cannot parse constraint line {line!r}")
            name, lhs, op, rhs = match.groups()
            rows.append(Constraint(name, tuple(_parse_terms(lhs)), op, int(rhs)))
        elif section == "bin":
            binaries.extend(line.split())
        else:
            raise ValueError(f"unexpected line outside any section: {line!r}")
    if sense is None:
        raise ValueError("no objective section")
    return ParsedLp(sense, objective, rows, binaries)


def _values(model: IlpModel, n_values, m_values) -> dict[str, int]:
    values = {}
    for names, given, shape, label in (
        (model.voter_vars, n_values, (model.n1, model.n2), "N"),
        (model.candidate_vars, m_values, (model.m, model.m), "M"),
    ):
        if isinstance(given, Mapping):
            for i in range(shape[0]):
                for j in range(shape[1]):
                    if (i, j) not in given:
                        raise InvalidArgumentError(f"missing value for {label}_{i}_{j}")
            flat = [given[i, j] for i in range(shape[0]) for j in range(shape[1])]
        else:
            arr = np.asarray(given)
            if arr.shape != shape:
                raise InvalidArgumentError(f"{label} values must have shape {shape}, got {arr.shape}")
            flat = arr.ravel().tolist()
        for name, value in zip(names, flat):
            if value not in (0, 1):
                raise InvalidArgumentError(f"{name} must be 0 or 1")
            values[name] = int(value)
    return values


def verify_ilp_assignment(model: IlpModel, n_values, m_values) -> int | None:
    """Objective value of a 0/1 assignment, or None if a constraint fails.

    ``n_values`` / ``m_values`` are ``(n1, n2)`` / ``(m, m)`` arrays or
    mappings keyed by index pairs.
    """
    values = _values(model, n_values, m_values)
    if not all(row.holds(values) for row in model.constraints):
        return None
    return sum(values[v] for v in model.objective)


def witness_to_assignment(model: IlpModel, witness) -> tuple[np.ndarray, np.ndarray]:
    n = np.zeros((model.n1, model.n2), dtype=int)
    mm = np.zeros((model.m, model.m), dtype=int)
    for v, u in witness.pi:
        n[v, u] = 1
    for c, d in witness.sigma:
        mm[c, d] = 1
    return n, mm


def brute_force_ilp_optimum(model: IlpModel | ParsedLp) -> int:
    """Maximise the objective over all 0/1 assignments by depth-first search.

    Generic over the constraint rows: a row is checked once all its
    variables are set, and rows with only nonnegative coefficients and an
    upper bound are also checked on partial assignments. Branches that
    cannot beat the incumbent are cut by counting unset objective variables.
    """
    if isinstance(model, IlpModel):
        constraints = list(model.constraints)
        objective = [(1, v) for v in model.objective]
        order = model.candidate_vars + model.voter_vars
    else:
        constraints = model.constraints
        objective = model.objective
        order = sorted(model.binaries, key=lambda v: (not v.startswith("M_"), v))
    index = {v: i for i, v in enumerate(order)}
    obj_coef = [0] * len(order)
    for coef, var in objective:
        if coef < 0:
            raise InvalidArgumentError("exhaustive search expects a nonnegative objective")
        obj_coef[index[var]] += coef
    remaining_gain = [0] * (len(order) + 1)
    for i in range(len(order) - 1, -1, -1):
        remaining_gain[i] = remaining_gain[i + 1] + obj_coef[i]

    # rows fully assigned at variable i; monotone <=/= rows checked early
    closes_at = [[] for _ in order]
    partial_rows = [[] for _ in order]
    for row in constraints:
        idx = [index[var] for _, var in row.terms]
        closes_at[max(idx)].append(row)
        if row.sense in ("<=", "=") and all(coef >= 0 for coef, _ in row.terms):
            for i in set(idx):
                partial_rows[i].append(row)

    values = dict.fromkeys(order, 0)
    best = [-1]

    def partial_ok(row) -> bool:
        return sum(coef * values[var] for coef, var in row.terms) <= row.rhs

    def dfs(i: int, gain: int) -> None:
        if gain + remaining_gain[i] <= best[0]:
            return
        if i == len(order):
            best[0] = gain
            return
        var = order[i]
        for bit in (1, 0):
            values[var] = bit
            if bit and not all(partial_ok(row) for row in partial_rows[i]):
                continue
            if all(row.holds(values) for row in closes_at[i]):
                dfs(i + 1, gain + bit * obj_coef[i])
        values[var] = 0

    dfs(0, 0)
    return best[0]
