"""Exact rational linear programming.

``Rational`` is an alias for :class:`fractions.Fraction`: arbitrary
precision, always stored in lowest terms with a positive denominator, and
every arithmetic operation is exact.  All linear programs in this package
are solved over these rationals, so primal and dual certificates can be
checked with straight equality instead of tolerances.

The solver is a dense two-phase simplex with Bland's anti-cycling pivot
rule.  Variables are nonnegative; constraints may be <=, >= or =.  On an
OPTIMAL result the solution carries a primal vector and one dual value per
constraint, extracted from the final basis, so strong duality is checkable
without a second solve.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import InputError

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)

RationalLike = Union[Fraction, int, str]


class Sense(Enum):
    MAX = "max"
    MIN = "min"


class Relation(Enum):
    LE = "<="
    GE = ">="
    EQ = "="


class LpStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpConstraint:
    """One row: sum(coeff * x[idx]) <relation> rhs."""

    coeffs: tuple[tuple[int, Fraction], ...]
    relation: Relation
    rhs: Fraction


@dataclass(frozen=True)
class LpProblem:
    num_vars: int
    objective: tuple[Fraction, ...]
    sense: Sense
    constraints: tuple[LpConstraint, ...]


@dataclass(frozen=True)
class LpSolution:
    status: LpStatus
    optimum: Fraction | None = None
    primal: tuple[Fraction, ...] = ()
    dual: tuple[Fraction, ...] = ()


def constraint(
    coeffs: Mapping[int, RationalLike] | Iterable[tuple[int, RationalLike]],
    relation: Relation,
    rhs: RationalLike,
) -> LpConstraint:
    """Build a constraint row, merging duplicate variable indices."""
    items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
    merged: dict[int, Fraction] = {}
    for idx, val in items:
        merged[idx] = merged.get(idx, _ZERO) + Fraction(val)
    packed = tuple(sorted((i, v) for i, v in merged.items() if v != 0))
    return LpConstraint(packed, relation, Fraction(rhs))


def lp_problem(
    num_vars: int,
    objective: Iterable[RationalLike],
    sense: Sense,
    constraints: Iterable[LpConstraint],
) -> LpProblem:
    obj = tuple(Fraction(c) for c in objective)
    cons = tuple(constraints)
    problem = LpProblem(num_vars, obj, sense, cons)
    _validate(problem)
    return problem


def _validate(problem: LpProblem) -> None:
    if problem.num_vars < 0:
        raise InputError("num_vars must be nonnegative")
    if len(problem.objective) != problem.num_vars:
        raise InputError(
            f"objective has {len(problem.objective)} entries, expected {problem.num_vars}"
        )
    for row_no, con in enumerate(problem.constraints):
        for idx, _ in con.coeffs:
            if not 0 <= idx < problem.num_vars:
                raise InputError(f"constraint {row_no} references variable {idx}")


def _pivot(rows: list[list[Fraction]], orow: list[Fraction], basis: list[int],
           r: int, c: int) -> None:
    prow = rows[r]
    pv = prow[c]
    if pv != _ONE:
        inv = _ONE / pv
        prow = [x * inv if x else x for x in prow]
        rows[r] = prow
    for i, row in enumerate(rows):
        if i == r:
            continue
        f = row[c]
        if f:
            rows[i] = [a - f * b if b else a for a, b in zip(row, prow)]
    f = orow[c]
    if f:
        orow[:] = [a - f * b if b else a for a, b in zip(orow, prow)]
    basis[r] = c


_MAX_PIVOTS = 500_000


def _run_simplex(rows: list[list[Fraction]], orow: list[Fraction],
                 basis: list[int], allowed: list[int]) -> str:
    """Bland's rule: smallest eligible column, smallest basic index on ties."""
    for _ in range(_MAX_PIVOTS):
        enter = -1
        for j in allowed:
            if orow[j] > 0:
                enter = j
                break
        if enter < 0:
            return "optimal"
        leave = -1
        best: Fraction | None = None
        for i, row in enumerate(rows):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leave]
                ):
                    best = ratio
                    leave = i
        if leave < 0:
            return "unbounded"
        _pivot(rows, orow, basis, leave, enter)
    raise RuntimeError("simplex exceeded pivot limit")


def solve_lp(problem: LpProblem) -> LpSolution:
    """Solve an LP exactly; status plus exact primal/dual certificates.

    Deterministic: identical input always produces the identical solution.
    """
    _validate(problem)
    n = problem.num_vars
    maximize = problem.sense is Sense.MAX
    obj = [c if maximize else -c for c in problem.objective]

    m = len(problem.constraints)
    dense: list[list[Fraction]] = []
    rels: list[Relation] = []
    rhs: list[Fraction] = []
    flipped: list[bool] = []
    for con in problem.constraints:
        row = [_ZERO] * n
        for idx, val in con.coeffs:
            row[idx] = val
        rel, b = con.relation, con.rhs
        if b < 0:
            row = [-v for v in row]
            b = -b
            rel = {Relation.LE: Relation.GE, Relation.GE: Relation.LE,
                   Relation.EQ: Relation.EQ}[rel]
            flipped.append(True)
        else:
            flipped.append(False)
        dense.append(row)
        rels.append(rel)
        rhs.append(b)

    # Column layout: decisions, then one slack/surplus per inequality row,
    # then one artificial per >=/= row.  Artificial columns are kept through
    # phase 2 (never eligible to enter) so dual values can be read off every
    # row's signature column.
    slack_col = [-1] * m
    art_col = [-1] * m
    ncols = n
    for i, rel in enumerate(rels):
        if rel in (Relation.LE, Relation.GE):
            slack_col[i] = ncols
            ncols += 1
    for i, rel in enumerate(rels):
        if rel in (Relation.GE, Relation.EQ):
            art_col[i] = ncols
            ncols += 1

    rows: list[list[Fraction]] = []
    for i in range(m):
        row = dense[i] + [_ZERO] * (ncols - n) + [rhs[i]]
        if slack_col[i] >= 0:
            row[slack_col[i]] = _ONE if rels[i] is Relation.LE else -_ONE
        if art_col[i] >= 0:
            row[art_col[i]] = _ONE
        rows.append(row)

    # Starting basis: slack for <= rows; for >=/= rows prefer a unit decision
    # column (crash basis), falling back to the artificial.
    basis = [-1] * m
    unit_row = [-1] * ncols
    col_hits = [0] * n
    for row in rows:
        for j in range(n):
            if row[j]:
                col_hits[j] += 1
    for j in range(n):
        if col_hits[j] == 1:
            for i in range(m):
                if rows[i][j] == _ONE:
                    unit_row[j] = i
                    break
    claimed = [False] * m
    for i in range(m):
        if rels[i] is Relation.LE:
            basis[i] = slack_col[i]
            claimed[i] = True
    for j in range(n):
        i = unit_row[j]
        if i >= 0 and not claimed[i]:
            basis[i] = j
            claimed[i] = True
    for i in range(m):
        if not claimed[i]:
            basis[i] = art_col[i]

    art_start = ncols - sum(1 for c in art_col if c >= 0)
    allowed = list(range(art_start))

    if any(basis[i] == art_col[i] and art_col[i] >= 0 for i in range(m)):
        orow1 = [_ZERO] * (ncols + 1)
        for i in range(m):
            if basis[i] == art_col[i]:
                row = rows[i]
                for j in range(ncols + 1):
                    if row[j]:
                        orow1[j] += row[j]
        for i in range(m):
            if basis[i] == art_col[i]:
                orow1[art_col[i]] = _ZERO
        _run_simplex(rows, orow1, basis, allowed)
        if orow1[-1] != 0:
            return LpSolution(status=LpStatus.INFEASIBLE)
        # Drive leftover artificials out of the basis where possible; a row
        # with no eligible pivot is redundant and stays inert at zero.
        for i in range(m):
            if basis[i] == art_col[i] and art_col[i] >= 0:
                for j in allowed:
                    if rows[i][j]:
                        _pivot(rows, orow1, basis, i, j)
                        break

    orow2 = [_ZERO] * (ncols + 1)
    orow2[:n] = obj
    for i in range(m):
        b = basis[i]
        cb = obj[b] if b < n else _ZERO
        if cb:
            row = rows[i]
            orow2[:] = [a - cb * v if v else a for a, v in zip(orow2, row)]
    outcome = _run_simplex(rows, orow2, basis, allowed)
    if outcome == "unbounded":
        return LpSolution(status=LpStatus.UNBOUNDED)

    value = -orow2[-1]
    primal = [_ZERO] * n
    for i, b in enumerate(basis):
        if b < n:
            primal[b] = rows[i][-1]

    dual: list[Fraction] = []
    sense_sign = 1 if maximize else -1
    for i in range(m):
        sig = slack_col[i] if rels[i] is Relation.LE else art_col[i]
        y = -orow2[sig]
        if flipped[i]:
            y = -y
        dual.append(y * sense_sign)

    return LpSolution(
        status=LpStatus.OPTIMAL,
        optimum=value if maximize else -value,
        primal=tuple(primal),
        dual=tuple(dual),
    )


def check_certificates(problem: LpProblem, solution: LpSolution) -> bool:
    """Exact verification: primal feasible, dual feasible, objectives equal.

    Returns False on any violation; never raises for a malformed pair.
    """
    if solution.status is not LpStatus.OPTIMAL or solution.optimum is None:
        return False
    x = solution.primal
    y = solution.dual
    if len(x) != problem.num_vars or len(y) != len(problem.constraints):
        return False
    if any(v < 0 for v in x):
        return False

    for con in problem.constraints:
        lhs = sum((val * x[idx] for idx, val in con.coeffs), _ZERO)
        if con.relation is Relation.LE and not lhs <= con.rhs:
            return False
        if con.relation is Relation.GE and not lhs >= con.rhs:
            return False
        if con.relation is Relation.EQ and lhs != con.rhs:
            return False

    cx = sum((c * v for c, v in zip(problem.objective, x)), _ZERO)
    by = sum((con.rhs * yi for con, yi in zip(problem.constraints, y)), _ZERO)
    if cx != solution.optimum or by != solution.optimum:
        return False

    maximize = problem.sense is Sense.MAX
    for con, yi in zip(problem.constraints, y):
        if con.relation is Relation.LE and (yi < 0 if maximize else yi > 0):
            return False
        if con.relation is Relation.GE and (yi > 0 if maximize else yi < 0):
            return False

    reduced = list(problem.objective)
    for con, yi in zip(problem.constraints, y):
        if yi:
            for idx, val in con.coeffs:
                reduced[idx] -= yi * val
    # A^T y >= c for a max program, <= c for a min program.
    if maximize:
        return all(r <= 0 for r in reduced)
    return all(r >= 0 for r in reduced)
