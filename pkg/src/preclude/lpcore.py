"""Exact rational linear programming and 0-1 branch and bound.

Everything is :class:`fractions.Fraction`; there are no tolerances.  The
simplex is the textbook two-phase tableau method with Bland's rule.  Dual
values are read off the final tableau, so every optimal result carries a
strong-duality certificate.

LPs with more rows than columns (covering programs over all perfect
matchings, odd-cut programs) are solved through their dual, which is much
smaller as a tableau; the primal vector is then recovered from the dual's
multipliers.  The choice depends only on the shape of the input, so results
stay deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_RELATIONS = {"<=": "<=", ">=": ">=", "=": "=", "==": "="}

Number = Union[int, Fraction]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass
class Constraint:
    coeffs: dict[int, Fraction]
    relation: str
    rhs: Fraction

    def activity(self, x: Sequence[Fraction]) -> Fraction:
        return sum((a * x[j] for j, a in self.coeffs.items()), Fraction(0))

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        lhs = self.activity(x)
        if self.relation == "<=":
            return lhs <= self.rhs
        if self.relation == ">=":
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass
class LinearProgram:
    """``min``/``max`` of ``objective · x`` subject to linear rows and bounds.

    Every variable has a finite lower bound (default 0) and an optional upper
    bound.  ``integer[j]`` marks variables that :func:`solve_01` must keep in
    ``{0, 1}``.
    """

    num_vars: int
    objective: list[Fraction] = field(default_factory=list)
    sense: str = "min"
    constraints: list[Constraint] = field(default_factory=list)
    lower: list[Fraction] = field(default_factory=list)
    upper: list[Optional[Fraction]] = field(default_factory=list)
    integer: list[bool] = field(default_factory=list)

    def __post_init__(self):
        n = self.num_vars
        self.objective = [_frac(c) for c in self.objective] or [Fraction(0)] * n
        self.lower = [_frac(v) for v in self.lower] or [Fraction(0)] * n
        self.upper = [None if v is None else _frac(v) for v in self.upper] or [None] * n
        self.integer = list(self.integer) or [False] * n
        if self.sense not in ("min", "max"):
            raise ValueError(f"sense must be 'min' or 'max', got {self.sense!r}")
        for name in ("objective", "lower", "upper", "integer"):
            if len(getattr(self, name)) != n:
                raise ValueError(f"{name} must have length {n}")
        for j in range(n):
            if self.upper[j] is not None and self.upper[j] < self.lower[j]:
                raise ValueError(f"variable {j}: upper bound below lower bound")

    def add_constraint(
        self,
        coeffs: Union[Mapping[int, Number], Sequence[Number]],
        relation: str,
        rhs: Number,
    ) -> int:
        """Append a row; ``coeffs`` is a dense vector or a ``{var: coef}`` map."""
        if relation not in _RELATIONS:
            raise ValueError(f"unknown relation {relation!r}")
        if isinstance(coeffs, Mapping):
            items = coeffs.items()
        else:
            if len(coeffs) != self.num_vars:
                raise ValueError(f"coefficient vector must have length {self.num_vars}")
            items = enumerate(coeffs)
        row = {}
        for j, a in items:
            if not 0 <= j < self.num_vars:
                raise ValueError(f"variable index {j} out of range")
            a = _frac(a)
            if a:
                row[j] = row.get(j, Fraction(0)) + a
        self.constraints.append(Constraint(row, _RELATIONS[relation], _frac(rhs)))
        return len(self.constraints) - 1

    def objective_value(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * v for c, v in zip(self.objective, x)), Fraction(0))

    def is_feasible(self, x: Sequence[Fraction]) -> bool:
        for j, v in enumerate(x):
            if v < self.lower[j] or (self.upper[j] is not None and v > self.upper[j]):
                return False
        return all(c.satisfied_by(x) for c in self.constraints)


@dataclass
class LpSolution:
    status: str
    value: Optional[Fraction] = None
    primal: list[Fraction] = field(default_factory=list)
    dual: list[Fraction] = field(default_factory=list)
    reduced_costs: list[Fraction] = field(default_factory=list)
    nodes: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


# -- tableau simplex ---------------------------------------------------------


def _simplex(rows, rels, rhs, cost, nvars):
    """Solve ``min cost·x`` s.t. ``rows[i]·x rels[i] rhs[i]``, ``x >= 0``.

    ``rows`` are sparse ``{col: coef}`` maps.  Returns ``(status, x, y)``
    where ``y`` are the simplex multipliers of the rows.
    """
    m = len(rows)
    sign = []
    norm_rels = []
    for i in range(m):
        if rhs[i] < 0:
            sign.append(-1)
            norm_rels.append({"<=": ">=", ">=": "<=", "=": "="}[rels[i]])
        else:
            sign.append(1)
            norm_rels.append(rels[i])

    ncol = nvars
    slack_col = [None] * m
    for i in range(m):
        if norm_rels[i] != "=":
            slack_col[i] = ncol
            ncol += 1
    art_start = ncol
    init_col = [None] * m
    for i in range(m):
        if norm_rels[i] == "<=":
            init_col[i] = slack_col[i]
        else:
            init_col[i] = ncol
            ncol += 1
    is_art = [False] * art_start + [True] * (ncol - art_start)

    zero = Fraction(0)
    T = []
    b = []
    for i in range(m):
        r = [zero] * ncol
        s = sign[i]
        for j, a in rows[i].items():
            r[j] = a if s > 0 else -a
        if slack_col[i] is not None:
            r[slack_col[i]] = Fraction(1) if norm_rels[i] == "<=" else Fraction(-1)
        if init_col[i] != slack_col[i]:
            r[init_col[i]] = Fraction(1)
        T.append(r)
        b.append(rhs[i] if sign[i] > 0 else -rhs[i])
    basis = list(init_col)

    def reduced(c):
        d = list(c)
        for i in range(len(T)):
            cb = c[basis[i]]
            if cb:
                row = T[i]
                for j in range(ncol):
                    if row[j]:
                        d[j] -= cb * row[j]
        return d

    def pivot(r, s, d):
        row = T[r]
        p = row[s]
        if p != 1:
            inv = 1 / p
            for j in range(ncol):
                if row[j]:
                    row[j] *= inv
            b[r] *= inv
        nz = [j for j in range(ncol) if row[j]]
        br = b[r]
        for i in range(len(T)):
            if i == r:
                continue
            f = T[i][s]
            if f:
                ri = T[i]
                for j in nz:
                    ri[j] -= f * row[j]
                b[i] -= f * br
        f = d[s]
        if f:
            for j in nz:
                d[j] -= f * row[j]
        basis[r] = s

    def run(d, allowed):
        while True:
            s = next((j for j in range(ncol) if allowed[j] and d[j] < 0), None)
            if s is None:
                return OPTIMAL
            r = None
            best = None
            for i in range(len(T)):
                a = T[i][s]
                if a > 0:
                    ratio = b[i] / a
                    if best is None or ratio < best or (ratio == best and basis[i] < basis[r]):
                        best, r = ratio, i
            if r is None:
                return UNBOUNDED
            pivot(r, s, d)

    row_ids = list(range(m))
    if art_start < ncol:
        c1 = [Fraction(int(a)) for a in is_art]
        d1 = reduced(c1)
        run(d1, [True] * ncol)
        infeas = sum((b[i] for i in range(len(T)) if is_art[basis[i]]), Fraction(0))
        if infeas > 0:
            return INFEASIBLE, None, None
        i = 0
        while i < len(T):
            if is_art[basis[i]]:
                s = next((j for j in range(art_start) if T[i][j]), None)
                if s is None:
                    del T[i], b[i], basis[i], row_ids[i]
                    continue
                pivot(i, s, d1)
            i += 1

    c2 = list(cost) + [zero] * (ncol - nvars)
    d2 = reduced(c2)
    status = run(d2, [not a for a in is_art])
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    x = [zero] * nvars
    for i, j in enumerate(basis):
        if j < nvars:
            x[j] = b[i]
    y = [zero] * m
    for i in row_ids:
        y[i] = -d2[init_col[i]] * sign[i]
    return OPTIMAL, x, y


def _dual_route(rows, rels, rhs, cost, nvars):
    """Solve the same problem as :func:`_simplex` through its dual.

    Returns ``None`` when the dual is infeasible, since the primal status is
    then ambiguous and the caller falls back to the primal route.
    """
    dvars = []  # (row, sign) with y_row = sign * u
    for i, rel in enumerate(rels):
        if rel == ">=":
            dvars.append((i, 1))
        elif rel == "<=":
            dvars.append((i, -1))
        else:
            dvars.append((i, 1))
            dvars.append((i, -1))
    drows = [dict() for _ in range(nvars)]
    for k, (i, s) in enumerate(dvars):
        for j, a in rows[i].items():
            drows[j][k] = a if s > 0 else -a
    dcost = [-rhs[i] if s > 0 else rhs[i] for i, s in dvars]
    status, u, w = _simplex(drows, ["<="] * nvars, list(cost), dcost, len(dvars))
    if status == INFEASIBLE:
        return None
    if status == UNBOUNDED:
        return INFEASIBLE, None, None
    y = [Fraction(0)] * len(rows)
    for k, (i, s) in enumerate(dvars):
        y[i] += s * u[k]
    x = [-v for v in w]
    return OPTIMAL, x, y


def solve_lp(lp: LinearProgram) -> LpSolution:
    """Solve a pure LP exactly.

    ``dual[i]`` is the multiplier of constraint ``i`` and
    ``reduced_costs[j] = objective[j] - sum_i dual[i] * A[i][j]``; together
    they satisfy ``value = rhs·dual + reduced_costs·primal``, with nonzero
    reduced costs only on variables sitting at a bound.
    """
    if any(lp.integer):
        raise ValueError("solve_lp takes a pure LP; use solve_01 for integer variables")
    n = lp.num_vars
    sgn = 1 if lp.sense == "min" else -1
    cost = [sgn * c for c in lp.objective]
    rows, rels, rhs = [], [], []
    for con in lp.constraints:
        shift = sum((a * lp.lower[j] for j, a in con.coeffs.items()), Fraction(0))
        rows.append(dict(con.coeffs))
        rels.append(con.relation)
        rhs.append(con.rhs - shift)
    for j in range(n):
        if lp.upper[j] is not None:
            rows.append({j: Fraction(1)})
            rels.append("<=")
            rhs.append(lp.upper[j] - lp.lower[j])

    result = None
    if len(rows) > n:
        result = _dual_route(rows, rels, rhs, cost, n)
    if result is None:
        result = _simplex(rows, rels, rhs, cost, n)
    status, xs, y = result
    if status != OPTIMAL:
        return LpSolution(status)

    x = [xs[j] + lp.lower[j] for j in range(n)]
    if not lp.is_feasible(x):
        raise AssertionError("simplex returned an infeasible point")
    k = len(lp.constraints)
    dual = [sgn * v for v in y[:k]]
    red = list(lp.objective)
    for con, yi in zip(lp.constraints, dual):
        if yi:
            for j, a in con.coeffs.items():
                red[j] -= yi * a
    return LpSolution(OPTIMAL, lp.objective_value(x), x, dual, red)


# -- 0-1 branch and bound ----------------------------------------------------


def _restrict(lp: LinearProgram, fixed: dict[int, Fraction]):
    """Substitute fixed variables, drop rows made redundant by the bounds.

    Returns ``(sub_lp, free_vars, constant)`` or ``None`` if a row is
    provably violated.
    """
    free = [j for j in range(lp.num_vars) if j not in fixed]
    pos = {j: k for k, j in enumerate(free)}
    const = sum((lp.objective[j] * v for j, v in fixed.items()), Fraction(0))
    sub = LinearProgram(
        len(free),
        [lp.objective[j] for j in free],
        lp.sense,
        lower=[lp.lower[j] for j in free],
        upper=[lp.upper[j] for j in free],
    )
    for con in lp.constraints:
        rhs = con.rhs
        coeffs = {}
        for j, a in con.coeffs.items():
            if j in fixed:
                rhs -= a * fixed[j]
            else:
                coeffs[pos[j]] = a
        lo = hi = Fraction(0)
        for k, a in coeffs.items():
            lb, ub = sub.lower[k], sub.upper[k]
            if a > 0:
                lo = None if lo is None else lo + a * lb
                hi = None if hi is None or ub is None else hi + a * ub
            else:
                hi = None if hi is None else hi + a * lb
                lo = None if lo is None or ub is None else lo + a * ub
        if con.relation in (">=", "=") and hi is not None and hi < rhs:
            return None
        if con.relation in ("<=", "=") and lo is not None and lo > rhs:
            return None
        if con.relation == ">=" and lo is not None and lo >= rhs:
            continue
        if con.relation == "<=" and hi is not None and hi <= rhs:
            continue
        if con.relation == "=" and not coeffs:
            continue
        sub.constraints.append(Constraint(coeffs, con.relation, rhs))
    return sub, free, const


def solve_01(lp: LinearProgram) -> LpSolution:
    """Optimal 0-1 solution by depth-first branch and bound.

    Bounds come from the LP relaxation.  Branching is on the lowest-index
    fractional integer variable, 0-branch first.  When every variable is
    integral with an integral objective, relaxation bounds are rounded.
    """
    n = lp.num_vars
    for j in range(n):
        if lp.integer[j] and (lp.lower[j] < 0 or lp.upper[j] is None or lp.upper[j] > 1):
            raise ValueError(f"integer variable {j} must be bounded within [0, 1]")
    sgn = 1 if lp.sense == "min" else -1
    relax = LinearProgram(
        n,
        lp.objective,
        lp.sense,
        list(lp.constraints),
        lp.lower,
        lp.upper,
    )
    round_bounds = all(lp.integer) and all(c.denominator == 1 for c in lp.objective)

    best_val = None
    best_x = None
    nodes = 0
    stack = [{}]
    while stack:
        fixed = stack.pop()
        nodes += 1
        restricted = _restrict(relax, fixed)
        if restricted is None:
            continue
        sub, free, const = restricted
        if free:
            sol = solve_lp(sub)
            if sol.status == INFEASIBLE:
                continue
            if sol.status == UNBOUNDED:
                return LpSolution(UNBOUNDED, nodes=nodes)
            bound = sgn * (sol.value + const)
            xs = sol.primal
        else:
            if sub.constraints:
                continue
            bound = sgn * const
            xs = []
        if best_val is not None:
            cutoff = math.ceil(bound) if round_bounds else bound
            if cutoff >= best_val:
                continue
        x = [Fraction(0)] * n
        for j, v in fixed.items():
            x[j] = v
        for k, j in enumerate(free):
            x[j] = xs[k]
        frac = next((j for j in range(n) if lp.integer[j] and x[j].denominator != 1), None)
        if frac is None:
            best_val, best_x = bound, x
            continue
        stack.append({**fixed, frac: Fraction(1)})
        stack.append({**fixed, frac: Fraction(0)})

    if best_x is None:
        return LpSolution(INFEASIBLE, nodes=nodes)
    return LpSolution(OPTIMAL, lp.objective_value(best_x), best_x, nodes=nodes)
