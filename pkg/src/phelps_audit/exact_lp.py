"""Exact rational linear algebra and linear programming.

Everything here works over :class:`fractions.Fraction`.  The LP solver is a
dense two-phase tableau simplex with Bland's rule.  Internally the tableau is
kept fraction-free (integer Bareiss-style pivoting with one shared
denominator), which is considerably faster than pivoting on Fractions and
still exact.

Dual sign conventions, for ``A_eq x = b_eq`` and ``A_ub x <= b_ub``:

* maximize ``c.x``: ``dual_ub >= 0`` and ``A^T u >= c`` on nonnegative
  variables (``= c`` on free ones); value ``= b.u``.
* minimize ``c.x``: ``dual_ub <= 0`` and ``A^T u <= c`` on nonnegative
  variables (``= c`` on free ones); value ``= b.u``.
* infeasible (either sense): a Farkas ray with ``dual_ub >= 0``,
  ``A^T u >= 0`` on nonnegative variables, ``= 0`` on free ones, and
  ``b.u < 0``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError, InvariantViolation

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]


def rational(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats (and decimal strings) are refused: they would smuggle rounding
    into an exact computation.
    """
    if isinstance(x, bool):
        raise InputError(f"booleans are not numbers: {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        raise InputError(f"float {x!r} not accepted; use an exact rational")
    if isinstance(x, str):
        s = x.strip()
        if any(ch in s for ch in ".eE"):
            raise InputError(f"decimal literals not accepted; use p/q (got {x!r})")
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {x!r}") from exc
    raise InputError(f"cannot interpret {x!r} as a rational")


def vector(xs: Iterable) -> Vector:
    return tuple(rational(x) for x in xs)


def matrix(rows: Iterable[Iterable]) -> Matrix:
    return tuple(vector(r) for r in rows)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise InputError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


# ---------------------------------------------------------------------------
# Linear systems
# ---------------------------------------------------------------------------


def rref(rows: Sequence[Sequence[Fraction]], ncols: int | None = None):
    """Reduced row echelon form with first-nonzero pivoting.

    Returns ``(R, pivot_columns)``.  Zero rows are kept at the bottom.
    """
    R = [list(map(Fraction, r)) for r in rows]
    if ncols is None:
        ncols = len(R[0]) if R else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(R):
            break
        p = next((i for i in range(r, len(R)) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[Vector]:
    """Basis of ``{x : rows @ x = 0}``, one vector per free column."""
    R, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -R[i][f]
        basis.append(tuple(x))
    return basis


@dataclass(frozen=True)
class Solution:
    point: Vector
    nullspace_basis: tuple[Vector, ...]


class NoSolution:
    """Marker for an inconsistent linear system."""

    def __repr__(self):
        return "NoSolution()"

    def __eq__(self, other):
        return isinstance(other, NoSolution)

    def __hash__(self):
        return 0


def linear_solve(A: Sequence[Sequence], b: Sequence) -> Solution | NoSolution:
    """Solve ``A x = b`` exactly.

    The particular solution sets every free variable to zero, so callers get
    the same answer every time.
    """
    A = matrix(A)
    b = vector(b)
    if len(A) != len(b):
        raise InputError(f"{len(A)} rows but {len(b)} right-hand sides")
    if not A:
        raise InputError("empty system has no determined width")
    n = len(A[0])
    if any(len(row) != n for row in A):
        raise InputError("ragged matrix")
    aug = [list(row) + [rhs] for row, rhs in zip(A, b)]
    R, pivots = rref(aug, n)
    for row in R[len(pivots):]:
        if row[n] != 0:
            return NoSolution()
    x = [Fraction(0)] * n
    for i, pc in enumerate(pivots):
        x[pc] = R[i][n]
    return Solution(tuple(x), tuple(nullspace(A, n)))


@dataclass(frozen=True)
class Independent:
    def __bool__(self):
        return False


@dataclass(frozen=True)
class Dependence:
    """Nonzero ``c`` with ``sum(c) == 0`` and ``sum(c_i * p_i) == 0``."""

    coefficients: Vector


def affine_dependence(points: Sequence[Sequence]) -> Independent | Dependence:
    pts = [vector(p) for p in points]
    if not pts:
        return Independent()
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise InputError("points have different dimensions")
    if len(set(pts)) != len(pts):
        raise InputError("duplicate points")
    # columns are the lifted points (p, 1)
    stacked = [[p[r] for p in pts] for r in range(d)]
    stacked.append([Fraction(1)] * len(pts))
    basis = nullspace(stacked, len(pts))
    if not basis:
        return Independent()
    return Dependence(basis[0])


# ---------------------------------------------------------------------------
# Linear programming
# ---------------------------------------------------------------------------


class Sense(enum.Enum):
    MAXIMIZE = "maximize"
    MINIMIZE = "minimize"


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LinearProgram:
    """``sense c.x`` subject to ``A_eq x = b_eq``, ``A_ub x <= b_ub``.

    Variables are nonnegative unless flagged in ``free``.
    """

    objective: Vector
    sense: Sense = Sense.MAXIMIZE
    A_eq: Matrix = ()
    b_eq: Vector = ()
    A_ub: Matrix = ()
    b_ub: Vector = ()
    free: tuple[bool, ...] | None = None

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "objective", vector(self.objective))
        set_(self, "A_eq", matrix(self.A_eq))
        set_(self, "b_eq", vector(self.b_eq))
        set_(self, "A_ub", matrix(self.A_ub))
        set_(self, "b_ub", vector(self.b_ub))
        if isinstance(self.sense, str):
            set_(self, "sense", Sense(self.sense))
        n = len(self.objective)
        if n == 0:
            raise InputError("a linear program needs at least one variable")
        free = self.free
        set_(self, "free", (False,) * n if free is None else tuple(bool(f) for f in free))
        if len(self.free) != n:
            raise InputError(f"free flags: expected {n}, got {len(self.free)}")
        for name, A, b in (("eq", self.A_eq, self.b_eq), ("ub", self.A_ub, self.b_ub)):
            if len(A) != len(b):
                raise InputError(f"A_{name} has {len(A)} rows but b_{name} has {len(b)}")
            for i, row in enumerate(A):
                if len(row) != n:
                    raise InputError(f"A_{name} row {i} has {len(row)} entries, expected {n}")

    @property
    def num_vars(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class LpOutcome:
    status: Status
    value: Fraction | None = None
    point: Vector | None = None
    dual_eq: Vector | None = None
    dual_ub: Vector | None = None
    ray: Vector | None = None

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


def _lcm_den(xs: Iterable[Fraction]) -> int:
    m = 1
    for x in xs:
        m = m * x.denominator // math.gcd(m, x.denominator)
    return m


class _Tableau:
    """Fraction-free simplex tableau.

    ``rows[i]`` holds ``D * (B^-1 [A | I | b])[i]`` as Python ints and
    ``obj`` holds ``D`` times the reduced-cost row.  Columns
    ``[0, nreal)`` are structural (split variables and slacks),
    ``[nreal, nreal + m)`` are artificials, the last column is the rhs.
    """

    def __init__(self, rows: list[list[int]], rhs: list[int], nreal: int):
        m = len(rows)
        self.m = m
        self.nreal = nreal
        self.ncols = nreal + m
        self.rows = []
        for i, (row, r) in enumerate(zip(rows, rhs)):
            art = [0] * m
            art[i] = 1
            self.rows.append(row + art + [r])
        self.basis = [nreal + i for i in range(m)]
        self.D = 1
        self.obj: list[int] = [0] * (self.ncols + 1)

    def pivot(self, r: int, c: int) -> None:
        rows, D = self.rows, self.D
        pr = rows[r]
        p = pr[c]
        for i in range(self.m):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f == 0:
                rows[i] = [(x * p) // D for x in row]
            else:
                rows[i] = [(x * p - f * y) // D for x, y in zip(row, pr)]
        f = self.obj[c]
        if f == 0:
            self.obj = [(x * p) // D for x in self.obj]
        else:
            self.obj = [(x * p - f * y) // D for x, y in zip(self.obj, pr)]
        self.basis[r] = c
        if p < 0:
            # keep the shared denominator positive
            self.rows = [[-x for x in row] for row in self.rows]
            self.obj = [-x for x in self.obj]
            p = -p
        self.D = p

    def set_objective(self, cost: list[int]) -> None:
        """Install reduced costs for an integer cost vector over all columns."""
        D = self.D
        obj = [D * c for c in cost] + [0]
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[i]
                obj = [o - cb * x for o, x in zip(obj, row)]
        self.obj = obj

    def run(self, allowed: int) -> int | None:
        """Bland's-rule simplex over columns ``[0, allowed)``.

        Returns ``None`` at optimality, else the entering column whose ratio
        test found no blocking row (unbounded direction).
        """
        rhs = self.ncols
        while True:
            obj = self.obj
            c = next((j for j in range(allowed) if obj[j] > 0), None)
            if c is None:
                return None
            best = None
            for i, row in enumerate(self.rows):
                a = row[c]
                if a <= 0:
                    continue
                if best is None:
                    best = i
                    continue
                brow = self.rows[best]
                # compare row[rhs]/a with brow[rhs]/brow[c]
                lhs = row[rhs] * brow[c]
                rhs_ = brow[rhs] * a
                if lhs < rhs_ or (lhs == rhs_ and self.basis[i] < self.basis[best]):
                    best = i
            if best is None:
                return c
            self.pivot(best, c)

    def basic_values(self) -> list[Fraction]:
        x = [Fraction(0)] * self.ncols
        for i, b in enumerate(self.basis):
            x[b] = Fraction(self.rows[i][self.ncols], self.D)
        return x


def lp_solve(lp: LinearProgram, *, check: bool = True) -> LpOutcome:
    """Solve ``lp`` exactly with the two-phase simplex method.

    With ``check`` (the default) the outcome's certificates are verified
    before returning; a failure raises :class:`InvariantViolation`.
    """
    n = lp.num_vars
    # structural columns: each variable (plus a mirror for free ones), then slacks
    colmap: list[tuple[int, int]] = []  # (original var, sign)
    for j in range(n):
        colmap.append((j, 1))
        if lp.free[j]:
            colmap.append((j, -1))
    n_split = len(colmap)
    m_eq, m_ub = len(lp.A_eq), len(lp.A_ub)
    m = m_eq + m_ub
    nreal = n_split + m_ub

    orig_rows = list(lp.A_eq) + list(lp.A_ub)
    orig_rhs = list(lp.b_eq) + list(lp.b_ub)
    rows: list[list[int]] = []
    rhs: list[int] = []
    row_mult: list[int] = []  # scaled row = row_mult * original row
    for i, (orow, ob) in enumerate(zip(orig_rows, orig_rhs)):
        entries = [orow[j] * s for j, s in colmap]
        slack = [Fraction(0)] * m_ub
        if i >= m_eq:
            slack[i - m_eq] = Fraction(1)
        full = entries + slack
        L = _lcm_den(full + [ob])
        mult = L if ob >= 0 else -L
        rows.append([int(x * mult) for x in full])
        rhs.append(int(ob * mult))
        row_mult.append(mult)

    tab = _Tableau(rows, rhs, nreal)

    # Phase 1: maximize -(sum of artificials)
    cost1 = [0] * nreal + [-1] * m
    tab.set_objective(cost1)
    tab.run(nreal)
    D = tab.D
    phase1 = Fraction(-sum(tab.rows[i][tab.ncols] for i, b in enumerate(tab.basis) if b >= nreal), D)
    if phase1 < 0:
        # reduced cost of artificial k is -1 - y_k
        y = [Fraction(-D - tab.obj[nreal + k], D) for k in range(m)]
        u = [y[i] * row_mult[i] for i in range(m)]
        out = LpOutcome(Status.INFEASIBLE, dual_eq=tuple(u[:m_eq]), dual_ub=tuple(u[m_eq:]))
        if check:
            check_outcome(lp, out)
        return out

    # drive zero-level artificials out where a structural pivot exists
    for r in range(m):
        if tab.basis[r] >= nreal:
            c = next((j for j in range(nreal) if tab.rows[r][j] != 0), None)
            if c is not None:
                tab.pivot(r, c)

    # Phase 2
    sign = 1 if lp.sense is Sense.MAXIMIZE else -1
    Lc = _lcm_den(lp.objective)
    cost2 = [int(lp.objective[j] * s * sign * Lc) for j, s in colmap] + [0] * (m_ub + m)
    tab.set_objective(cost2)
    entering = tab.run(nreal)

    xs = tab.basic_values()

    def to_original(cols: Sequence[Fraction]) -> Vector:
        x = [Fraction(0)] * n
        for k, (j, s) in enumerate(colmap):
            x[j] += s * cols[k]
        return tuple(x)

    if entering is not None:
        d = [Fraction(0)] * tab.ncols
        d[entering] = Fraction(1)
        for i, b in enumerate(tab.basis):
            d[b] = -Fraction(tab.rows[i][entering], tab.D)
        out = LpOutcome(Status.UNBOUNDED, ray=to_original(d))
        if check:
            check_outcome(lp, out)
        return out

    point = to_original(xs)
    D = tab.D
    y = [Fraction(-tab.obj[nreal + k], D * Lc) for k in range(m)]
    u = [sign * y[i] * row_mult[i] for i in range(m)]
    out = LpOutcome(
        Status.OPTIMAL,
        value=dot(lp.objective, point),
        point=point,
        dual_eq=tuple(u[:m_eq]),
        dual_ub=tuple(u[m_eq:]),
    )
    if check:
        check_outcome(lp, out)
    return out


def _transpose_times(lp: LinearProgram, u_eq: Sequence[Fraction], u_ub: Sequence[Fraction]) -> list[Fraction]:
    n = lp.num_vars
    out = [Fraction(0)] * n
    for row, u in zip(lp.A_eq, u_eq):
        if u:
            for j in range(n):
                out[j] += row[j] * u
    for row, u in zip(lp.A_ub, u_ub):
        if u:
            for j in range(n):
                out[j] += row[j] * u
    return out


def check_outcome(lp: LinearProgram, out: LpOutcome) -> None:
    """Verify an outcome's certificates exactly, raising on any violation.

    Optimal: primal feasibility, dual feasibility, equal objective values
    and complementary slackness.  Infeasible: the Farkas inequalities.
    Unbounded: the ray is a feasible improving direction.
    """
    n = lp.num_vars

    def fail(msg):
        raise InvariantViolation(f"LP {out.status.value} certificate: {msg}")

    if out.status is Status.OPTIMAL:
        x = out.point
        for j in range(n):
            if not lp.free[j] and x[j] < 0:
                fail(f"x[{j}] = {x[j]} < 0")
        for i, (row, b) in enumerate(zip(lp.A_eq, lp.b_eq)):
            if dot(row, x) != b:
                fail(f"equality row {i} violated")
        slack = [b - dot(row, x) for row, b in zip(lp.A_ub, lp.b_ub)]
        if any(s < 0 for s in slack):
            fail("inequality row violated")
        if dot(lp.objective, x) != out.value:
            fail("reported value differs from c.x")
        u_eq, u_ub = out.dual_eq, out.dual_ub
        mx = lp.sense is Sense.MAXIMIZE
        if any((u < 0) if mx else (u > 0) for u in u_ub):
            fail("inequality multiplier has the wrong sign")
        aty = _transpose_times(lp, u_eq, u_ub)
        for j in range(n):
            gap = aty[j] - lp.objective[j]
            if lp.free[j]:
                if gap != 0:
                    fail(f"dual equality for free variable {j}")
            elif (gap < 0) if mx else (gap > 0):
                fail(f"dual inequality for variable {j}")
            elif gap != 0 and x[j] != 0:
                fail(f"complementary slackness at variable {j}")
        for i, (s, u) in enumerate(zip(slack, u_ub)):
            if s != 0 and u != 0:
                fail(f"complementary slackness at row {i}")
        if dot(lp.b_eq, u_eq) + dot(lp.b_ub, u_ub) != out.value:
            fail("dual value differs from primal value")
    elif out.status is Status.INFEASIBLE:
        u_eq, u_ub = out.dual_eq, out.dual_ub
        if any(u < 0 for u in u_ub):
            fail("negative inequality multiplier")
        aty = _transpose_times(lp, u_eq, u_ub)
        for j in range(n):
            if (aty[j] != 0) if lp.free[j] else (aty[j] < 0):
                fail(f"column {j} breaks the Farkas system")
        if dot(lp.b_eq, u_eq) + dot(lp.b_ub, u_ub) >= 0:
            fail("b.u is not negative")
    else:
        d = out.ray
        if d is None:
            fail("no ray")
        for j in range(n):
            if not lp.free[j] and d[j] < 0:
                fail(f"ray leaves the nonnegative orthant at {j}")
        if any(dot(row, d) != 0 for row in lp.A_eq):
            fail("ray breaks an equality")
        if any(dot(row, d) > 0 for row in lp.A_ub):
            fail("ray breaks an inequality")
        gain = dot(lp.objective, d)
        if (gain <= 0) if lp.sense is Sense.MAXIMIZE else (gain >= 0):
            fail("ray does not improve the objective")


def feasible_point(A_eq=(), b_eq=(), A_ub=(), b_ub=(), *, nvars: int, free=None) -> LpOutcome:
    """Feasibility problem: zero objective, same certificates as :func:`lp_solve`."""
    lp = LinearProgram([0] * nvars, Sense.MAXIMIZE, A_eq, b_eq, A_ub, b_ub, free)
    return lp_solve(lp)
