"""Exact feasibility LP: phase-1 simplex with Bland's rule over Fractions.

A system has equality rows ``c.x = d``, inequality rows ``a.x <= b`` and
variables that are either free or constrained to be nonnegative.  An
infeasible answer always carries a Farkas certificate: multipliers ``y``
(nonnegative on inequality rows) such that ``g = y^T [A; C]`` vanishes on free
variables, is nonnegative on nonnegative variables, and ``y^T [b; d] < 0``.
Certificates are re-validated in exact arithmetic before they are returned.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

try:  # tableau arithmetic; gmpy2 rationals are an order of magnitude faster
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction


def _frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


class CertificateError(AssertionError):
    pass


@dataclass
class LinearSystem:
    n_vars: int
    equalities: list[tuple[dict[int, Fraction], Fraction]] = field(default_factory=list)
    inequalities: list[tuple[dict[int, Fraction], Fraction]] = field(default_factory=list)
    nonneg: set[int] = field(default_factory=set)

    def add_var(self, nonneg: bool = False) -> int:
        j = self.n_vars
        self.n_vars += 1
        if nonneg:
            self.nonneg.add(j)
        return j

    def add_vars(self, k: int, nonneg: bool = False) -> list[int]:
        return [self.add_var(nonneg) for _ in range(k)]

    def _clean(self, coeffs) -> dict[int, Fraction]:
        if isinstance(coeffs, Mapping):
            items = coeffs.items()
        else:
            items = enumerate(coeffs)
        out: dict[int, Fraction] = {}
        for j, v in items:
            if not 0 <= j < self.n_vars:
                raise IndexError(f"variable {j} out of range")
            v = Fraction(v)
            if v:
                out[j] = out.get(j, Fraction(0)) + v
        return {j: v for j, v in out.items() if v}

    def add_eq(self, coeffs, rhs, tag=None) -> None:
        self.equalities.append((self._clean(coeffs), Fraction(rhs)))
        self._tag_eq.append(tag)

    def add_le(self, coeffs, rhs, tag=None) -> None:
        self.inequalities.append((self._clean(coeffs), Fraction(rhs)))
        self._tag_le.append(tag)

    def add_ge(self, coeffs, rhs, tag=None) -> None:
        c = self._clean(coeffs)
        self.inequalities.append(({j: -v for j, v in c.items()}, -Fraction(rhs)))
        self._tag_le.append(tag)

    def __post_init__(self):
        self._tag_eq: list[Any] = [None] * len(self.equalities)
        self._tag_le: list[Any] = [None] * len(self.inequalities)
        self.equalities = [(self._clean(c), Fraction(b)) for c, b in self.equalities]
        self.inequalities = [(self._clean(c), Fraction(b)) for c, b in self.inequalities]

    @property
    def row_tags(self) -> list[Any]:
        return self._tag_eq + self._tag_le

    def rows(self) -> list[tuple[dict[int, Fraction], Fraction, bool]]:
        """All rows as ``(coeffs, rhs, is_inequality)``, equalities first."""
        return [(c, b, False) for c, b in self.equalities] + [(c, b, True) for c, b in self.inequalities]

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        if len(x) != self.n_vars:
            return False
        if any(x[j] < 0 for j in self.nonneg):
            return False
        for c, b in self.equalities:
            if sum(v * x[j] for j, v in c.items()) != b:
                return False
        for c, b in self.inequalities:
            if sum(v * x[j] for j, v in c.items()) > b:
                return False
        return True


@dataclass
class FarkasCertificate:
    """Row multipliers proving infeasibility (equality rows first)."""

    multipliers: list[Fraction]

    def combination(self, system: LinearSystem) -> tuple[dict[int, Fraction], Fraction]:
        g: dict[int, Fraction] = {}
        rhs = Fraction(0)
        for y, (c, b, _) in zip(self.multipliers, system.rows()):
            if not y:
                continue
            rhs += y * b
            for j, v in c.items():
                g[j] = g.get(j, Fraction(0)) + y * v
        return {j: v for j, v in g.items() if v}, rhs

    def validate(self, system: LinearSystem) -> bool:
        rows = system.rows()
        if len(self.multipliers) != len(rows):
            return False
        for y, (_, _, ineq) in zip(self.multipliers, rows):
            if ineq and y < 0:
                return False
        g, rhs = self.combination(system)
        for j, v in g.items():
            if j not in system.nonneg or v < 0:
                return False
        return rhs < 0

    def support(self) -> list[int]:
        return [i for i, y in enumerate(self.multipliers) if y]


@dataclass
class LPResult:
    feasible: bool
    witness: Any = None
    certificate: FarkasCertificate | None = None
    solution: list[Fraction] | None = None
    system: LinearSystem | None = None
    extra: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "feasible" if self.feasible else "infeasible"

    def __bool__(self):
        return self.feasible


_stats_lock = threading.Lock()
_stats = {"calls": 0, "feasible": 0, "infeasible": 0, "certificates_validated": 0, "validation_failures": 0}


def lp_stats() -> dict[str, int]:
    with _stats_lock:
        return dict(_stats)


def reset_lp_stats() -> None:
    with _stats_lock:
        for k in _stats:
            _stats[k] = 0


def _bump(**kw):
    with _stats_lock:
        for k, v in kw.items():
            _stats[k] += v


def lp_feasible(system: LinearSystem) -> LPResult:
    """Decide feasibility exactly; returns a witness or a validated certificate."""
    rows = system.rows()
    n = system.n_vars
    # column layout: one column per nonneg var, two per free var, one slack per inequality
    colmap: list[tuple[int, int]] = []  # (var, sign)
    for j in range(n):
        colmap.append((j, 1))
        if j not in system.nonneg:
            colmap.append((j, -1))
    nx = len(colmap)
    var_cols: dict[int, list[tuple[int, int]]] = {}
    for k, (j, s) in enumerate(colmap):
        var_cols.setdefault(j, []).append((k, s))
    m = len(rows)
    slack_col: dict[int, int] = {}
    col = nx
    for i, (_, _, ineq) in enumerate(rows):
        if ineq:
            slack_col[i] = col
            col += 1
    signs = [1 if b >= 0 else -1 for _, b, _ in rows]
    init_basic: list[int] = []
    art_col: dict[int, int] = {}
    for i in range(m):
        if i in slack_col and signs[i] == 1:
            init_basic.append(slack_col[i])
        else:
            art_col[i] = col
            init_basic.append(col)
            col += 1
    ncols = col
    zero = _Q(0)
    tab: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i, (c, b, _) in enumerate(rows):
        row = [zero] * ncols
        sg = signs[i]
        for j, v in c.items():
            for k, s in var_cols[j]:
                row[k] = _Q(sg * s * v.numerator, v.denominator)
        if i in slack_col:
            row[slack_col[i]] = _Q(sg)
        if i in art_col:
            row[art_col[i]] = _Q(1)
        tab.append(row)
        rhs.append(_Q(sg * b.numerator, b.denominator))
    cost = [zero] * ncols
    for i, k in art_col.items():
        cost[k] = _Q(1)
    basis = list(init_basic)
    # reduced costs: c_j - sum over artificial rows of row entries
    red = list(cost)
    for i in art_col:
        r = tab[i]
        for k in range(ncols):
            if r[k]:
                red[k] -= r[k]
    while True:
        enter = next((k for k in range(ncols) if red[k] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = rhs[i] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise RuntimeError("phase-1 LP reported unbounded; this cannot happen")
        _pivot(tab, rhs, red, leave, enter)
        basis[leave] = enter
    arts = set(art_col.values())
    value = sum((rhs[i] for i in range(m) if basis[i] in arts), zero)
    _bump(calls=1)
    if value == 0:
        xq = [zero] * n
        for i, k in enumerate(basis):
            if k < nx:
                j, s = colmap[k]
                xq[j] += s * rhs[i]
        x = [_frac(v) for v in xq]
        if not system.satisfied_by(x):
            raise AssertionError("simplex witness violates the system")
        _bump(feasible=1)
        return LPResult(True, witness=x, solution=x, system=system)
    # dual values y_i = c_B B^{-1}; read off from reduced costs of the initial basis columns
    y = []
    for i in range(m):
        k = init_basic[i]
        y.append(_frac(cost[k] - red[k]))
    mult = [-signs[i] * y[i] for i in range(m)]
    cert = FarkasCertificate(_normalize(mult))
    if not cert.validate(system):
        _bump(infeasible=1, validation_failures=1)
        raise CertificateError("Farkas certificate failed exact validation")
    _bump(infeasible=1, certificates_validated=1)
    return LPResult(False, certificate=cert, system=system)


def _pivot(tab, rhs, red, r, c):
    prow = tab[r]
    inv = 1 / prow[c]
    nz = [k for k, v in enumerate(prow) if v]
    for k in nz:
        prow[k] *= inv
    rhs[r] *= inv
    for i, row in enumerate(tab):
        if i == r:
            continue
        f = row[c]
        if f:
            for k in nz:
                row[k] -= f * prow[k]
            rhs[i] -= f * rhs[r]
    f = red[c]
    if f:
        for k in nz:
            red[k] -= f * prow[k]


def _normalize(mult: list[Fraction]) -> list[Fraction]:
    """Scale multipliers to integers with gcd 1 (a positive rescaling)."""
    from math import gcd, lcm

    den = 1
    for y in mult:
        den = lcm(den, y.denominator)
    ints = [int(y * den) for y in mult]
    g = 0
    for v in ints:
        g = gcd(g, v)
    g = g or 1
    return [Fraction(v, g) for v in ints]


def system_from_dense(
    eq: Iterable[tuple[Sequence, object]] = (),
    le: Iterable[tuple[Sequence, object]] = (),
    n_vars: int | None = None,
    nonneg: Iterable[int] = (),
) -> LinearSystem:
    eq, le = list(eq), list(le)
    if n_vars is None:
        lens = [len(c) for c, _ in eq + le]
        n_vars = max(lens) if lens else 0
    s = LinearSystem(n_vars, nonneg=set(nonneg))
    for c, b in eq:
        s.add_eq(c, b)
    for c, b in le:
        s.add_le(c, b)
    return s
