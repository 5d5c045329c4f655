"""Solving degree, degree falls, and the combined invariant report.

The scans here tie the closed Macaulay rowspaces to the reduced basis:
the solving degree is the least d at which the degree-d closed rowspace
contains every reduced-basis element, a degree fall of f is the least d
whose rowspace contains f, and the last fall degree is the largest fall
over the basis. For degree-compatible orders these satisfy
sd = max(last fall degree, largest basis degree), which the report
asserts; for lex the identity can fail strictly and is only warned
about.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from . import firstfall, regularity
from .errors import DegreeCapExceeded, UsageError
from .groebner import buchberger, ideal_trunc_dim, normal_form
from .macaulay import lazard_closure
from .polyring import TermOrder, format_poly


def default_cap(system):
    """Default degree-scan cap: generous linear headroom over the input."""
    return 3 * system.max_degree() + system.n


class ClosureCache:
    """Shares closed rowspaces and reduced bases across one system's scans."""

    def __init__(self, system, max_degree=60, max_pairs=10**6):
        self.system = system
        self.max_degree = max_degree
        self.max_pairs = max_pairs
        self._closures = {}
        self._bases = {}
        self._lock = threading.Lock()

    def closure(self, order, d):
        """The closed rowspace of the degree-d Macaulay matrix under order."""
        key = (order, d)
        with self._lock:
            hit = self._closures.get(key)
        if hit is not None:
            return hit
        cl = lazard_closure(self.system, d, order)
        with self._lock:
            return self._closures.setdefault(key, cl)

    def basis(self, order):
        """The reduced basis of the system under order."""
        with self._lock:
            hit = self._bases.get(order)
        if hit is not None:
            return hit
        gb = buchberger(self.system, order, max_degree=self.max_degree,
                        max_pairs=self.max_pairs)
        with self._lock:
            return self._bases.setdefault(order, gb)


@dataclass(frozen=True)
class DegreeFallEvent:
    """A polynomial together with the least degree whose rowspace contains it."""

    poly: object
    degree: int
    fall_degree: int

    def __post_init__(self):
        assert self.fall_degree >= self.degree, "fall degree below the polynomial degree"

    @property
    def is_fall(self):
        """True when the rowspace only finds the polynomial above its degree."""
        return self.fall_degree > self.degree

    def to_json(self, names):
        return {
            "poly": format_poly(self.poly, names),
            "degree": self.degree,
            "fall_degree": self.fall_degree,
            "is_fall": self.is_fall,
        }


def solving_degree(system, order=None, cap=None, cache=None):
    """Least d whose closed rowspace contains every reduced-basis element.

    Scans upward from the largest basis degree (a lower bound for any
    order, since the rowspace at degree d sits inside R_{<=d}) and
    raises DegreeCapExceeded with the per-degree trace when the cap is
    passed.
    """
    if order is None:
        order = system.default_order()
    if cap is None:
        cap = default_cap(system)
    if cap < system.max_degree():
        raise UsageError(
            f"cap {cap} is below the largest generator degree {system.max_degree()}"
        )
    if cache is None:
        cache = ClosureCache(system)
    gb = cache.basis(order)
    trace = []
    for d in range(gb.max_degree(), cap + 1):
        cl = cache.closure(order, d)
        missing = sum(1 for g in gb if not cl.contains(g))
        trace.append({"d": d, "dim": cl.dim, "missing": missing})
        if missing == 0:
            return d
    raise DegreeCapExceeded(
        f"solving degree under {order.token(system.names)} exceeds cap {cap}",
        cap, trace=trace,
    )


def degree_fall_of(f, system, cap=None, cache=None, order=None):
    """The fall event of f: the least d whose closed rowspace contains f.

    f must be a nonzero member of the ideal; the scan starts at deg f
    (falls below the degree are impossible) and uses the degrevlex
    rowspaces unless another degree-compatible order is given.
    """
    if f.is_zero():
        raise UsageError("the zero polynomial has no degree fall")
    if order is None:
        order = TermOrder.degrevlex(system.n)
    if not order.degree_compatible:
        raise UsageError("degree falls are defined over degree-compatible orders")
    if cap is None:
        cap = default_cap(system)
    if cache is None:
        cache = ClosureCache(system)
    gb = cache.basis(order)
    if not normal_form(f, gb, order).is_zero():
        raise UsageError("the polynomial is not in the ideal")
    e = f.degree
    trace = []
    for d in range(e, cap + 1):
        cl = cache.closure(order, d)
        trace.append({"d": d, "dim": cl.dim})
        if cl.contains(f):
            return DegreeFallEvent(poly=f, degree=e, fall_degree=d)
    raise DegreeCapExceeded(
        f"no fall for a degree-{e} element up to cap {cap}", cap, trace=trace
    )


def degree_falls(system, cap=None, cache=None, order=None):
    """Fall events for every reduced-basis element."""
    if order is None:
        order = TermOrder.degrevlex(system.n)
    if cache is None:
        cache = ClosureCache(system)
    gb = cache.basis(order)
    return [degree_fall_of(g, system, cap=cap, cache=cache, order=order) for g in gb]


def last_fall_degree_via_gb(system, cap=None, cache=None, order=None):
    """Largest fall degree over basis elements that genuinely fall, 0 if none."""
    events = degree_falls(system, cap=cap, cache=cache, order=order)
    return max((ev.fall_degree for ev in events if ev.is_fall), default=0)


@dataclass(frozen=True)
class EqualityRow:
    """One degree of the equality table: dim V_d against its two comparands."""

    d: int
    dim: int
    dim_next_upto: int
    dim_trunc: int

    @property
    def a(self):
        """V_d = V_{d+1} intersect R_{<=d} (nothing of degree <= d arrives later)."""
        return self.dim == self.dim_next_upto

    @property
    def b(self):
        """V_d = (F)_{<=d} (the rowspace exhausts the ideal up to degree d)."""
        return self.dim == self.dim_trunc

    def to_json(self):
        return {
            "d": self.d,
            "dim": self.dim,
            "dim_next_upto": self.dim_next_upto,
            "dim_trunc": self.dim_trunc,
            "a": self.a,
            "b": self.b,
        }


def _stable_suffix(flags):
    """Least index from which every flag holds through the end, None if the last fails."""
    stable = None
    for d in range(len(flags) - 1, -1, -1):
        if flags[d]:
            stable = d
        else:
            break
    return stable


@dataclass(frozen=True)
class EqualityTable:
    """Per-degree equality checks of V_d against V_{d+1} and (F)_{<=d}."""

    dmax: int
    rows: tuple

    @property
    def stable_from(self):
        """Least d with (a) holding from d through dmax, None if (a) fails at dmax."""
        return _stable_suffix([r.a for r in self.rows])

    @property
    def complete_from(self):
        """Least d with (b) holding through dmax: the last fall degree once the window is long enough."""
        return _stable_suffix([r.b for r in self.rows])

    def pretty(self):
        lines = ["   d  dim V_d   (a)  (b)"]
        for r in self.rows:
            lines.append(
                f"{r.d:4d}  {r.dim:7d}   {'y' if r.a else 'x'}    {'y' if r.b else 'x'}"
            )
        return "\n".join(lines)

    def to_json(self):
        return {
            "dmax": self.dmax,
            "rows": [r.to_json() for r in self.rows],
            "stable_from": self.stable_from,
            "complete_from": self.complete_from,
        }


def degree_equality_table(system, dmax, cache=None):
    """Rows (d, dim V_d, dim(V_{d+1} cut at d), dim (F)_{<=d}) for 0 <= d <= dmax.

    Every row is computed; there is no early stop, so the derived
    stabilization degrees are exact over the requested window. Needs
    closures up to dmax + 1.
    """
    if dmax < 0:
        raise UsageError("the table window must be nonnegative")
    if cache is None:
        cache = ClosureCache(system)
    order = TermOrder.degrevlex(system.n)
    gb = cache.basis(order)
    closures = [cache.closure(order, d) for d in range(dmax + 2)]
    rows = []
    for d in range(dmax + 1):
        rows.append(EqualityRow(
            d=d,
            dim=closures[d].dim,
            dim_next_upto=closures[d + 1].dim_upto_degree(d),
            dim_trunc=ideal_trunc_dim(system, d, order, gb=gb),
        ))
    return EqualityTable(dmax=dmax, rows=tuple(rows))


@dataclass
class OrderReport:
    """Per-order slice of the invariant report."""

    token: str
    degree_compatible: bool
    max_gb_degree: int
    cap: int
    solving_degree: int = None
    identity_ok: bool = None
    warning: str = None

    def to_json(self):
        return {
            "order": self.token,
            "degree_compatible": self.degree_compatible,
            "max_gb_degree": self.max_gb_degree,
            "cap": self.cap,
            "solving_degree": self.solving_degree,
            "identity_ok": self.identity_ok,
            "warning": self.warning,
        }


ALL_PARTS = ("maxgb", "sd", "lfd", "dff", "dreg", "reg", "table")


@dataclass
class InvariantReport:
    """Everything assemble_report computed for one system."""

    system: object
    computed: tuple
    orders: list = field(default_factory=list)
    last_fall_degree: int = None
    falls: list = None
    fall_order_check: bool = None
    first_fall_degree: int = None
    first_fall_searched_to: int = None
    degree_of_regularity: int = None
    regularity: object = None
    table: object = None
    notes: list = field(default_factory=list)

    def to_json(self):
        names = self.system.names
        inv = {"orders": [o.to_json() for o in self.orders]}
        if "lfd" in self.computed:
            inv["last_fall_degree"] = self.last_fall_degree
            inv["falls"] = [ev.to_json(names) for ev in self.falls]
            inv["fall_order_check"] = self.fall_order_check
        if "dff" in self.computed:
            inv["first_fall_degree"] = self.first_fall_degree
            inv["first_fall_searched_to"] = self.first_fall_searched_to
        if "dreg" in self.computed:
            inv["degree_of_regularity"] = self.degree_of_regularity
        if "reg" in self.computed:
            inv["regularity"] = {
                "value": self.regularity.value,
                "certified": self.regularity.certified,
            }
        out = {
            "schema": 1,
            "system": {
                "p": self.system.p,
                "vars": list(names),
                "gens": [format_poly(f, names) for f in self.system.gens],
            },
            "invariants": inv,
            "notes": list(self.notes),
        }
        if self.table is not None:
            out["table"] = self.table.to_json()
        return out


def assemble_report(system, orders=None, cap=None, compute=None, dff_max=None,
                    table_dmax=None, reg_jmax=None,
                    max_rank_flops=regularity.DEFAULT_RANK_FLOPS, cache=None,
                    homvar="x0"):
    """Compute the requested invariants and their cross-checks for one system.

    compute is a subset of ALL_PARTS (default: everything but the
    table). The identity sd = max(last fall degree, largest basis
    degree) is asserted for every degree-compatible order once both
    sides are available; the last fall degree is cross-checked between
    degrevlex and grlex rowspaces.
    """
    if compute is None:
        compute = tuple(p for p in ALL_PARTS if p != "table")
    compute = tuple(compute)
    unknown = sorted(set(compute) - set(ALL_PARTS))
    if unknown:
        raise UsageError(f"unknown invariants {unknown}; choose from {list(ALL_PARTS)}")
    if orders is None:
        orders = [system.default_order()]
    if cap is None:
        cap = default_cap(system)
    if cache is None:
        cache = ClosureCache(system)

    report = InvariantReport(system=system, computed=compute)

    if "lfd" in compute:
        report.falls = degree_falls(system, cap=cap, cache=cache)
        report.last_fall_degree = max(
            (ev.fall_degree for ev in report.falls if ev.is_fall), default=0
        )
        other = last_fall_degree_via_gb(
            system, cap=cap, cache=cache, order=TermOrder.grlex(system.n)
        )
        report.fall_order_check = other == report.last_fall_degree
        if not report.fall_order_check:
            report.notes.append(
                f"last fall degree differs between degrevlex"
                f" ({report.last_fall_degree}) and grlex ({other})"
            )

    if "maxgb" in compute or "sd" in compute:
        for order in orders:
            gb = cache.basis(order)
            orep = OrderReport(
                token=order.token(system.names),
                degree_compatible=order.degree_compatible,
                max_gb_degree=gb.max_degree(),
                cap=cap,
            )
            if "sd" in compute:
                orep.solving_degree = solving_degree(system, order, cap=cap, cache=cache)
                if order.degree_compatible:
                    if report.last_fall_degree is not None:
                        expected = max(report.last_fall_degree, orep.max_gb_degree)
                        orep.identity_ok = orep.solving_degree == expected
                        assert orep.identity_ok, (
                            f"identity violated under {orep.token}:"
                            f" sd = {orep.solving_degree}, last fall ="
                            f" {report.last_fall_degree}, basis degree ="
                            f" {orep.max_gb_degree}"
                        )
                else:
                    orep.warning = (
                        "the identity sd = max(last fall degree, basis degree)"
                        " is not asserted for lex orders"
                    )
            report.orders.append(orep)

    if "dff" in compute:
        report.first_fall_searched_to = firstfall.search_bound(system, dmax=dff_max)
        report.first_fall_degree = firstfall.first_fall_degree(system, dmax=dff_max)

    if "dreg" in compute:
        report.degree_of_regularity = regularity.degree_of_regularity(system)

    if "reg" in compute:
        report.regularity = regularity.cm_regularity(
            system, jmax=reg_jmax, max_rank_flops=max_rank_flops, homvar=homvar
        )

    if "table" in compute:
        if table_dmax is None:
            raise UsageError("the equality table needs an explicit degree window")
        report.table = degree_equality_table(system, table_dmax, cache=cache)

    if (report.degree_of_regularity is not None and report.regularity is not None
            and report.regularity.certified
            and report.degree_of_regularity > report.regularity.value):
        report.notes.append(
            f"degree of regularity {report.degree_of_regularity} exceeds"
            f" regularity {report.regularity.value}"
        )
    if report.degree_of_regularity is not None:
        for orep in report.orders:
            if orep.degree_compatible and orep.solving_degree is not None:
                report.notes.append(
                    f"informational: sd({orep.token}) = {orep.solving_degree},"
                    f" 2 * d_reg - 2 = {2 * report.degree_of_regularity - 2}"
                )
    if (report.first_fall_degree is not None
            and report.degree_of_regularity is not None
            and report.first_fall_degree > report.degree_of_regularity + 1):
        report.notes.append(
            f"first fall degree {report.first_fall_degree} exceeds"
            f" d_reg + 1 = {report.degree_of_regularity + 1}"
            " (expected only without the field equations)"
        )

    return report


def closure_trace(system, dmax, cache=None, falls=None):
    """Per-degree diagnostics of the degrevlex rowspaces up to dmax."""
    if cache is None:
        cache = ClosureCache(system)
    order = TermOrder.degrevlex(system.n)
    gb = cache.basis(order)
    rows = []
    for d in range(dmax + 1):
        cl = cache.closure(order, d)
        events = [ev for ev in (falls or []) if ev.fall_degree == d]
        rows.append({
            "d": d,
            "dim": cl.dim,
            "dim_trunc": ideal_trunc_dim(system, d, order, gb=gb),
            "rows_added": cl.dim - cl.initial_rank,
            "falls": [ev.to_json(system.names) for ev in events],
        })
    return rows
