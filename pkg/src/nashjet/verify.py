"""Per-singularity verification battery.

Each check returns a :class:`Verdict`.  Checks whose premises do not hold are
reported as skipped with a reason from :class:`SkipReason`; a failure always
carries a witness that can be re-checked by hand (a column subset, a
derivation tuple, an ideal generator).
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from . import __version__
from .derivations import derivation_space, negative_window, preserves_ideal
from .groebner import MonomialOrder, Reducer, groebner_basis, ideal_equal, quotient_basis
from .jacobian import (
    MinorIdeal,
    MinorLimitError,
    build_jacobian,
    default_minor_cap,
    jacobian_ideal_cubed,
    maximal_minors,
    predicted_minor_degree,
)
from .poly import ParseError, Polynomial, WeightSystem, gradient, parse_polynomial, weighted_degree

DEFAULT_ORDERS = (2, 3)
BUNDLED_CATALOG = Path(__file__).with_name("data") / "catalog.json"


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


class SkipReason(str, Enum):
    HYPOTHESIS_FAILED = "hypothesis-failed"
    ORDER_OUT_OF_SCOPE = "order-out-of-scope"
    CASE_SPLIT = "case-split"
    TOO_LARGE = "too-large"
    INFINITE_QUOTIENT = "infinite-quotient"
    NOT_HOMOGENEOUS = "not-homogeneous"


@dataclass
class Verdict:
    check: str
    status: Status
    n: int | None = None
    reason: SkipReason | None = None
    details: dict = field(default_factory=dict)
    witness: dict | None = None

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def to_dict(self) -> dict:
        out = {"check": self.check, "n": self.n, "status": self.status.value}
        if self.reason is not None:
            out["reason"] = self.reason.value
        out["details"] = self.details
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class SingularityInstance:
    name: str
    f: Polynomial
    weights: WeightSystem
    n_range: tuple[int, ...] = DEFAULT_ORDERS

    def __post_init__(self):
        if len(self.weights) != self.f.nvars:
            raise ValueError(
                f"{self.name}: {len(self.weights)} weights for a polynomial in {self.f.nvars} variables"
            )
        if any(n < 1 for n in self.n_range):
            raise ValueError(f"{self.name}: orders must be >= 1")

    @classmethod
    def from_text(cls, name: str, poly: str, weights: Sequence[int], n_range: Iterable[int] = DEFAULT_ORDERS):
        w = WeightSystem(weights)
        return cls(name, parse_polynomial(poly, len(w)), w, tuple(n_range))

    @property
    def s(self) -> int:
        return self.f.nvars

    @property
    def order(self) -> MonomialOrder:
        return MonomialOrder(self.weights)

    def degree(self) -> int | None:
        wd = weighted_degree(self.f, self.weights)
        return wd.degree if wd is not None and wd.homogeneous else None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "poly": self.f.to_str(),
            "weights": list(self.weights),
            "n_range": list(self.n_range),
        }


class Workspace:
    """Per-instance cache of matrices, minors and quotients."""

    def __init__(self, inst: SingularityInstance, cap: int | None = None):
        self.inst = inst
        self.cap = default_minor_cap() if cap is None else cap
        self._minors: dict[tuple[int, str], MinorIdeal] = {}
        self._jac: dict = {}
        self._quot: dict = {}
        self._hyp: Verdict | None = None

    def jacobian(self, n: int, variant: str = "zero"):
        k = (n, variant)
        if k not in self._jac:
            self._jac[k] = build_jacobian(self.inst.f, n, variant)
        return self._jac[k]

    def minors(self, n: int, variant: str = "zero") -> MinorIdeal:
        k = (n, variant)
        if k not in self._minors:
            self._minors[k] = maximal_minors(self.jacobian(n, variant), self.inst.weights, self.cap)
        return self._minors[k]

    def quotient(self, n: int):
        if n not in self._quot:
            gens = [self.inst.f] + self.minors(n).generators
            self._quot[n] = quotient_basis(gens, self.inst.order)
        return self._quot[n]

    def hypotheses(self) -> Verdict:
        if self._hyp is None:
            self._hyp = check_hypotheses(self.inst)
        return self._hyp


def _ws(inst: SingularityInstance, ws: Workspace | None) -> Workspace:
    return ws if ws is not None else Workspace(inst)


def _skip(check: str, n: int | None, reason: SkipReason, **details) -> Verdict:
    return Verdict(check, Status.SKIPPED, n, reason, details)


def _too_large(check: str, n: int, err: MinorLimitError) -> Verdict:
    return _skip(check, n, SkipReason.TOO_LARGE, subset_count=err.count, cap=err.cap)


# -- checks --------------------------------------------------------------------

def check_hypotheses(inst: SingularityInstance) -> Verdict:
    """Weighted homogeneity, the weight chain ``d >= 2 w_1 >= ... >= 2 w_s > 0``
    (weights sorted descending), a singular point at the origin and
    isolatedness of that singularity."""
    f, w = inst.f, inst.weights
    perm = sorted(range(inst.s), key=lambda i: (-w[i], i))
    sorted_w = [w[i] for i in perm]
    details: dict = {"weights_sorted": sorted_w, "weight_permutation": perm}
    failures = []
    d = inst.degree()
    details["degree"] = d
    if d is None:
        failures.append("not-weighted-homogeneous")
    elif d < 2 * sorted_w[0]:
        failures.append("weight-chain")
        details["weight_chain"] = f"{d} < 2*{sorted_w[0]}"
    low = [m for m in f.monomials() if sum(m) <= 1]
    if low:
        failures.append("not-singular-at-origin")
        details["low_order_terms"] = [list(m) for m in sorted(low)]
    jac = quotient_basis(gradient(f), inst.order)
    details["isolated"] = jac.zero_dimensional
    details["milnor_number"] = jac.total_dim
    if not jac.zero_dimensional:
        failures.append("not-isolated")
    else:
        # product formula for weighted homogeneous isolated singularities
        if d is not None:
            details["milnor_product_formula"] = str(math.prod(Fraction(d, wi) - 1 for wi in w))
        tj = quotient_basis([f] + gradient(f), inst.order)
        details["tjurina_number"] = tj.total_dim
    if failures:
        return Verdict(
            "hypotheses", Status.FAIL, None, None, details,
            {"failed": failures, "jacobian_leading_monomials": [list(m) for m in jac.leading_monomials()]},
        )
    return Verdict("hypotheses", Status.PASS, None, None, details)


def _theorem_guard(check: str, inst: SingularityInstance, n: int, ws: Workspace) -> Verdict | None:
    if n < 2:
        return _skip(check, n, SkipReason.ORDER_OUT_OF_SCOPE, note="stated for n >= 2")
    if not ws.hypotheses().passed:
        return _skip(check, n, SkipReason.HYPOTHESIS_FAILED)
    return None


def check_degree_bound(inst: SingularityInstance, n: int, ws: Workspace | None = None) -> Verdict:
    """Every nonzero maximal minor has weighted degree at least ``deg_w f``."""
    ws = _ws(inst, ws)
    guard = _theorem_guard("degree_bound", inst, n, ws)
    if guard:
        return guard
    try:
        ideal = ws.minors(n)
    except MinorLimitError as err:
        return _too_large("degree_bound", n, err)
    J = ws.jacobian(n)
    d = inst.degree()
    worst = None
    for cols, g in ideal.raw.items():
        wd = weighted_degree(g, inst.weights)
        if worst is None or wd.degree < worst[1]:
            worst = (cols, wd.degree)
        if wd.degree < d:
            return Verdict(
                "degree_bound", Status.FAIL, n, None, {"degree": d},
                {"col_indices": list(cols), "cols": [list(J.cols[j]) for j in cols],
                 "minor": g.to_str(inst.weights), "minor_degree": wd.degree},
            )
    return Verdict(
        "degree_bound", Status.PASS, n, None,
        {"degree": d, "min_minor_degree": worst[1] if worst else None, "nonzero_minors": len(ideal.raw),
         "subsets": J.num_subsets()},
    )


def check_gradedness(inst: SingularityInstance, n: int, ws: Workspace | None = None) -> Verdict:
    """Each nonzero minor is weighted homogeneous of the predicted degree."""
    ws = _ws(inst, ws)
    d = inst.degree()
    if d is None:
        return _skip("gradedness", n, SkipReason.NOT_HOMOGENEOUS)
    try:
        ideal = ws.minors(n)
    except MinorLimitError as err:
        return _too_large("gradedness", n, err)
    J = ws.jacobian(n)
    for cols, g in ideal.raw.items():
        wd = weighted_degree(g, inst.weights)
        expected = predicted_minor_degree(J, cols, d, inst.weights)
        if not wd.homogeneous or wd.degree != expected:
            return Verdict(
                "gradedness", Status.FAIL, n, None, {},
                {"col_indices": list(cols), "minor": g.to_str(inst.weights),
                 "homogeneous": wd.homogeneous, "degree": wd.degree, "predicted": expected},
            )
    return Verdict("gradedness", Status.PASS, n, None, {"nonzero_minors": len(ideal.raw)})


def check_inclusion_cubed(inst: SingularityInstance, n: int, ws: Workspace | None = None) -> Verdict:
    """Minor ideal of order ``n`` inside the cube of the Jacobian ideal."""
    ws = _ws(inst, ws)
    guard = _theorem_guard("inclusion_cubed", inst, n, ws)
    if guard:
        return guard
    s = inst.s
    if not ((s >= 3 and n >= 2) or (s == 2 and n >= 3)):
        return _skip("inclusion_cubed", n, SkipReason.CASE_SPLIT,
                     note=f"s={s}, n={n}: handled by direct inspection of the generators")
    try:
        ideal = ws.minors(n)
    except MinorLimitError as err:
        return _too_large("inclusion_cubed", n, err)
    cube = groebner_basis(jacobian_ideal_cubed(inst.f), inst.order)
    reducer = Reducer(cube, inst.order)
    for g, src in zip(ideal.generators, ideal.sources):
        if not reducer.contains(g):
            return Verdict("inclusion_cubed", Status.FAIL, n, None, {},
                           {"col_indices": list(src[0]), "minor": g.to_str(inst.weights)})
    return Verdict("inclusion_cubed", Status.PASS, n, None,
                   {"generators_checked": len(ideal.generators), "cube_basis_size": len(cube)})


def check_variant_equivalence(inst: SingularityInstance, n: int, ws: Workspace | None = None) -> Verdict:
    """Zero-diagonal and f-diagonal minor ideals agree once ``f`` is added."""
    ws = _ws(inst, ws)
    if inst.degree() is None:
        return _skip("variant_equivalence", n, SkipReason.NOT_HOMOGENEOUS)
    try:
        zero = ws.minors(n, "zero")
        fdiag = ws.minors(n, "f")
    except MinorLimitError as err:
        return _too_large("variant_equivalence", n, err)
    f = inst.f
    equal = ideal_equal([f] + zero.generators, [f] + fdiag.generators, inst.order)
    details = {"zero_generators": len(zero), "f_generators": len(fdiag)}
    if not equal:
        return Verdict("variant_equivalence", Status.FAIL, n, None, details,
                       {"note": "ideals differ modulo f"})
    return Verdict("variant_equivalence", Status.PASS, n, None, details)


def _scan(Q, w: WeightSystem) -> tuple[dict[int, int], dict[int, list]]:
    dims, bases = {}, {}
    for e in negative_window(w):
        rep = derivation_space(Q, w, e)
        dims[e] = rep.dimension
        if rep.basis:
            bases[e] = rep.basis
    return dims, bases


def check_main_theorem(
    inst: SingularityInstance,
    n: int,
    ws: Workspace | None = None,
    extra: Sequence[Polynomial] | None = None,
) -> Verdict:
    """No nonzero derivation of negative weight on ``Q[x]/<f, J_n(f)>``.

    With ``extra`` the quotient is ``Q[x]/<f, extra>`` instead; every element
    of ``extra`` must be weighted homogeneous of degree at least ``deg_w f``.
    """
    ws = _ws(inst, ws)
    check = "main_theorem" if extra is None else "main_theorem_generic"
    w = inst.weights
    if n < 2 and extra is None:
        # computed for reference only, never judged
        try:
            Q = ws.quotient(n)
        except MinorLimitError as err:
            return _too_large(check, n, err)
        details = {"note": "stated for n >= 2"}
        if Q.zero_dimensional and inst.degree() is not None:
            details["negative_scan"] = {str(e): v for e, v in _scan(Q, w)[0].items()}
        return _skip(check, n, SkipReason.ORDER_OUT_OF_SCOPE, **details)
    if not ws.hypotheses().passed:
        return _skip(check, n, SkipReason.HYPOTHESIS_FAILED)
    if extra is None:
        try:
            Q = ws.quotient(n)
        except MinorLimitError as err:
            return _too_large(check, n, err)
    else:
        d = inst.degree()
        for g in extra:
            wd = weighted_degree(g, w)
            if wd is not None and (not wd.homogeneous or wd.degree < d):
                return _skip(check, n, SkipReason.NOT_HOMOGENEOUS,
                             note=f"generator {g} is not homogeneous of degree >= {d}")
        Q = quotient_basis([inst.f] + list(extra), inst.order)
    if not Q.zero_dimensional:
        return _skip(check, n, SkipReason.INFINITE_QUOTIENT,
                     note="leading-term ideal misses a pure power of some variable")
    dims, bases = _scan(Q, w)
    details = {"quotient_dim": Q.total_dim, "socle_degree": Q.socle_degree,
               "negative_scan": {str(e): v for e, v in dims.items()}}
    if any(dims.values()):
        e = min(bases)
        delta = bases[e][0]
        return Verdict(check, Status.FAIL, n, None, details,
                       {"degree": e, "images": delta.to_strings(w),
                        "reverified": preserves_ideal(delta, Q)})
    return Verdict(check, Status.PASS, n, None, details)


ALL_CHECKS = (
    ("degree_bound", check_degree_bound),
    ("gradedness", check_gradedness),
    ("inclusion_cubed", check_inclusion_cubed),
    ("variant_equivalence", check_variant_equivalence),
    ("main_theorem", check_main_theorem),
)


@dataclass
class InstanceReport:
    instance: SingularityInstance
    verdicts: list[Verdict]

    @property
    def failed(self) -> bool:
        return any(v.status is Status.FAIL for v in self.verdicts)

    def to_dict(self) -> dict:
        return {"instance": self.instance.to_dict(), "verdicts": [v.to_dict() for v in self.verdicts]}


def verify_instance(
    inst: SingularityInstance,
    orders: Iterable[int] | None = None,
    checks: Sequence[str] | None = None,
    cap: int | None = None,
) -> InstanceReport:
    ws = Workspace(inst, cap)
    verdicts = [ws.hypotheses()]
    wanted = set(checks) if checks else None
    for n in (tuple(orders) if orders is not None else inst.n_range):
        for name, fn in ALL_CHECKS:
            if wanted is None or name in wanted:
                verdicts.append(fn(inst, n, ws))
    return InstanceReport(inst, verdicts)


# -- catalogs ------------------------------------------------------------------

class CatalogError(ValueError):
    pass


def _line_of(text: str, needle: str) -> int | None:
    pos = text.find(needle)
    return None if pos < 0 else text.count("\n", 0, pos) + 1


def parse_catalog(text: str, source: str = "<catalog>") -> list[SingularityInstance]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"{source}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc
    if not isinstance(data, list):
        raise CatalogError(f"{source}: expected a JSON array of instances")
    out = []
    for k, entry in enumerate(data):
        name = entry.get("name", f"#{k}") if isinstance(entry, dict) else f"#{k}"
        where = f"{source}: entry {k} ({name!r})"
        line = _line_of(text, json.dumps(name)) if isinstance(name, str) else None
        if line:
            where = f"{source}:{line}: entry {k} ({name!r})"
        if not isinstance(entry, dict):
            raise CatalogError(f"{where}: expected an object")
        missing = [f for f in ("poly", "weights") if f not in entry]
        if missing:
            raise CatalogError(f"{where}: missing field(s) {', '.join(missing)}")
        try:
            inst = SingularityInstance.from_text(
                str(name), entry["poly"], entry["weights"], entry.get("n_range", DEFAULT_ORDERS)
            )
        except ParseError as exc:
            raise CatalogError(f"{where}: malformed polynomial: {exc}") from exc
        except (TypeError, ValueError) as exc:
            raise CatalogError(f"{where}: {exc}") from exc
        out.append(inst)
    return out


def load_catalog(path: str | Path | None = None) -> list[SingularityInstance]:
    path = Path(path) if path is not None else BUNDLED_CATALOG
    try:
        text = path.read_text()
    except OSError as exc:
        raise CatalogError(f"{path}: {exc.strerror}") from exc
    return parse_catalog(text, str(path))


@dataclass
class CatalogReport:
    reports: list[InstanceReport]
    config: dict = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return any(r.failed for r in self.reports)

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def to_dict(self) -> dict:
        counts = {s.value: 0 for s in Status}
        for r in self.reports:
            for v in r.verdicts:
                counts[v.status.value] += 1
        return {
            "tool": "nashjet",
            "version": __version__,
            "config": self.config,
            "summary": counts,
            "instances": [r.to_dict() for r in self.reports],
        }

    def table(self) -> str:
        return render_table(self.reports)


def render_table(reports: Sequence[InstanceReport]) -> str:
    rows = [("instance", "n", "check", "status", "note")]
    for r in reports:
        for v in r.verdicts:
            note = v.reason.value if v.reason else ""
            if v.check == "main_theorem" and "negative_scan" in v.details:
                note = note or "dims " + ",".join(f"{e}:{d}" for e, d in v.details["negative_scan"].items())
            if v.check == "degree_bound" and v.status is Status.PASS:
                note = f"min {v.details['min_minor_degree']} >= {v.details['degree']}"
            rows.append((r.instance.name, "" if v.n is None else str(v.n), v.check, v.status.value, note))
    widths = [max(len(row[i]) for row in rows) for i in range(5)]
    lines = ["  ".join(c.ljust(wd) for c, wd in zip(row, widths)).rstrip() for row in rows]
    lines.insert(1, "  ".join("-" * wd for wd in widths))
    return "\n".join(lines)


def _run_one(args) -> InstanceReport:
    inst, orders, checks, cap = args
    return verify_instance(inst, orders, checks, cap)


def run_catalog(
    path: str | Path | None = None,
    orders: Iterable[int] | None = None,
    checks: Sequence[str] | None = None,
    cap: int | None = None,
    jobs: int = 1,
    instances: Sequence[SingularityInstance] | None = None,
) -> CatalogReport:
    """Run every check on every catalog entry; report order follows the catalog."""
    insts = list(instances) if instances is not None else load_catalog(path)
    orders = tuple(orders) if orders is not None else None
    work = [(inst, orders, checks, cap) for inst in insts]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_one, work))
    else:
        reports = [_run_one(w) for w in work]
    config = {
        "catalog": "bundled" if path is None and instances is None else str(path) if path else "inline",
        "orders": list(orders) if orders is not None else "per-instance",
        "checks": list(checks) if checks else "all",
        "max_minors": default_minor_cap() if cap is None else cap,
    }
    return CatalogReport(reports, config)
