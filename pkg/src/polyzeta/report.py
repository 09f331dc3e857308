"""Cross-route verification: every quantity is computed along independent routes and compared.

Pairwise pass rules
-------------------
* deterministic vs deterministic: |v1 - v2| <= tol * scale + u1 + u2, with
  scale = max(|reference|, 1), or |reference| for quantities flagged
  `relative`, and u the routes' declared uncertainties;
* Monte Carlo vs deterministic: |mean - v| <= 4 stderr + u;
* Monte Carlo vs Monte Carlo: |mean1 - mean2| <= 5 sqrt(stderr1^2 + stderr2^2).

A quantity passes iff every pair of its routes does.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import platform
from dataclasses import asdict, dataclass, field
from importlib import metadata as _md
from math import factorial
from typing import Iterable, Optional, Sequence

import numpy as np

from . import combinatorial, maps, quadrature, series, stochastic

__all__ = [
    "Route",
    "Quantity",
    "VerificationReport",
    "build_report",
    "zeta_coefficient_note",
    "DEFAULT_A_LIST",
    "MC_SIGMA",
    "MC_PAIR_SIGMA",
]

DEFAULT_A_LIST = (2.0, 2.5, 3.0, 4.0, 7.3)
MC_SIGMA = 4.0
MC_PAIR_SIGMA = 5.0
JACOBIAN_TOL = 1e-4
PV_TOL = 1e-6
DENSITY_TOL = 1e-8
SERIES_EPS = 1e-12


@dataclass
class Route:
    route: str
    value: float
    uncertainty: float = 0.0
    statistical: bool = False


@dataclass
class Quantity:
    id: str
    k: Optional[int]
    a: Optional[float]
    routes: list
    tolerance: float
    rule: str = "pairwise"
    relative: bool = False
    exact: Optional[str] = None
    max_rel_discrepancy: float = 0.0
    passed: bool = False
    annotation: str = ""

    def evaluate(self) -> "Quantity":
        if self.rule == "ks":
            stat = self.routes[0].value
            self.max_rel_discrepancy = stat
            self.passed = stat <= self.tolerance
            if not self.passed:
                self.annotation = (
                    f"statistical: KS statistic {stat:.3g} exceeds {self.tolerance:.3g}; "
                    "expected about once per thousand seeds"
                )
            return self
        ref = self.routes[0].value
        scale = abs(ref) if self.relative else max(abs(ref), 1.0)
        worst, ok, notes = 0.0, True, []
        for r1, r2 in itertools.combinations(self.routes, 2):
            diff = abs(r1.value - r2.value)
            worst = max(worst, diff / scale)
            if r1.statistical and r2.statistical:
                sigma = math.hypot(r1.uncertainty, r2.uncertainty)
                good = diff <= MC_PAIR_SIGMA * sigma
                limit = MC_PAIR_SIGMA
            elif r1.statistical or r2.statistical:
                mc, det = (r1, r2) if r1.statistical else (r2, r1)
                sigma = mc.uncertainty
                good = diff <= MC_SIGMA * sigma + det.uncertainty
                limit = MC_SIGMA
            else:
                good = diff <= self.tolerance * scale + r1.uncertainty + r2.uncertainty
                sigma = None
            if not good:
                ok = False
                if sigma is not None:
                    z = diff / sigma if sigma > 0 else math.inf
                    notes.append(
                        f"statistical: {r1.route} vs {r2.route} differ by {z:.2f} sigma > {limit:g}"
                    )
                else:
                    notes.append(f"{r1.route} vs {r2.route} differ by {diff:.3g}")
        self.max_rel_discrepancy = worst
        self.passed = ok
        self.annotation = "; ".join(notes)
        return self


@dataclass
class VerificationReport:
    quantities: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(q.passed for q in self.quantities)

    def to_dict(self) -> dict:
        return {"quantities": [asdict(q) for q in self.quantities], "metadata": dict(self.metadata)}

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationReport":
        qs = []
        for q in data["quantities"]:
            q = dict(q)
            q["routes"] = [Route(**r) for r in q["routes"]]
            qs.append(Quantity(**q))
        return cls(qs, dict(data["metadata"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["quantity", "k", "a", "route", "value", "uncertainty", "pass"])
        for q in self.quantities:
            for r in q.routes:
                w.writerow(
                    [q.id, "" if q.k is None else q.k, "" if q.a is None else q.a,
                     r.route, repr(r.value), repr(r.uncertainty), q.passed]
                )
        return buf.getvalue()

    def to_text(self, digits: int = 15) -> str:
        lines = []
        for q in self.quantities:
            head = f"[{'PASS' if q.passed else 'FAIL'}] {q.id}"
            if q.exact:
                head += f" = {q.exact}"
            if q.rule != "ks":
                head += f"  (max discrepancy {q.max_rel_discrepancy:.2e}, tol {q.tolerance:.1e})"
            lines.append(head)
            for r in q.routes:
                if q.rule == "ks":
                    lines.append(f"    {r.route:<28} {r.value:.4g} (threshold {q.tolerance:.4g})")
                    continue
                tag = " stderr" if r.statistical else " +/-"
                lines.append(f"    {r.route:<28} {r.value:.{digits}g}{tag} {r.uncertainty:.2e}")
            if q.annotation:
                lines.append(f"    note: {q.annotation}")
        n_fail = sum(not q.passed for q in self.quantities)
        lines.append("")
        lines.append("notes:")
        lines.extend(f"  - {n}" for n in self.metadata.get("notes", []))
        lines.append(f"{len(self.quantities) - n_fail}/{len(self.quantities)} quantities pass")
        return "\n".join(lines)


def zeta_coefficient_note() -> str:
    printed = combinatorial.zeta_2k_without_power_factor(1)
    routed = combinatorial.zeta_2k_closed(1)
    factor = printed.coeff / routed.coeff
    return (
        f"zeta(2k) via the tuple sum needs the prefactor pi^(2k)/(4^k (4^k - 1)); "
        f"written with pi^(2k)/(4^k - 1) alone it gives {printed} at k = 1, "
        f"a factor 2^(2k) = {factor} above zeta(2) = {routed}. "
        f"The value obtained through S(2k) is used and matches pi^2/6."
    )


def _versions() -> dict:
    out = {"python": platform.python_version(), "numpy": np.__version__}
    for name in ("mpmath", "artifact"):
        try:
            out[name] = _md.version(name)
        except _md.PackageNotFoundError:
            out[name] = "unknown"
    return out


def _mc_routes(k: int, samples: int, seed: int, scale: float = 1.0) -> list:
    a = stochastic.mc_delta_volume(k, samples, seed)
    b = stochastic.mc_hypertope_prob(k, samples, seed)
    return [
        Route("monte-carlo uniform sums", a.mean * scale, a.stderr * scale, True),
        Route("monte-carlo cauchy products", b.mean * scale, b.stderr * scale, True),
    ]


def _volume_rows(k_max: int, samples: int, seed: int) -> Iterable[Quantity]:
    for k in range(1, k_max + 1):
        vol = combinatorial.volume_delta(k)
        yield Quantity(
            f"Vol(Delta^{k})", k, None,
            [Route("exact tuple sum", float(vol))] + _mc_routes(k, samples, seed),
            0.0, exact=str(vol),
        )


def _s_rows(k_max: int, tol: float) -> Iterable[Quantity]:
    for k in range(1, k_max + 1):
        closed = combinatorial.s_k_closed(k)
        sv = series.s_k_series(k, SERIES_EPS)
        routes = [Route("exact tuple sum", float(closed)), Route("series", sv.value, sv.tail_bound)]
        if k >= 2:
            routes.append(Route("J_k closed form", float(series.s_k_from_jk(k))))
            jq = quadrature.j_k_quad(k)
            d = 2 * factorial(k - 1)
            routes.append(Route("J_k quadrature", jq.value / d, jq.abs_error_estimate / d))
        yield Quantity(f"S({k})", k, None, routes, tol, exact=str(closed))
        if k >= 2:
            jc = series.j_k_closed(k)
            jq = quadrature.j_k_quad(k)
            yield Quantity(
                f"J_{k}", k, None,
                [Route("closed form", float(jc)), Route("quadrature", jq.value, jq.abs_error_estimate)],
                tol, exact=str(jc),
            )


def _zeta_rows(k_max: int, tol: float) -> Iterable[Quantity]:
    for j in range(1, max(1, k_max // 2) + 1):
        closed = combinatorial.zeta_2k_closed(j)
        sv = series.zeta_2k_series(j, SERIES_EPS)
        yield Quantity(
            f"zeta({2 * j})", 2 * j, None,
            [
                Route("via S(2k)", float(closed)),
                Route("series", sv.value, sv.tail_bound),
                Route("Bernoulli", float(series.zeta_2k_bernoulli(j))),
            ],
            tol, exact=str(closed),
        )


def _ska_rows(a_list: Sequence[float], tol: float) -> Iterable[Quantity]:
    closed_forms = {2: series.s_2a_closed, 3: series.s_3a_closed}
    for k in (2, 3):
        for a in a_list:
            sv = series.s_ka_series(k, a, SERIES_EPS)
            jq = quadrature.j_ka_quad(k, a)
            d = factorial(k - 1)
            yield Quantity(
                f"S({k},{a:g})", k, float(a),
                [
                    Route("closed form", closed_forms[k](a)),
                    Route("series", sv.value, sv.tail_bound),
                    Route("J_k,a quadrature", jq.value / d, jq.abs_error_estimate / d),
                ],
                tol,
            )


def _jacobian_rows(k_max: int, seed: int, points: int = 20) -> Iterable[Quantity]:
    rng = np.random.default_rng(seed)
    h = 1e-5
    for k in range(2, max(2, min(k_max, 6)) + 1):
        for name, sample, fmap, domain, closed in (
            ("trig", maps.random_delta_points, maps.trig_map, maps.in_delta,
             lambda p: maps.trig_jacobian_closed(maps.trig_map(p))),
            ("zagier", maps.random_hypertope_points, maps.zagier_map, maps.in_hypertope,
             lambda p: maps.zagier_jacobian_closed(maps.zagier_map(p), p)),
        ):
            worst = None
            for p in sample(k, points, rng, margin=10 * h):
                c = closed(p)
                n = maps.numeric_jacobian_det(fmap, p, h, domain=domain)
                if worst is None or abs(n - c) / c > abs(worst[1] - worst[0]) / worst[0]:
                    worst = (c, n)
            yield Quantity(
                f"Jacobian {name} k={k}", k, None,
                [Route("closed form", worst[0]), Route("finite differences", worst[1])],
                JACOBIAN_TOL, relative=True,
            )


def _pv_rows(n_max: int = 8) -> Iterable[Quantity]:
    for n in range(2, n_max + 1):
        for m in range(1, n):
            pv = quadrature.cauchy_pv(m, n)
            yield Quantity(
                f"PV m={m} n={n}", n, None,
                [
                    Route("-(pi/n) cot(m pi/n)", -(math.pi / n) / math.tan(m * math.pi / n)),
                    Route("folded quadrature", pv.value, pv.abs_error_estimate),
                ],
                PV_TOL,
            )


def _vanishing_rows(k_max: int) -> Iterable[Quantity]:
    for k in range(1, max(1, min(k_max, 6)) + 1):
        v = quadrature.vanishing_integral_check(k)
        yield Quantity(
            f"vanishing log integral k={k}", k, None,
            [Route("exact", 0.0), Route("folded quadrature", v.value)],
            0.0,
        )


def _density_rows(a_list: Sequence[float]) -> Iterable[Quantity]:
    for a in a_list:
        for role in ("first", "other"):
            d = quadrature.density_normalization(a, role)
            yield Quantity(
                f"density mass a={a:g} ({role})", None, float(a),
                [Route("exact", 1.0), Route("quadrature", d.value, d.abs_error_estimate)],
                DENSITY_TOL,
            )


def build_report(
    k_max: int = 6,
    a_list: Sequence[float] = DEFAULT_A_LIST,
    samples: int = 1_000_000,
    seed: int = 42,
    tol: float = 1e-8,
) -> VerificationReport:
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if not tol >= 0:
        raise ValueError("tol must be nonnegative")
    for a in a_list:
        if not a > 1:
            raise ValueError("every a must be > 1")
    qs: list = []
    qs += _volume_rows(k_max, samples, seed)
    qs += _s_rows(k_max, tol)
    qs += _zeta_rows(k_max, tol)
    qs += _ska_rows(a_list, tol)
    qs += _jacobian_rows(k_max, seed)
    qs += _pv_rows()
    qs += _vanishing_rows(k_max)
    qs += _density_rows(a_list)
    ks_n = max(samples, 10_000)
    qs.append(
        Quantity(
            "Z2 ratio distribution (KS)", None, None,
            [Route("KS statistic", stochastic.z2_distribution_check(ks_n, seed), 0.0, True)],
            stochastic.ks_threshold(ks_n), rule="ks",
        )
    )
    for q in qs:
        q.evaluate()
    meta = {
        "seed": seed,
        "samples": samples,
        "ks_samples": ks_n,
        "k_max": k_max,
        "a_list": [float(a) for a in a_list],
        "tolerances": {
            "deterministic": tol,
            "series_eps": SERIES_EPS,
            "jacobian": JACOBIAN_TOL,
            "pv": PV_TOL,
            "density": DENSITY_TOL,
            "mc_sigma": MC_SIGMA,
            "mc_pair_sigma": MC_PAIR_SIGMA,
        },
        "versions": _versions(),
        "notes": [zeta_coefficient_note()],
    }
    return VerificationReport(qs, meta)
