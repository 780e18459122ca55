"""
Verification suites: instance grids, a uniform result record and JSON output.
"""

from __future__ import annotations

import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import clifford, killing, rep_spaces, weitzenbock, wolf
from .rep_spaces import CheckResult

SCHEMA = 1

SUITES = ("kom1", "kom2", "proj", "summe", "iota", "projectors", "weitzenbock", "twistor",
          "killing-curvature", "laplace", "hermitian", "wolf")


@dataclass
class VerificationReport:
    suite: str
    params: dict
    status: str                      # pass | fail | skipped
    witness: dict | None = None
    details: dict = field(default_factory=dict)
    timing: float | None = None

    @property
    def key(self) -> tuple:
        return (self.suite, tuple(sorted((k, str(v)) for k, v in self.params.items())))

    def as_dict(self, timing: bool = True) -> dict:
        out = {"suite": self.suite, "params": self.params, "status": self.status,
               "witness": self.witness, "details": self.details}
        if timing:
            out["timing"] = self.timing
        return out


def _merge(name: str, *parts) -> CheckResult:
    res = CheckResult(name, True)
    for p in parts:
        if not p.ok:
            res.ok = False
        res.failures.extend(p.failures)
        res.skipped.extend(p.skipped)
        res.details.update({f"{p.name}:{k}": v for k, v in p.details.items()})
    return res


def _from_flag(name: str, ok: bool, failure: dict | None = None, **details) -> CheckResult:
    res = CheckResult(name, ok, details=details)
    if not ok:
        res.failures.append(failure or {"identity": name})
    return res


# ---------------------------------------------------------------------------
# per-suite runners: each takes keyword parameters and returns a CheckResult

def run_kom1(n, s):
    parts = [rep_spaces.check_kom1(n, s), rep_spaces.check_sl2(n, s),
             rep_spaces.check_primitive_stability(n, s), rep_spaces.check_wedge_circ(n, s)]
    if 2 <= s <= n:
        parts.append(rep_spaces.check_operator_identity(n, s))
    return _merge(f"kom1(n={n},s={s})", *parts)


def run_kom2(r):
    return rep_spaces.check_kom2(r)


def run_proj(n, s):
    return rep_spaces.check_pr_tilde_K(n, s)


def run_summe(n, r, s):
    return clifford.check_summe(n, r, s)


def run_iota(kind, n, r):
    return clifford.check_iota(kind, n, r)


def run_projectors(n, r, s):
    return _merge(f"projectors(n={n},r={r},s={s})", rep_spaces.check_projector_relations_H(r),
                  rep_spaces.check_projector_relations_E(n, s))


def run_weitzenbock(kind, n, r=None):
    if kind == "min":
        m = weitzenbock.derive_min_identity(n, r)
        return _from_flag(f"min identity(n={n},r={r})", m.ok,
                          {"identity": "key norm identity", "lhs": [str(x) for x in m.coefficients or []],
                           "rhs": [str(x) for x in m.targets]},
                          u=[str(x) for x in m.u or []])
    if kind == "limiting":
        ls = weitzenbock.solve_limiting_system(n)
        return _from_flag(f"limiting system(n={n})", ls.ok, None,
                          D_minus_minus=str(ls.D_minus_minus), T_minus=str(ls.T_minus))
    pm = weitzenbock.solve_psi_minus_row(n)
    return _from_flag(f"psi- row(n={n})", pm.ok, None, residual=str(pm.residual_kappa))


def run_twistor(n, r, s):
    t = weitzenbock.check_twistor_corollary(n, r, s)
    res = _from_flag(f"twistor(n={n},r={r},s={s})", t.ok, None,
                     corollary=[str(x) for x in t.corollary])
    if t.trivial:
        res.skip("twistor corollary", "needs s >= 2")
    return res


def run_killing_curvature(n, kind, seed=0):
    if kind == "wedge":
        return clifford.check_wedge_identities(n)
    if kind == "annihilation":
        return killing.check_sym0_annihilation(n)
    if kind == "consequences":
        return killing.check_killing_equation_consequences(n).check
    if kind == "extraction":
        m = killing.CurvatureModel(n, 1, killing.random_quartic(n, random.Random(seed)))
        return killing.check_quartic_extraction(m)
    if kind == "vanishing":
        return _merge(f"curvature term(n={n})", *[killing.check_curvature_term_vanishing(n, r, s)
                                                 for s in range(2, n + 1) for r in range(3)])
    quartic = None if kind == "flat" else killing.random_quartic(n, random.Random(seed))
    rep = killing.check_killing_curvature(n, kappa=1 + seed, quartic=quartic)
    return rep.check


def run_laplace(n, derive):
    return killing.check_laplace(n, derive=derive)


def run_hermitian(n):
    return _merge(f"hermitian(n={n})", killing.check_skew_hermitian(n),
                  clifford.check_clifford_relation(n), clifford.check_frame(n))


def run_wolf(kind, n=None, family=None):
    if kind == "family":
        return wolf.check_classical_family(family, n)
    rows = wolf.evaluate_table(n)
    res = CheckResult(f"wolf table(n={n})", all(r.ok for r in rows))
    for r in rows:
        res.details[r.name] = {"n": r.n, "l": {k: str(v) for k, v in r.l_values.items()},
                               "rho": {k: str(v) for k, v in r.rho.items()}, "verdict": r.verdict}
        if not r.ok:
            res.failures.append({"identity": f"table row {r.name}"})
    return res


RUNNERS = {
    "kom1": run_kom1, "kom2": run_kom2, "proj": run_proj, "summe": run_summe, "iota": run_iota,
    "projectors": run_projectors, "weitzenbock": run_weitzenbock, "twistor": run_twistor,
    "killing-curvature": run_killing_curvature, "laplace": run_laplace, "hermitian": run_hermitian,
    "wolf": run_wolf,
}


def instance_grid(suite: str, n_max: int = 3, r_max: int = 3) -> list[dict]:
    ns = range(2, n_max + 1)
    if suite == "kom1":
        return [dict(n=n, s=s) for n in ns for s in range(n + 1)]
    if suite == "kom2":
        return [dict(r=r) for r in range(r_max + 1)]
    if suite == "proj":
        return [dict(n=n, s=s) for n in ns for s in range(1, n + 1)]
    if suite == "summe":
        return [dict(n=n, r=r, s=s) for n in ns for r in range(r_max + 1) for s in range(n + 1)]
    if suite == "iota":
        return [dict(kind=k, n=n, r=r) for k in clifford.IOTA_SPEC for n in ns
                for r in clifford.iota_range(k, n)]
    if suite == "projectors":
        return [dict(n=n, r=r, s=s) for n in ns for r in range(r_max + 1) for s in range(2, n + 1)]
    if suite == "weitzenbock":
        out = [dict(kind="min", n=n, r=r) for n in range(2, 7) for r in range(1, n)]
        out += [dict(kind=k, n=n) for k in ("limiting", "psi-") for n in range(2, 9)]
        return out
    if suite == "twistor":
        return [dict(n=n, r=r, s=s) for n in ns for r in range(r_max + 1) for s in range(1, n + 1)]
    if suite == "killing-curvature":
        out = []
        for n in ns:
            out += [dict(n=n, kind=k) for k in ("flat", "wedge", "annihilation", "consequences", "vanishing")]
            out += [dict(n=n, kind="random", seed=k) for k in range(1, 6)]
            out += [dict(n=n, kind="extraction", seed=1)]
        return out
    if suite == "laplace":
        return [dict(n=n, derive=n <= n_max) for n in range(2, 9)]
    if suite == "hermitian":
        return [dict(n=n) for n in ns]
    if suite == "wolf":
        return [dict(kind="family", family=f, n=n) for f in wolf.FAMILIES for n in ns] + \
            [dict(kind="table", n=n_max)]
    raise KeyError(suite)


def _witness(res: CheckResult):
    if res.failures:
        return json.loads(json.dumps(res.failures[0], default=str))
    return None


def run_instance(suite: str, params: dict) -> VerificationReport:
    t0 = time.perf_counter()
    try:
        res = RUNNERS[suite](**params)
    except Exception as exc:          # an exception is a failed instance with a witness
        return VerificationReport(suite, params, "fail", {"error": f"{type(exc).__name__}: {exc}"},
                                  timing=time.perf_counter() - t0)
    status = "pass" if res.ok else "fail"
    if res.ok and res.skipped and suite == "twistor":
        status = "skipped"
    details = json.loads(json.dumps(res.details, default=str))
    if res.skipped:
        details["skipped"] = res.skipped
    return VerificationReport(suite, params, status, _witness(res), details, time.perf_counter() - t0)


def max_workers() -> int:
    env = os.environ.get("QKSL_THREADS")
    cpus = os.cpu_count() or 1
    if env:
        try:
            return max(1, min(int(env), cpus))
        except ValueError:
            pass
    return 1


def run_suite(suite: str, n_max: int = 3, r_max: int = 3, workers: int | None = None) -> list[VerificationReport]:
    suites = SUITES if suite == "all" else (suite,)
    jobs = [(s, p) for s in suites for p in instance_grid(s, n_max, r_max)]
    workers = max_workers() if workers is None else workers
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            reports = list(ex.map(run_instance, *zip(*jobs)))
    else:
        reports = [run_instance(s, p) for s, p in jobs]
    return sorted(reports, key=lambda r: r.key)


def aggregate(reports: list[VerificationReport]) -> str:
    return "fail" if any(r.status == "fail" for r in reports) else "pass"


def to_json(suite: str, reports: list[VerificationReport], timing: bool = True) -> str:
    doc = {"schema": SCHEMA, "suite": suite,
           "instances": [r.as_dict(timing) for r in reports], "status": aggregate(reports)}
    return json.dumps(doc, ensure_ascii=False, sort_keys=True, indent=1, default=str)


def format_params(p: dict) -> str:
    return " ".join(f"{k}={v}" for k, v in p.items())


def to_table(reports: list[VerificationReport], timing: bool = True) -> str:
    lines = []
    for r in reports:
        line = f"{r.status.upper():7} {r.suite:18} {format_params(r.params)}"
        if timing and r.timing is not None:
            line += f"  ({r.timing:.2f}s)"
        if r.witness:
            line += f"\n        witness: {json.dumps(r.witness, ensure_ascii=False, default=str)}"
        lines.append(line)
    npass = sum(r.status == "pass" for r in reports)
    nfail = sum(r.status == "fail" for r in reports)
    nskip = sum(r.status == "skipped" for r in reports)
    lines.append(f"{aggregate(reports).upper()}: {npass} passed, {nfail} failed, {nskip} skipped")
    return "\n".join(lines)
