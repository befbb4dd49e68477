"""Sweep configuration, per-point verification and report emission."""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Iterable, Sequence

import numpy as np

from .asymptotics import jacobi_gamma, normalized_gaps
from .bethe import bethe_report, envelope_check, gap_bound_attained, gap_upper_bound, residual_tolerance
from .bounds import BoundSet, bound_set
from .params import DomainError, JacobiParams, LaguerreParams, PolynomialFamily, make_family
from .zeros import OracleError, all_zeros

__all__ = [
    "CSV_COLUMNS",
    "SweepConfig",
    "VerificationRecord",
    "SweepSummary",
    "geometric_range",
    "linear_range",
    "grid_points",
    "verify_point",
    "run_sweep",
    "standard_config",
    "sandwich_widths",
    "records_to_csv",
    "records_to_json",
]

log = logging.getLogger(__name__)

# relative agreement required where the gap bound is attained with equality
_GAP_EQUALITY_RTOL = 1e-12

CSV_COLUMNS = (
    "family",
    "k",
    "alpha",
    "beta",
    "x1",
    "xk",
    "x1_lower_thm",
    "x1_upper_thm",
    "x1_upper_applicable",
    "xk_lower_thm",
    "xk_lower_applicable",
    "xk_upper_thm",
    "x1_classical_upper",
    "bethe_residual",
    "envelope_minD",
    "gap_checks_passed",
    "gap_checks_applicable",
    "status",
)


def geometric_range(start: float, stop: float, factor: float) -> list[int]:
    """Integers ``round(start * factor**n)`` up to ``stop``, deduplicated."""
    if start < 1 or factor <= 1:
        raise ValueError("geometric range needs start >= 1 and factor > 1")
    out, v = [], float(start)
    while round(v) <= stop:
        n = int(round(v))
        if not out or n != out[-1]:
            out.append(n)
        v *= factor
    return out


def linear_range(start: float, stop: float, step: float) -> list[float]:
    if step <= 0:
        raise ValueError("linear range needs step > 0")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + i * step for i in range(max(count, 0))]


def _parse_range(spec) -> tuple[float, float, float]:
    if isinstance(spec, str):
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError(f"range {spec!r} must look like start:stop:step")
        return tuple(float(p) for p in parts)
    if isinstance(spec, dict):
        return float(spec["start"]), float(spec["stop"]), float(spec.get("factor", spec.get("step")))
    return tuple(float(p) for p in spec)


@dataclass
class SweepConfig:
    """Grid and tolerances for a verification sweep.

    ``k_values``/``alpha_values``/``beta_values`` form a Cartesian grid
    (``beta_values`` is ignored for Laguerre); ``points`` adds explicit
    ``(k, alpha[, beta])`` triples after the grid.  With ``alpha_ge_beta``
    grid pairs with ``beta > alpha`` are left out (explicit points are kept).
    """

    family: str = "laguerre"
    k_values: list[int] = field(default_factory=list)
    alpha_values: list[float] = field(default_factory=list)
    beta_values: list[float] = field(default_factory=list)
    points: list[tuple] = field(default_factory=list)
    alpha_ge_beta: bool = False
    target_rel_err: float = 1e-12
    bethe_tol: float = 1e-6
    include_empirical_k20: bool = True
    output_path: str | None = None
    output_format: str = "csv"
    jobs: int = 1

    def __post_init__(self):
        self.family = self.family.lower()
        if self.family not in ("laguerre", "jacobi"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"unknown output format {self.output_format!r}")

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SweepConfig":
        """Build from a JSON-style mapping; ``*_range`` keys expand into value lists."""
        data = dict(data)
        if "k_range" in data:
            data["k_values"] = geometric_range(*_parse_range(data.pop("k_range")))
        for name in ("alpha", "beta"):
            key = f"{name}_range"
            if key in data:
                data[f"{name}_values"] = linear_range(*_parse_range(data.pop(key)))
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        if "points" in data:
            data["points"] = [tuple(p) for p in data["points"]]
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "SweepConfig":
        return cls.from_dict(json.loads(text))


# standard verification grids
STANDARD_K = [1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233]
STANDARD_LAGUERRE_ALPHA = [-0.99, -0.5, 0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 100.0, 1000.0, 10000.0]
STANDARD_JACOBI_ALPHA = [-0.9, 0.0, 1.0, 5.0, 25.0, 100.0, 1000.0]
STANDARD_JACOBI_BETA = [-0.99, -0.5, 0.0, 1.0, 5.0, 25.0]
# alpha < beta points, verified through the reflection
STANDARD_REFLECTED = [
    (k, a, b) for k in (1, 5, 13, 55, 233) for a, b in ((-0.99, 0.0), (-0.5, 1.0), (0.0, 5.0), (1.0, 25.0))
]


def standard_config(family: str, **overrides) -> SweepConfig:
    """The standard grid for ``family``; keyword arguments override config fields."""
    family = family.lower()
    if family == "laguerre":
        cfg = dict(family="laguerre", k_values=list(STANDARD_K), alpha_values=list(STANDARD_LAGUERRE_ALPHA))
    elif family == "jacobi":
        cfg = dict(
            family="jacobi",
            k_values=list(STANDARD_K),
            alpha_values=list(STANDARD_JACOBI_ALPHA),
            beta_values=list(STANDARD_JACOBI_BETA),
            points=list(STANDARD_REFLECTED),
            alpha_ge_beta=True,
        )
    else:
        raise ValueError(f"unknown family {family!r}")
    cfg.update(overrides)
    return SweepConfig(**cfg)


def grid_points(cfg: SweepConfig) -> list[tuple]:
    """Raw ``(k, alpha, beta)`` triples in deterministic order (``beta`` is None for Laguerre)."""
    pts: list[tuple] = []
    for k in cfg.k_values:
        for a in cfg.alpha_values:
            if cfg.family == "laguerre":
                pts.append((k, a, None))
                continue
            for b in cfg.beta_values:
                if cfg.alpha_ge_beta and b > a:
                    continue
                pts.append((k, a, b))
    for p in cfg.points:
        k, a, *rest = p
        pts.append((k, a, rest[0] if rest and cfg.family == "jacobi" else None))
    return pts


@dataclass
class BoundCheck:
    source: str
    target: str
    kind: str
    value: float
    applicable: bool
    role: str
    satisfied: bool
    margin: float
    condition_note: str


@dataclass
class VerificationRecord:
    family: str
    k: int
    alpha: float
    beta: float | None
    status: str
    reflected: bool = False
    reason: str = ""
    derived: dict = field(default_factory=dict)
    x1: float | None = None
    xk: float | None = None
    zero_accuracy: float | None = None
    bounds: list[BoundCheck] = field(default_factory=list)
    bethe_residual: float | None = None
    bethe_tolerance: float | None = None
    envelope_min_margin: float | None = None
    envelope_violations: int = 0
    envelope_all_index_min: float | None = None
    gap_checks_passed: int = 0
    gap_checks_applicable: int = 0
    asymptotics: list[dict] = field(default_factory=list)
    gamma: dict | None = None
    failures: list[str] = field(default_factory=list)
    soft_failures: list[str] = field(default_factory=list)

    def bound(self, target: str, kind: str, *sources: str) -> BoundCheck | None:
        for b in self.bounds:
            if b.target == target and b.kind == kind and b.source in sources:
                return b
        return None

    def to_dict(self) -> dict:
        return _jsonable(asdict(self))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _family_label(family: PolynomialFamily) -> tuple[str, float, float | None]:
    if isinstance(family, LaguerreParams):
        return "laguerre", family.alpha, None
    return "jacobi", family.original_alpha, family.original_beta


def verify_point(family: PolynomialFamily, cfg: SweepConfig | None = None) -> VerificationRecord:
    """Check every bound, the Bethe identity, the envelope margin and the gap bound at one point.

    Bound checks are strict with zero slack.  Oracle non-convergence yields
    status ``"oracle-failed"``; it never counts as a bound failure.
    """
    cfg = cfg or SweepConfig(family=family.family)
    name, alpha, beta = _family_label(family)
    rec = VerificationRecord(
        family=name,
        k=family.k,
        alpha=alpha,
        beta=beta,
        status="pass",
        reflected=bool(getattr(family, "reflected", False)),
        derived=asdict(family.derived),
    )
    bs = bound_set(family)
    try:
        zs = all_zeros(family, cfg.target_rel_err)
    except OracleError as exc:
        rec.status = "oracle-failed"
        rec.reason = str(exc)
        rec.bounds = [_unchecked(b) for b in bs]
        return rec

    rec.x1, rec.xk, rec.zero_accuracy = zs.x1, zs.xk, zs.accuracy
    for b in bs:
        x = zs.x1 if b.target == "x1" else zs.xk
        chk = BoundCheck(
            b.source, b.target, b.kind, b.value, b.applicable, b.role, b.satisfied_by(x), b.margin(x), b.condition_note
        )
        rec.bounds.append(chk)
        label = f"{b.target}-{b.kind}-{b.source}"
        if b.applicable and not chk.satisfied:
            if b.role == "hard":
                rec.failures.append(label)
            elif b.role == "soft" and cfg.include_empirical_k20:
                rec.soft_failures.append(label)
                log.warning("soft check %s failed at %s k=%d alpha=%r beta=%r", label, name, family.k, alpha, beta)

    report = bethe_report(zs)
    rec.bethe_residual = report.max_scaled_residual
    rec.bethe_tolerance = residual_tolerance(zs, cfg.bethe_tol)
    if not rec.bethe_residual <= rec.bethe_tolerance:
        rec.failures.append("bethe-identity")

    env = envelope_check(zs)
    rec.envelope_min_margin = env.min_margin
    rec.envelope_violations = env.violations
    rec.envelope_all_index_min = env.all_index_min_margin
    if env.violations:
        rec.failures.append("envelope-margin")

    gaps = np.diff(zs.zeros)
    attained = gap_bound_attained(family)
    for i in range(zs.k - 1):
        g = gap_upper_bound(zs, i)
        if g is None:
            continue
        rec.gap_checks_applicable += 1
        if attained:
            # equality case: the strict inequality cannot hold, require agreement to rounding
            rec.gap_checks_passed += int(abs(g - gaps[i]) <= _GAP_EQUALITY_RTOL * gaps[i])
        else:
            rec.gap_checks_passed += int(g > gaps[i])
    if rec.gap_checks_passed < rec.gap_checks_applicable:
        rec.failures.append("gap-bound")

    rec.asymptotics = [asdict(g) for g in normalized_gaps(zs)]
    if isinstance(family, JacobiParams):
        rec.gamma = asdict(jacobi_gamma(family.derived))

    if rec.failures:
        rec.status = "fail"
    return rec


def _unchecked(b) -> BoundCheck:
    return BoundCheck(b.source, b.target, b.kind, b.value, b.applicable, b.role, False, math.nan, b.condition_note)


def _verify_raw(args) -> VerificationRecord:
    point, cfg = args
    k, alpha, beta = point
    try:
        family = make_family(cfg.family, k, alpha, beta)
    except DomainError as exc:
        log.info("skipping %s k=%r alpha=%r beta=%r: %s", cfg.family, k, alpha, beta, exc.reason)
        return VerificationRecord(cfg.family, k, alpha, beta, status="skipped", reason=exc.reason)
    return verify_point(family, cfg)


def sandwich_widths(bs: BoundSet) -> dict[str, float]:
    """Normalized gap between the inner and outer bound on each extreme zero.

    Laguerre widths are divided by ``V^2`` (for ``x1``) and ``U^2`` (for
    ``xk``); Jacobi widths by ``B - A``.  Only targets whose inner bound is
    applicable appear.
    """
    fam = bs.family
    d = fam.derived
    out = {}
    for target, inner_kind, outer_kind in (("x1", "upper", "lower"), ("xk", "lower", "upper")):
        inner = [b for b in bs.select(target, inner_kind) if b.source.startswith("inner") and b.applicable]
        outer = bs.one(target, outer_kind, "outer")
        if not inner or outer is None:
            continue
        width = abs(inner[0].value - outer.value)
        if isinstance(fam, LaguerreParams):
            norm = d.Vsq if target == "x1" else d.Usq
        else:
            norm = d.B - d.A
        out[target] = width / norm
    return out


@dataclass
class SweepSummary:
    records: list[VerificationRecord]
    counts: dict[str, int]
    widths: list[dict]
    slopes: list[dict]
    asymptotic_suprema: dict[str, dict]
    min_envelope_margin: float | None
    min_failing_delta_inner_x1: float | None
    soft_warnings: int

    @property
    def hard_failures(self) -> int:
        return self.counts.get("fail", 0)

    @property
    def exit_status(self) -> int:
        return 0 if self.hard_failures == 0 else 1

    def as_dict(self) -> dict:
        return _jsonable(
            {
                "counts": self.counts,
                "soft_warnings": self.soft_warnings,
                "min_envelope_margin": self.min_envelope_margin,
                "min_failing_delta_inner_x1": self.min_failing_delta_inner_x1,
                "sandwich_widths": self.widths,
                "width_slopes": self.slopes,
                "asymptotic_suprema": self.asymptotic_suprema,
            }
        )


def _summarize(records: Sequence[VerificationRecord]) -> SweepSummary:
    counts = {"total": len(records), "pass": 0, "fail": 0, "skipped": 0, "oracle-failed": 0}
    for r in records:
        counts[r.status] = counts.get(r.status, 0) + 1

    widths = []
    for r in records:
        if r.status == "skipped":
            continue
        fam = make_family(r.family, r.k, r.alpha, r.beta)
        for target, w in sandwich_widths(bound_set(fam)).items():
            widths.append({"alpha": r.alpha, "beta": r.beta, "target": target, "k": r.k, "width": w})

    series: dict[tuple, list[tuple[int, float]]] = {}
    for w in widths:
        series.setdefault((w["alpha"], w["beta"], w["target"]), []).append((w["k"], w["width"]))
    slopes = []
    for (alpha, beta, target), pts in series.items():
        ks = sorted(set(k for k, _ in pts))
        if len(ks) < 2:
            continue
        kk = np.log([k for k, _ in pts])
        ww = np.log([w for _, w in pts])
        slope = float(np.polyfit(kk, ww, 1)[0])
        slopes.append({"alpha": alpha, "beta": beta, "target": target, "k_min": ks[0], "k_max": ks[-1], "slope": slope})

    suprema: dict[str, dict] = {}
    for r in records:
        for g in r.asymptotics:
            entry = suprema.setdefault(g["equation_tag"], {"sup": -math.inf, "sup_k_gt_100": None, "count": 0})
            v = g["normalized"]
            entry["count"] += 1
            entry["sup"] = max(entry["sup"], v)
            if r.k > 100:
                entry["sup_k_gt_100"] = v if entry["sup_k_gt_100"] is None else max(entry["sup_k_gt_100"], v)

    margins = [r.envelope_min_margin for r in records if r.envelope_min_margin is not None and not math.isnan(r.envelope_min_margin)]
    failing_deltas = []
    for r in records:
        if r.family != "laguerre" or r.x1 is None:
            continue
        b = r.bound("x1", "upper", "inner")
        if b is not None and math.isfinite(b.value) and not b.satisfied:
            failing_deltas.append(r.derived["delta"])
    return SweepSummary(
        records=list(records),
        counts=counts,
        widths=widths,
        slopes=slopes,
        asymptotic_suprema=suprema,
        min_envelope_margin=min(margins) if margins else None,
        min_failing_delta_inner_x1=min(failing_deltas) if failing_deltas else None,
        soft_warnings=sum(len(r.soft_failures) for r in records),
    )


def run_sweep(cfg: SweepConfig, write: bool = True) -> SweepSummary:
    """Verify every grid point, write the report (if ``output_path`` is set) and summarize.

    Records keep grid order whatever the number of worker processes.
    """
    pts = grid_points(cfg)
    jobs = [(p, cfg) for p in pts]
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            records = list(pool.map(_verify_raw, jobs, chunksize=4))
    else:
        records = [_verify_raw(j) for j in jobs]
    summary = _summarize(records)
    if write and cfg.output_path:
        text = records_to_csv(records) if cfg.output_format == "csv" else records_to_json(records)
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return summary


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    v = float(v)
    if math.isnan(v):
        return "nan"
    return format(v, ".17g")


def _csv_row(r: VerificationRecord) -> list[str]:
    x1_lo = r.bound("x1", "lower", "outer")
    x1_hi = r.bound("x1", "upper", "inner", "inner-large-alpha", "inner-empirical")
    xk_lo = r.bound("xk", "lower", "inner", "inner-large-alpha", "inner-empirical")
    xk_hi = r.bound("xk", "upper", "outer")
    classical = r.bound("x1", "upper", "classical")
    return [
        r.family,
        _fmt(r.k),
        _fmt(r.alpha),
        _fmt(r.beta),
        _fmt(r.x1),
        _fmt(r.xk),
        _fmt(x1_lo.value if x1_lo else None),
        _fmt(x1_hi.value if x1_hi else None),
        _fmt(x1_hi.applicable and x1_hi.role == "hard" if x1_hi else None),
        _fmt(xk_lo.value if xk_lo else None),
        _fmt(xk_lo.applicable and xk_lo.role == "hard" if xk_lo else None),
        _fmt(xk_hi.value if xk_hi else None),
        _fmt(classical.value if classical else None),
        _fmt(r.bethe_residual),
        _fmt(r.envelope_min_margin),
        _fmt(r.gap_checks_passed if r.status != "skipped" else None),
        _fmt(r.gap_checks_applicable if r.status != "skipped" else None),
        r.status,
    ]


def records_to_csv(records: Iterable[VerificationRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow(_csv_row(r))
    return buf.getvalue()


def records_to_json(records: Iterable[VerificationRecord]) -> str:
    return json.dumps([r.to_dict() for r in records], indent=2) + "\n"
