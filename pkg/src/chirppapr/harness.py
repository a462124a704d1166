"""Seeded Monte Carlo CCDF campaigns.

Trials are split into fixed-size chunks of consecutive trial indices. Each
chunk draws its QPSK vectors from the per-trial Philox streams and pushes the
same symbol block through every pipeline (paired comparison). Chunks are
independent work items; results are reassembled in trial order, so the
output does not depend on how many workers ran them.
"""
from __future__ import annotations

import dataclasses
import hashlib
import logging
import time
from decimal import Decimal
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from . import baselines as bl
from . import reference
from .config import ExperimentConfig, dump_config
from .errors import ChirpPaprError, IncompatibleCombination, MissingCurve
from .metrics import (
    BACKOFF_EXPONENTIAL,
    CALIBRATED_LINEAR,
    REFERENCE_POWER_REDUCTION,
    REFERENCE_SENSOR_SAVING_MWH,
    CcdfCurve,
    EnergyModel,
    ccdf,
    network_savings,
    papr_db,
    power_reduction_percent,
    symbol_block,
)
from .spreading import NoSpreading, parse_spreading, transmit
from .waveforms import AFDM, OCDM, AfdmParams, oversample, parse_waveform

log = logging.getLogger(__name__)

BASELINES = ("PTS", "SLM", "CHIRP", "GPS", "CLIP", "CLIPCHIRP")
# baselines tied to one waveform family; skipped for the others
_ONLY_FOR = {"CHIRP": OCDM, "GPS": AFDM, "CLIPCHIRP": AFDM}


@dataclass
class Pipeline:
    label: str
    run: Callable[[np.ndarray], np.ndarray]


def _spread_pipeline(wf, kind):
    return lambda x: transmit(x, kind, wf)


def _baseline_pipeline(name, wf, cfg: ExperimentConfig, afdm: AfdmParams):
    if name == "PTS":
        pcfg = bl.PtsConfig(cfg.pts_blocks, tuple(cfg.pts_phases), cfg.pts_partition)
        return lambda x: bl.pts(x, wf, pcfg, cfg.oversample).signal
    if name == "SLM":
        scfg = bl.SlmConfig(cfg.slm_candidates, cfg.slm_seed)
        return lambda x: bl.slm(x, wf, NoSpreading(), scfg, cfg.oversample).signal
    if name == "CHIRP":
        return lambda x: bl.chirp_select(x, cfg.oversample).signal
    if name == "GPS":
        return lambda x: bl.grouped_prechirp(x, cfg.gps_groups, cfg.gps_c2, afdm, cfg.oversample).signal
    if name == "CLIP":
        ccfg = bl.ClipConfig(cfg.clip_beta, cfg.clip_cutoff)
        return lambda x: bl.clip_filter(wf.modulate(x), ccfg)
    if name == "CLIPCHIRP":
        ccfg = bl.ClipConfig(cfg.clip_beta, cfg.clip_cutoff)
        return lambda x: bl.clip_chirp(x, cfg.gps_groups, cfg.gps_c2, afdm, ccfg, cfg.oversample).signal
    raise IncompatibleCombination(f"unknown baseline {name!r}; choose from {', '.join(BASELINES)}")


def _check_baseline(name, wf, cfg: ExperimentConfig) -> None:
    n = cfg.n
    if name == "PTS":
        bl.PtsConfig(cfg.pts_blocks, tuple(cfg.pts_phases), cfg.pts_partition).check(n)
    elif name == "SLM":
        bl.SlmConfig(cfg.slm_candidates, cfg.slm_seed)
    elif name in ("GPS", "CLIPCHIRP"):
        if cfg.gps_groups < 1 or n % cfg.gps_groups:
            raise IncompatibleCombination(f"GPS groups {cfg.gps_groups} do not divide N={n}")
        if not cfg.gps_c2:
            raise IncompatibleCombination("GPS needs at least one c2 candidate")
    if name in ("CLIP", "CLIPCHIRP"):
        bl.ClipConfig(cfg.clip_beta, cfg.clip_cutoff)


def build_pipelines(cfg: ExperimentConfig, with_baselines: bool = False) -> list[Pipeline]:
    """All pipelines of a campaign in config order, validated for ``cfg.n``.

    Raises IncompatibleCombination naming the first offending pair.
    """
    cfg.validate()
    afdm = AfdmParams(cfg.c1, cfg.c2)
    pipelines = []
    for wname in cfg.waveform:
        try:
            wf = parse_waveform(wname, afdm)
            wf.check(cfg.n)
        except ChirpPaprError as exc:
            raise IncompatibleCombination(f"{wname} with N={cfg.n}: {exc}") from None
        except ValueError as exc:
            raise IncompatibleCombination(str(exc)) from None
        pipelines.append(Pipeline(wf.label, _spread_pipeline(wf, NoSpreading())))
        if with_baselines:
            for bname in cfg.baseline:
                only = _ONLY_FOR.get(bname)
                if only is not None and not isinstance(wf, only):
                    continue
                try:
                    _check_baseline(bname, wf, cfg)
                    run = _baseline_pipeline(bname, wf, cfg, afdm)
                except (ChirpPaprError, ValueError) as exc:
                    raise IncompatibleCombination(f"{wf.label}+{bname}: {exc}") from None
                pipelines.append(Pipeline(f"{wf.label}+{bname}", run))
        for sname in cfg.spreading:
            try:
                kind = parse_spreading(sname, cfg.zc_root, cfg.stride)
                kind.check(cfg.n)
            except (ChirpPaprError, ValueError) as exc:
                raise IncompatibleCombination(f"{wf.label}+{sname} with N={cfg.n}: {exc}") from None
            pipelines.append(Pipeline(f"{wf.label}+{kind.label}", _spread_pipeline(wf, kind)))
    labels = [p.label for p in pipelines]
    if len(set(labels)) != len(labels):
        raise IncompatibleCombination(f"duplicate pipelines in {labels}")
    return pipelines


def _run_chunk(args) -> tuple[dict[str, np.ndarray], bytes]:
    """PAPR samples of one trial chunk for every pipeline, plus a digest of its symbols."""
    cfg, with_baselines, start, stop = args
    pipelines = build_pipelines(cfg, with_baselines)
    x = symbol_block(cfg.seed, start, stop, cfg.n)
    out = {p.label: papr_db(oversample(p.run(x), cfg.oversample)) for p in pipelines}
    return out, hashlib.sha256(x.tobytes()).digest()


@dataclass
class RunReport:
    kind: str
    config: ExperimentConfig
    curves: dict[str, CcdfCurve]
    samples: dict[str, np.ndarray]
    readouts: dict[str, dict[float, float | None]]
    gains: dict[str, dict[float, float | None]]
    symbol_digest: str
    duration_s: float
    energy: list[dict] = field(default_factory=list)

    @property
    def labels(self) -> list[str]:
        return list(self.curves)


def _campaign(cfg: ExperimentConfig, kind: str, with_baselines: bool) -> RunReport:
    t0 = time.perf_counter()
    pipelines = build_pipelines(cfg, with_baselines)
    grid = cfg.grid()
    bounds = [(s, min(s + cfg.chunk, cfg.trials)) for s in range(0, cfg.trials, cfg.chunk)]
    jobs = [(cfg, with_baselines, s, e) for s, e in bounds]
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_run_chunk, jobs))
    else:
        results = [_run_chunk(j) for j in jobs]

    digest = hashlib.sha256()
    for _, chunk_digest in results:
        digest.update(chunk_digest)
    samples = {p.label: np.concatenate([r[0][p.label] for r in results]) for p in pipelines}
    curves = {label: ccdf(v, grid) for label, v in samples.items()}
    readouts = {label: {lv: c.level_readout(lv) for lv in reference.LEVELS} for label, c in curves.items()}
    gains = {}
    for label, r in readouts.items():
        base = readouts[label.split("+", 1)[0]]
        gains[label] = {
            lv: None if r[lv] is None or base[lv] is None else base[lv] - r[lv] for lv in reference.LEVELS
        }
    return RunReport(kind, cfg, curves, samples, readouts, gains, digest.hexdigest(),
                     time.perf_counter() - t0)


def run_ccdf(cfg: ExperimentConfig) -> RunReport:
    """Waveform x spreading campaign (originals plus every listed spreading)."""
    return _campaign(cfg, "ccdf", with_baselines=False)


def compare(cfg: ExperimentConfig) -> RunReport:
    """Baselines and spreadings on the same trials, gains relative to each original."""
    return _campaign(cfg, "compare", with_baselines=True)


def energy_report(cfg: ExperimentConfig, sensors=None, report: RunReport | None = None) -> RunReport:
    """Power-reduction percentages and network savings from PAPR at CCDF 1e-3.

    Uses the ``<waveform>`` and ``<waveform>+<proposed>`` readouts of ``report``
    (a fresh CCDF run when omitted). Savings rows are produced for waveforms
    that have per-sensor constants.
    """
    sensors = list(cfg.sensors if sensors is None else sensors)
    if report is None:
        report = run_ccdf(cfg)
    level = 1e-3
    rows = []
    for wname in cfg.waveform:
        wf = wname.upper()
        proposed = f"{wf}+{cfg.proposed}"
        for label in (wf, proposed):
            if label not in report.readouts:
                raise MissingCurve(f"no curve {label!r} in the run")
            if report.readouts[label][level] is None:
                raise MissingCurve(f"curve {label!r} does not resolve CCDF {level:g}")
        ref_db = report.readouts[wf][level]
        new_db = report.readouts[proposed][level]
        if wf in REFERENCE_SENSOR_SAVING_MWH:
            exp_model = EnergyModel.reference(wf, BACKOFF_EXPONENTIAL)
            lin_model = EnergyModel.reference(wf, CALIBRATED_LINEAR)
        else:
            exp_model = lin_model = None
        pct_exp = power_reduction_percent(ref_db, new_db, exp_model or EnergyModel())
        pct_lin = power_reduction_percent(ref_db, new_db, lin_model) if lin_model else None
        for count in sensors:
            row = {
                "waveform": wf,
                "papr_original_db": ref_db,
                "papr_proposed_db": new_db,
                "gain_db": ref_db - new_db,
                "reduction_backoff_pct": pct_exp,
                "reduction_linear_pct": pct_lin,
                "reference_reduction_pct": REFERENCE_POWER_REDUCTION.get(wf),
                "sensors": count,
                "per_sensor_mwh": None,
                "energy_mwh": None,
                "co2_t": None,
            }
            if exp_model is not None:
                energy, co2 = network_savings(count, exp_model)
                row.update(per_sensor_mwh=exp_model.per_sensor_saving, energy_mwh=energy, co2_t=co2)
            rows.append(row)
    return dataclasses.replace(report, kind="energy", energy=rows)


# --- output ----------------------------------------------------------------

def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, Decimal):
        return f"{value.normalize():f}"
    if isinstance(value, (float, np.floating)):
        return f"{value:.6g}"
    return str(value)


def ccdf_csv(report: RunReport) -> str:
    labels = report.labels
    grid = next(iter(report.curves.values())).thresholds
    lines = ["papr0_db," + ",".join(labels)]
    for i, t in enumerate(grid):
        probs = ",".join(f"{report.curves[label].probabilities[i]:.6g}" for label in labels)
        lines.append(f"{t:.6g},{probs}")
    return "\n".join(lines) + "\n"


ENERGY_COLUMNS = (
    "waveform", "papr_original_db", "papr_proposed_db", "gain_db", "reduction_backoff_pct",
    "reduction_linear_pct", "reference_reduction_pct", "sensors", "per_sensor_mwh", "energy_mwh",
    "co2_t",
)


def energy_csv(report: RunReport) -> str:
    lines = [",".join(ENERGY_COLUMNS)]
    for row in report.energy:
        lines.append(",".join(_fmt(row[c]) for c in ENERGY_COLUMNS))
    return "\n".join(lines) + "\n"


def manifest_text(report: RunReport) -> str:
    head = [
        f"# {report.kind} run manifest; the key = value lines below are a valid config file",
        f"# symbol_sha256 = {report.symbol_digest}",
        f"# curves = {','.join(report.labels)}",
    ]
    return "\n".join(head) + "\n" + dump_config(report.config)


def _references(kind: str):
    if kind == "compare":
        return reference.COMPARE_READOUTS, reference.COMPARE_GAINS
    return reference.CCDF_READOUTS, reference.CCDF_GAINS


def reference_checks(report: RunReport) -> list[dict]:
    """Measured vs published values inside the soft band; every deviation is logged."""
    readouts, gains = _references(report.kind)
    checks = []
    for table, measured, what in ((readouts, report.readouts, "papr_db"), (gains, report.gains, "gain_db")):
        for label, levels in table.items():
            if label not in measured:
                continue
            for lv, ref in levels.items():
                got = measured[label][lv]
                dev = None if got is None else got - ref
                ok = dev is not None and abs(dev) <= reference.SOFT_BAND_DB
                checks.append(dict(label=label, quantity=what, level=lv, measured=got, reference=ref,
                                   deviation=dev, within_band=ok))
                if not ok:
                    log.warning("%s %s at CCDF %g: measured %s vs reference %.2f dB (outside +/-%.1f dB)",
                                label, what, lv, "n/a" if got is None else f"{got:.2f}", ref,
                                reference.SOFT_BAND_DB)
    return checks


def report_text(report: RunReport) -> str:
    out = [f"{report.kind} campaign: N={report.config.n} trials={report.config.trials} "
           f"seed={report.config.seed} oversample={report.config.oversample}",
           f"wall clock: {report.duration_s:.2f} s", ""]
    levels = reference.LEVELS
    out.append("PAPR0 (dB) at CCDF level" + "".join(f"{lv:>10g}" for lv in levels)
               + "".join(f"{'gain@' + format(lv, 'g'):>12}" for lv in levels))
    for label in report.labels:
        r = report.readouts[label]
        g = report.gains[label]
        cells = "".join(f"{'below-res' if r[lv] is None else format(r[lv], '.2f'):>10}" for lv in levels)
        gcells = "".join(f"{'' if g[lv] is None else format(g[lv], '+.2f'):>12}" for lv in levels)
        out.append(f"  {label:<22}{cells}{gcells}")
    checks = reference_checks(report)
    if checks:
        out += ["", f"published values (soft band +/-{reference.SOFT_BAND_DB} dB)"]
        for c in checks:
            got = "n/a" if c["measured"] is None else f"{c['measured']:.2f}"
            dev = "" if c["deviation"] is None else f"{c['deviation']:+.2f}"
            flag = "ok" if c["within_band"] else "DEVIATION"
            out.append(f"  {c['label']:<12} {c['quantity']:<8} @{c['level']:<6g} measured {got:>6} "
                       f"reference {c['reference']:>5.2f} dev {dev:>6}  {flag}")
    if report.energy:
        out += ["", "energy (CCDF 1e-3)"]
        for row in report.energy:
            lin = "n/a" if row["reduction_linear_pct"] is None else f"{row['reduction_linear_pct']:.2f}%"
            ref = row["reference_reduction_pct"]
            out.append(f"  {row['waveform']:<5} gain {row['gain_db']:+.2f} dB  backoff {row['reduction_backoff_pct']:.2f}%"
                       f"  linear {lin}  reference {'n/a' if ref is None else f'{ref:.2f}%'}"
                       f"  sensors {row['sensors']}: {_fmt(row['energy_mwh']) or '-'} MWh,"
                       f" {_fmt(row['co2_t']) or '-'} tCO2")
    return "\n".join(out) + "\n"


def write_outputs(report: RunReport, out_dir: str | Path) -> dict[str, Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    files = {}
    if report.kind == "energy":
        files["csv"] = out_dir / "energy.csv"
        files["csv"].write_text(energy_csv(report))
        files["curves"] = out_dir / "energy_ccdf.csv"
        files["curves"].write_text(ccdf_csv(report))
    else:
        files["csv"] = out_dir / f"{report.kind}.csv"
        files["csv"].write_text(ccdf_csv(report))
    files["manifest"] = out_dir / f"{report.kind}_manifest.txt"
    files["manifest"].write_text(manifest_text(report))
    files["report"] = out_dir / f"{report.kind}_report.txt"
    files["report"].write_text(report_text(report))
    return files
