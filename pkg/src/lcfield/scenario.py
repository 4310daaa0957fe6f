"""Config-driven experiment runner.

Reads a declarative scenario config (flat `dotted.key = value` text),
builds the requested packet/state, applies each boost, executes the named
invariant checks, and writes a deterministic JSON report plus CSV sample
dumps into the scenario's output directory.
"""

from __future__ import annotations

import hashlib
import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import classical_field as cf
from . import quantum_blip as qb
from . import spectral
from .grid import Axis, Representation, SampledFunction, l2_distance, read_csv, write_csv
from .kinematics import kappa, make_boost, simulate_signal_exchange, xi

__all__ = [
    "ScenarioConfig",
    "CheckRecord",
    "ScenarioReport",
    "ConfigError",
    "load_config",
    "run_scenario",
    "ALL_CHECKS",
]

ALL_CHECKS = (
    "doppler_centroid",
    "box_energy_conservation",
    "naive_energy_ratio",
    "photon_number_conservation",
    "momentum_path_commutativity",
    "kernel_consistency",
    "parseval",
    "signal_exchange",
    "reciprocity",
)

DEFAULT_TOLERANCES = {
    "doppler_centroid": 1e-3,
    "box_energy_conservation": 1e-6,
    "naive_energy_ratio": 1e-6,
    "photon_number_conservation": 1e-6,
    "momentum_path_commutativity": 1e-6,
    "kernel_consistency": 1e-3,
    "parseval": 1e-10,
    "signal_exchange": 1e-12,
    "reciprocity": 1e-12,
}


class ConfigError(Exception):
    """Raised with the full list of validation problems."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass
class ScenarioConfig:
    grid: Axis
    c: float = 1.0
    hbar: float = 1.0
    epsilon: float = 1.0
    area: float = 1.0
    h_density: float = 1.0
    state_kind: str = "gaussian"
    state_center: float = 0.0
    state_width: float = 1.0
    state_carrier_k: float = 0.0
    state_amplitude: float = 1.0
    state_s: int = 1
    state_pol: str = "H"
    state_file: str | None = None
    boosts: list = field(default_factory=list)
    checks: tuple = ALL_CHECKS
    output_dir: str = "out"
    tolerances: dict = field(default_factory=dict)
    source_text: str = ""

    def tolerance(self, check: str) -> float:
        return self.tolerances.get(check, DEFAULT_TOLERANCES[check])


@dataclass
class CheckRecord:
    name: str
    expected: float | None
    measured: float | None
    abs_error: float | None
    rel_error: float | None
    tolerance: float
    passed: bool
    errored: bool = False
    diagnostics: dict = field(default_factory=dict)


@dataclass
class ScenarioReport:
    meta: dict
    checks: list

    @property
    def all_passed(self) -> bool:
        return all(c.passed and not c.errored for c in self.checks)


def _parse_scalar(text: str):
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        pass
    return text


def _parse_config_text(text: str) -> dict:
    """Flat dotted-key parser: `a.b = value`, `#` comments, comma lists."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError([f"line {lineno}: expected 'key = value'"])
        key, value = (part.strip() for part in line.split("=", 1))
        if key in ("boosts", "checks"):
            items = [v.strip() for v in value.split(",") if v.strip()]
            out[key] = [_parse_scalar(v) for v in items]
        else:
            out[key] = _parse_scalar(value)
    return out


def load_config(path) -> ScenarioConfig:
    """Parse and validate a scenario config file.

    All validation problems are aggregated into one ConfigError.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"config file not found: {path}")
    text = path.read_text()
    raw = _parse_config_text(text)
    problems = []

    def take(key, default=None, kind=None):
        if key not in raw:
            if default is None and kind is not None:
                problems.append(f"{key}: missing required key")
                return None
            return default
        val = raw.pop(key)
        if kind is not None and not isinstance(val, kind):
            if kind is float and isinstance(val, int):
                return float(val)
            problems.append(f"{key}: expected {kind.__name__}, got {val!r}")
            return default
        return val

    start = take("grid.start", kind=float)
    step = take("grid.step", kind=float)
    count = take("grid.count", kind=int)
    grid = None
    if None not in (start, step, count):
        if count % 2 != 0:
            problems.append("grid.count: must be even")
        elif step <= 0 or count < 2:
            problems.append("grid: step must be > 0 and count >= 2")
        else:
            grid = Axis(start=start, step=step, count=count)

    c = take("constants.c", 1.0, float)
    hbar = take("constants.hbar", 1.0, float)
    epsilon = take("constants.epsilon", 1.0, float)
    area = take("constants.area", 1.0, float)
    h_density = take("constants.h_density", 1.0, float)
    for name, v in (("constants.c", c), ("constants.hbar", hbar),
                    ("constants.epsilon", epsilon), ("constants.area", area),
                    ("constants.h_density", h_density)):
        if v is not None and v <= 0:
            problems.append(f"{name}: must be positive")

    kind = take("state.kind", "gaussian")
    if kind not in ("gaussian", "gaussian_carrier", "custom"):
        problems.append(f"state.kind: unknown kind {kind!r}")
    center = take("state.center", 0.0, float)
    width = take("state.width", 1.0, float)
    if width is not None and width <= 0:
        problems.append("state.width: must be positive")
    carrier_k = take("state.carrier_k", 0.0, float)
    amplitude = take("state.amplitude", 1.0, float)
    s_flag = take("state.s", 1, int)
    if s_flag not in (1, -1):
        problems.append("state.s: must be +1 or -1")
    pol = take("state.lambda", "H")
    if pol not in ("H", "V"):
        problems.append("state.lambda: must be H or V")
    state_file = take("state.file", "")
    if kind == "custom" and not state_file:
        problems.append("state.file: required for state.kind = custom")

    boosts = take("boosts", [])
    for b in boosts:
        if not isinstance(b, (int, float)) or not abs(b) < 1:
            problems.append(f"boosts: |beta| must be < 1, got {b!r}")
    checks = tuple(take("checks", list(ALL_CHECKS)))
    for name in checks:
        if name not in ALL_CHECKS:
            problems.append(f"checks: unknown check {name!r}")
    output_dir = take("output_dir", "out")

    tolerances = {}
    for key in list(raw):
        if key.startswith("tolerances."):
            name = key.split(".", 1)[1]
            if name not in ALL_CHECKS:
                problems.append(f"{key}: unknown check")
            else:
                tolerances[name] = float(raw.pop(key))
    if raw:
        problems.extend(f"{key}: unknown key" for key in sorted(raw))
    if problems:
        raise ConfigError(problems)
    return ScenarioConfig(
        grid=grid, c=c, hbar=hbar, epsilon=epsilon, area=area,
        h_density=h_density, state_kind=kind, state_center=center,
        state_width=width, state_carrier_k=carrier_k,
        state_amplitude=amplitude, state_s=s_flag, state_pol=pol,
        state_file=state_file or None, boosts=[float(b) for b in boosts],
        checks=checks, output_dir=output_dir, tolerances=tolerances,
        source_text=text,
    )


def _build_amplitude(config: ScenarioConfig, config_dir: Path) -> SampledFunction:
    if config.state_kind == "custom":
        path = Path(config.state_file)
        if not path.is_absolute():
            path = config_dir / path
        f = read_csv(path, Representation.POSITION_CHI, config.state_s,
                     config.state_pol)
        if f.axis != config.grid:
            raise ValueError("custom sample grid does not match grid spec")
        return f
    chi = config.grid.points()
    vals = config.state_amplitude * np.exp(
        -((chi - config.state_center) ** 2) / (2.0 * config.state_width ** 2))
    vals = vals.astype(complex)
    if config.state_kind == "gaussian_carrier":
        vals *= np.exp(1j * config.state_s * config.state_carrier_k * chi)
    return SampledFunction(axis=config.grid, values=vals,
                           representation=Representation.POSITION_CHI,
                           s=config.state_s, pol=config.state_pol)


def _scaled_axis(axis: Axis, factor: float) -> Axis:
    """The axis stretched about chi = 0 by `factor` (> 0 for any boost)."""
    return Axis(start=axis.start * factor, step=axis.step * factor,
                count=axis.count)


def _record(name, expected, measured, tolerance, diagnostics=None,
            relative=True) -> CheckRecord:
    abs_error = abs(measured - expected)
    rel_error = abs_error / abs(expected) if expected != 0 else abs_error
    err = rel_error if relative else abs_error
    return CheckRecord(name=name, expected=expected, measured=measured,
                       abs_error=abs_error, rel_error=rel_error,
                       tolerance=tolerance, passed=bool(err <= tolerance),
                       diagnostics=diagnostics or {})


def _errored(name, tolerance, message) -> CheckRecord:
    return CheckRecord(name=name, expected=None, measured=None,
                       abs_error=None, rel_error=None, tolerance=tolerance,
                       passed=False, errored=True,
                       diagnostics={"error": message})


def run_scenario(config: ScenarioConfig, config_dir: Path | None = None) -> ScenarioReport:
    """Execute every requested check and persist the report and CSV dumps."""
    config_dir = Path(config_dir) if config_dir is not None else Path(".")
    out_dir = Path(config.output_dir)
    if not out_dir.is_absolute():
        out_dir = config_dir / out_dir
    out_dir.mkdir(parents=True, exist_ok=True)

    constants = qb.FieldConstants(c=config.c, hbar=config.hbar,
                                  epsilon=config.epsilon, area=config.area)
    checks: list[CheckRecord] = []
    s = config.state_s
    boosts = [make_boost(b) for b in config.boosts] or [make_boost(0.0)]

    try:
        amp = _build_amplitude(config, config_dir)
        write_csv(amp, out_dir / "state_input.csv")
    except Exception as exc:
        for name in config.checks:
            checks.append(_errored(name, config.tolerance(name), str(exc)))
        return _finalize(config, checks, out_dir)

    packet = cf.ClassicalWavePacket(channels={s: amp.with_values(amp.values, pol="H", s=s)},
                                    c=config.c, area=config.area,
                                    epsilon=config.epsilon)
    nrm = math.sqrt(qb.photon_number(
        qb.BlipState(channels={(s, config.state_pol): amp}, constants=constants)))
    blip_amp = amp.with_values(amp.values / nrm) if nrm > 0 else amp
    state = qb.BlipState(channels={(s, config.state_pol): blip_amp},
                         constants=constants)

    for name in config.checks:
        tol = config.tolerance(name)
        try:
            checks.append(_run_check(name, config, packet, state, boosts,
                                     s, tol, out_dir))
        except Exception as exc:
            checks.append(_errored(name, tol, str(exc)))
    return _finalize(config, checks, out_dir)


def _run_check(name, config, packet, state, boosts, s, tol, out_dir) -> CheckRecord:
    if name == "reciprocity":
        rng = np.random.default_rng(0)
        worst = 0.0
        for beta in rng.uniform(-0.99, 0.99, size=1000):
            b = make_boost(beta)
            inv = make_boost(-beta)
            for sd in (+1, -1):
                worst = max(worst,
                            abs(xi(sd, b) * xi(sd, inv) - 1.0),
                            abs(kappa(sd, b) * kappa(sd, inv) - 1.0),
                            abs(kappa(sd, b) * xi(sd, b) - 1.0))
        return _record(name, 0.0, worst, tol, relative=False)

    if name == "signal_exchange":
        worst = 0.0
        for boost in boosts:
            if boost.beta <= -1.0 + 1e-15:
                continue
            rec = simulate_signal_exchange(boost, t_emit_A=1.0, c=config.c)
            worst = max(worst, abs(rec.kappa_measured - kappa(+1, boost)))
        return _record(name, 0.0, worst, tol, relative=False)

    if name == "parseval":
        rep = spectral.parseval_check(packet.channel(s))
        return _record(name, 0.0, rep.rel_error, tol, relative=False)

    if name == "doppler_centroid":
        base = cf.spectrum(packet, s)
        if base.centroid is None or base.centroid == 0.0:
            raise ValueError("doppler_centroid needs a carrier packet with "
                             "nonzero spectral centroid")
        worst_rec = None
        for boost in boosts:
            target = _scaled_axis(config.grid, kappa(s, boost))
            shifted = cf.spectrum(cf.boost_packet(packet, boost, target), s)
            ratio = shifted.centroid / base.centroid
            rec = _record(name, xi(s, boost), ratio, tol,
                          diagnostics={"beta": boost.beta})
            if worst_rec is None or rec.rel_error > worst_rec.rel_error:
                worst_rec = rec
        return worst_rec

    if name == "box_energy_conservation":
        width = 6.0 * config.state_width
        box_a = cf.WorldlineBox(a1=config.state_center - width,
                                a2=config.state_center + width,
                                h=config.h_density, area=config.area,
                                epsilon=config.epsilon)
        e_a = cf.box_energy(packet, box_a)
        worst_rec = None
        for boost in boosts:
            kap = kappa(s, boost)
            target = _scaled_axis(config.grid, kap)
            boosted = cf.boost_packet(packet, boost, target)
            box_b = cf.WorldlineBox(a1=kap * box_a.a1, a2=kap * box_a.a2,
                                    h=cf.transform_density(config.h_density, s, boost),
                                    area=config.area, epsilon=config.epsilon)
            e_b = cf.box_energy(boosted, box_b)
            rec = _record(name, e_a, e_b, tol, diagnostics={"beta": boost.beta})
            if worst_rec is None or rec.rel_error > worst_rec.rel_error:
                worst_rec = rec
        return worst_rec

    if name == "naive_energy_ratio":
        e_a = cf.total_energy(packet)
        worst_rec = None
        for boost in boosts:
            target = _scaled_axis(config.grid, kappa(s, boost))
            boosted = cf.boost_packet(packet, boost, target)
            ratio = cf.total_energy(boosted) / e_a
            rec = _record(name, xi(s, boost), ratio, tol,
                          diagnostics={"beta": boost.beta})
            if worst_rec is None or rec.rel_error > worst_rec.rel_error:
                worst_rec = rec
        return worst_rec

    if name == "photon_number_conservation":
        n_a = qb.photon_number(state)
        worst_rec = None
        for boost in boosts:
            target = _scaled_axis(config.grid, kappa(s, boost))
            n_b = qb.photon_number(qb.boost_blip(state, boost, target))
            rec = _record(name, n_a, n_b, tol, diagnostics={"beta": boost.beta})
            if worst_rec is None or rec.rel_error > worst_rec.rel_error:
                worst_rec = rec
        return worst_rec

    if name == "momentum_path_commutativity":
        pol = config.state_pol
        worst_rec = None
        for boost in boosts:
            target = _scaled_axis(config.grid, kappa(s, boost))
            via_chi = qb.to_momentum_state(qb.boost_blip(state, boost, target))
            via_k = qb.boost_momentum_state(qb.to_momentum_state(state), boost,
                                            via_chi.channel(s, pol).axis)
            dist = l2_distance(via_chi.channel(s, pol), via_k.channel(s, pol))
            rec = _record(name, 0.0, dist, tol, relative=False,
                          diagnostics={"beta": boost.beta})
            if worst_rec is None or rec.rel_error > worst_rec.rel_error:
                worst_rec = rec
        return worst_rec

    if name == "kernel_consistency":
        if config.state_pol != "H":
            raise ValueError("kernel_consistency needs an H-polarized state")
        worst_rec = None
        for boost in boosts:
            target = _scaled_axis(config.grid, kappa(s, boost))
            rep = qb.kernel_consistency_check(state, boost, s, target)
            rec = _record(name, 0.0, rep.rel_l2_discrepancy, tol,
                          relative=False,
                          diagnostics={"beta": boost.beta,
                                       "leakage": rep.leakage})
            if worst_rec is None or rec.rel_error > worst_rec.rel_error:
                worst_rec = rec
        return worst_rec

    raise ValueError(f"unknown check {name!r}")


def _json_number(x: float) -> str:
    if isinstance(x, bool) or x is None:
        raise TypeError
    if isinstance(x, int):
        return str(x)
    if math.isfinite(x):
        return format(x, ".17g")
    raise ValueError(f"non-finite number in report: {x}")


def _to_json(obj, indent=0) -> str:
    """JSON serializer with floats at 17 significant digits, sorted keys."""
    pad = "  " * indent
    pad_in = "  " * (indent + 1)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, float)):
        return _json_number(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = (f'{pad_in}{json.dumps(str(k))}: {_to_json(v, indent + 1)}'
                 for k, v in sorted(obj.items()))
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = (f"{pad_in}{_to_json(v, indent + 1)}" for v in obj)
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _finalize(config: ScenarioConfig, checks, out_dir: Path) -> ScenarioReport:
    meta = {
        "config_hash": hashlib.sha256(config.source_text.encode()).hexdigest(),
        "grid": {"start": config.grid.start, "step": config.grid.step,
                 "count": config.grid.count},
        "constants": {"c": config.c, "hbar": config.hbar,
                      "epsilon": config.epsilon, "area": config.area,
                      "h_density": config.h_density},
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
    }
    report = ScenarioReport(meta=meta, checks=checks)
    payload = {
        "meta": meta,
        "checks": [{
            "name": c.name,
            "expected": c.expected,
            "measured": c.measured,
            "abs_error": c.abs_error,
            "rel_error": c.rel_error,
            "tolerance": c.tolerance,
            "pass": c.passed,
            "errored": c.errored,
            "diagnostics": c.diagnostics,
        } for c in checks],
    }
    (out_dir / "report.json").write_text(_to_json(payload) + "\n")
    return report
