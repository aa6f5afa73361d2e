"""Flat dotted key-value run configuration.

One ``section.key = value`` per line, ``#`` starts a comment. Lists are
comma separated. Lengths accept ``um``/``mm``/``nm`` suffixes (stored in
um); wavenumbers are in um^-1 unless given as a wavelength in ``nm``,
which converts through ``k = 2 pi / lambda``.
"""

import enum
import hashlib
import math
import re
from dataclasses import dataclass, field, fields
from pathlib import Path

from .exceptions import ConfigError, DomainError
from .grid import PolarGrid
from .phasematching import CrystalParams, CrystalType
from .pump import PumpMode
from .spectrum import RadialMeasure, SpectralConfig

_NUMBER = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_QUANTITY = re.compile(rf"^\s*({_NUMBER})\s*([A-Za-zµμ/^\-1]*)\s*$")
_LENGTH_UNITS = {"": 1.0, "um": 1.0, "µm": 1.0, "μm": 1.0, "mm": 1e3, "nm": 1e-3, "m": 1e6}
_WAVENUMBER_UNITS = {"": 1.0, "um^-1": 1.0, "1/um": 1.0, "/um": 1.0}


@dataclass(frozen=True)
class GridSpec:
    n_radial: int = 128
    p_max: float = 3.0
    n_phi: int = 256

    def build(self):
        return PolarGrid.gauss_legendre(self.n_radial, self.p_max, self.n_phi)


@dataclass(frozen=True)
class ProfileSpec:
    p_minus: tuple = (1.0,)
    l_c: tuple = ()
    n_phi: int = 64


@dataclass(frozen=True)
class SpectrumSpec:
    m_max: int = 16
    radial_measure: RadialMeasure = RadialMeasure.PAPER_LINEAR
    l_c: tuple = ()


@dataclass(frozen=True)
class MeasurementSpec:
    total_charge: int = 2
    extrinsic_charge: int = 1
    signal_charge: int = 1
    charge_min: int = -3
    charge_max: int = 3
    p0: float = 1.0
    phi0: float = 0.0
    collection_waist: float = 0.1
    envelope_width: float = 0.1
    n_radial: int = 24
    n_phi: int = 32


@dataclass(frozen=True)
class ReexpansionSpec:
    max_charge: int = 3
    n_radial: int = 16
    n_phi: int = 16
    p_max: float = 3.0
    seed: int = 0


@dataclass(frozen=True)
class RunConfig:
    pump: PumpMode
    crystal: CrystalParams
    spectral: SpectralConfig = field(default_factory=SpectralConfig)
    grid: GridSpec = field(default_factory=GridSpec)
    profile: ProfileSpec = field(default_factory=ProfileSpec)
    spectrum: SpectrumSpec = field(default_factory=SpectrumSpec)
    measurement: MeasurementSpec = field(default_factory=MeasurementSpec)
    reexpansion: ReexpansionSpec = field(default_factory=ReexpansionSpec)
    output_dir: str = "out"

    @property
    def profile_lengths(self):
        return self.profile.l_c or (self.crystal.l_c,)

    @property
    def spectrum_lengths(self):
        return self.spectrum.l_c or (self.crystal.l_c,)

    def digest(self):
        return hashlib.sha256(emit_config(self).encode("utf-8")).hexdigest()


# --- scalar parsers --------------------------------------------------------


def _quantity(raw, units, key):
    m = _QUANTITY.match(raw)
    if not m:
        raise ConfigError(f"cannot parse quantity {raw!r}", key)
    value, unit = float(m.group(1)), m.group(2)
    if unit not in units:
        raise ConfigError(f"unknown unit {unit!r} (expected one of {sorted(u for u in units if u)})", key)
    return value * units[unit]


def parse_length(raw, key=None):
    return _quantity(raw, _LENGTH_UNITS, key)


def parse_wavenumber(raw, key=None):
    m = _QUANTITY.match(raw)
    if m and m.group(2) == "nm":
        wavelength_um = float(m.group(1)) * 1e-3
        if wavelength_um <= 0:
            raise ConfigError("wavelength must be positive", key)
        return 2.0 * math.pi / wavelength_um
    return _quantity(raw, _WAVENUMBER_UNITS, key)


def parse_float(raw, key=None):
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"expected a number, got {raw!r}", key) from None
    return value


def parse_int(raw, key=None):
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"expected an integer, got {raw!r}", key) from None


def parse_bool(raw, key=None):
    lowered = raw.strip().lower()
    if lowered in ("true", "yes", "1", "on"):
        return True
    if lowered in ("false", "no", "0", "off"):
        return False
    raise ConfigError(f"expected a boolean, got {raw!r}", key)


def _list(parser):
    def parse(raw, key=None):
        items = [s for s in (part.strip() for part in raw.split(",")) if s]
        return tuple(parser(s, key) for s in items)

    return parse


def _samples(raw, key=None):
    out = []
    for item in _list(lambda s, k: s)(raw, key):
        if ":" not in item:
            raise ConfigError(f"detuning sample {item!r} must be 'nu_bar_D:weight'", key)
        nu, weight = item.split(":", 1)
        out.append((parse_wavenumber(nu.strip(), key), parse_float(weight, key)))
    return tuple(out)


def _text(raw, key=None):
    return raw.strip().strip('"')


# key -> (parser, required)
SCHEMA = {
    "pump.l": (parse_int, False),
    "pump.p": (parse_int, False),
    "pump.k_P": (parse_wavenumber, False),
    "pump.w0": (parse_length, False),
    "pump.amplitude": (parse_float, False),
    "crystal.type": (_text, True),
    "crystal.l_c": (parse_length, True),
    "crystal.K_bar": (parse_wavenumber, True),
    "crystal.N": (parse_float, False),
    "crystal.nu_bar_D": (parse_wavenumber, False),
    "crystal.signal_e_beam": (parse_bool, False),
    "crystal.label": (_text, False),
    "spectral.monochromatic": (parse_bool, False),
    "spectral.samples": (_samples, False),
    "grid.n_radial": (parse_int, False),
    "grid.p_max": (parse_wavenumber, False),
    "grid.n_phi": (parse_int, False),
    "profile.p_minus": (_list(parse_wavenumber), False),
    "profile.l_c": (_list(parse_length), False),
    "profile.n_phi": (parse_int, False),
    "spectrum.m_max": (parse_int, False),
    "spectrum.radial_measure": (_text, False),
    "spectrum.l_c": (_list(parse_length), False),
    "measurement.total_charge": (parse_int, False),
    "measurement.extrinsic_charge": (parse_int, False),
    "measurement.signal_charge": (parse_int, False),
    "measurement.charge_min": (parse_int, False),
    "measurement.charge_max": (parse_int, False),
    "measurement.p0": (parse_wavenumber, False),
    "measurement.phi0": (parse_float, False),
    "measurement.collection_waist": (parse_wavenumber, False),
    "measurement.envelope_width": (parse_wavenumber, False),
    "measurement.n_radial": (parse_int, False),
    "measurement.n_phi": (parse_int, False),
    "reexpansion.max_charge": (parse_int, False),
    "reexpansion.n_radial": (parse_int, False),
    "reexpansion.n_phi": (parse_int, False),
    "reexpansion.p_max": (parse_wavenumber, False),
    "reexpansion.seed": (parse_int, False),
    "output_dir": (_text, False),
}


def read_pairs(text):
    """Split a document into ``{key: raw_value}``; duplicates are errors."""
    pairs = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key in pairs:
            raise ConfigError(f"line {lineno}: duplicate key", key)
        pairs[key] = value
    return pairs


def parse_config(text, overrides=()):
    """Parse and validate a configuration document.

    ``overrides`` are ``"key=value"`` strings applied after the document.
    Raises :class:`ConfigError` naming the offending key.
    """
    pairs = read_pairs(text)
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override {item!r} must be key=value")
        key, value = (s.strip() for s in item.split("=", 1))
        pairs[key] = value

    unknown = sorted(set(pairs) - set(SCHEMA))
    if unknown:
        raise ConfigError("unknown key", unknown[0])
    values = {}
    for key, (parser, required) in SCHEMA.items():
        if key in pairs:
            values[key] = parser(pairs[key], key)
        elif required:
            raise ConfigError("missing required key", key)

    def section(prefix):
        return {k.split(".", 1)[1]: v for k, v in values.items() if k.startswith(prefix + ".")}

    crystal = section("crystal")
    try:
        ctype = CrystalType(str(crystal.pop("type")).upper().removeprefix("TYPE").strip("-_ "))
    except ValueError:
        raise ConfigError("expected I or II", "crystal.type") from None
    if ctype is CrystalType.TYPE_II and "N" not in crystal:
        raise ConfigError("type-II crystals require the walk-off parameter", "crystal.N")

    built = {}
    for name, factory, kwargs in (
        ("pump", PumpMode, section("pump")),
        ("crystal", CrystalParams, dict(crystal_type=ctype, **crystal)),
        ("spectral", SpectralConfig, section("spectral")),
        ("grid", GridSpec, section("grid")),
        ("profile", ProfileSpec, section("profile")),
        ("spectrum", SpectrumSpec, section("spectrum")),
        ("measurement", MeasurementSpec, section("measurement")),
        ("reexpansion", ReexpansionSpec, section("reexpansion")),
    ):
        if name == "measurement" and "envelope_width" not in kwargs and "collection_waist" in kwargs:
            kwargs["envelope_width"] = kwargs["collection_waist"]
        if name == "spectrum" and "radial_measure" in kwargs:
            try:
                kwargs["radial_measure"] = RadialMeasure(kwargs["radial_measure"].lower())
            except ValueError:
                raise ConfigError("expected paper_linear or polar_jacobian", "spectrum.radial_measure") from None
        try:
            built[name] = factory(**kwargs)
        except (DomainError, ValueError) as exc:
            raise ConfigError(str(exc), name) from exc
    cfg = RunConfig(output_dir=values.get("output_dir", "out"), **built)
    _validate(cfg)
    return cfg


def _validate(cfg):
    def check(ok, key, message):
        if not ok:
            raise ConfigError(message, key)

    try:
        cfg.grid.build()
    except (DomainError, ValueError) as exc:
        raise ConfigError(str(exc), "grid") from exc
    check(cfg.grid.p_max > 0, "grid.p_max", "must be positive")
    check(0 <= cfg.spectrum.m_max <= cfg.grid.n_phi // 2 - 1, "spectrum.m_max", "must lie in [0, n_phi/2 - 1]")
    check(cfg.profile.n_phi >= 8, "profile.n_phi", "must be >= 8")
    check(all(p >= 0 for p in cfg.profile.p_minus), "profile.p_minus", "must be non-negative")
    for key, lengths in (("profile.l_c", cfg.profile.l_c), ("spectrum.l_c", cfg.spectrum.l_c)):
        check(all(v > 0 for v in lengths), key, "lengths must be positive")
    m = cfg.measurement
    check(m.charge_min <= m.charge_max, "measurement.charge_min", "must not exceed charge_max")
    check(0 <= m.total_charge <= 20, "measurement.total_charge", "must lie in [0, 20]")
    check(0 <= m.extrinsic_charge <= 20, "measurement.extrinsic_charge", "must lie in [0, 20]")
    check(m.collection_waist > 0, "measurement.collection_waist", "must be positive")
    check(m.envelope_width > 0, "measurement.envelope_width", "must be positive")
    check(m.p0 > 3.0 * m.collection_waist, "measurement.p0", "must exceed 3 x collection_waist")
    r = cfg.reexpansion
    check(0 <= r.max_charge <= 20, "reexpansion.max_charge", "must lie in [0, 20]")
    check(r.n_radial * r.n_phi <= 32 * 32, "reexpansion.n_radial", "grid must not exceed 32x32")


def load_config(path, overrides=()):
    return parse_config(Path(path).read_text(encoding="utf-8"), overrides)


# --- emission --------------------------------------------------------------


def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple):
        if value and isinstance(value[0], tuple):
            return ", ".join(f"{_fmt(a)}:{_fmt(b)}" for a, b in value)
        return ", ".join(_fmt(v) for v in value)
    if isinstance(value, enum.Enum):
        return value.value
    return str(value)


def emit_config(cfg):
    """Canonical text form; ``parse_config(emit_config(cfg)) == cfg``."""
    p, c = cfg.pump, cfg.crystal
    lines = [
        f"pump.l = {p.l}",
        f"pump.p = {p.p}",
        f"pump.k_P = {_fmt(float(p.k_P))}",
        f"pump.w0 = {_fmt(float(p.w0))}",
        f"pump.amplitude = {_fmt(float(p.amplitude))}",
        f"crystal.type = {c.crystal_type.value}",
        f"crystal.l_c = {_fmt(float(c.l_c))}",
        f"crystal.K_bar = {_fmt(float(c.K_bar))}",
        f"crystal.N = {_fmt(float(c.N))}",
        f"crystal.nu_bar_D = {_fmt(float(c.nu_bar_D))}",
        f"crystal.signal_e_beam = {_fmt(c.signal_e_beam)}",
    ]
    if c.label:
        lines.append(f"crystal.label = {c.label}")
    lines.append(f"spectral.monochromatic = {_fmt(cfg.spectral.monochromatic)}")
    lines.append(f"spectral.samples = {_fmt(cfg.spectral.samples)}")
    for name in ("grid", "profile", "spectrum", "measurement", "reexpansion"):
        block = getattr(cfg, name)
        for f in fields(block):
            value = getattr(block, f.name)
            if isinstance(value, tuple) and not value:
                continue
            lines.append(f"{name}.{f.name} = {_fmt(value)}")
    lines.append(f"output_dir = {cfg.output_dir}")
    return "\n".join(lines) + "\n"
