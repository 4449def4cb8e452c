"""Physical configuration: ship particulars, roll dynamics coefficients,
GM-variation polynomial, cargo geometry, and sea state.

All records are plain frozen dataclasses, immutable after loading, so they
can be shared freely across threads.  Internal units are SI throughout:
meters, seconds, radians.  Angle keys in configuration documents may carry
a ``_deg`` suffix and are converted to radians once, at load time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import yaml

G = 9.81  # gravitational acceleration, m/s^2

N_RESTORING = 5   # odd restoring polynomial: coefficients of phi^1 .. phi^9
N_GM_POLY = 12    # GM-variation polynomial: coefficients of a_w^1 .. a_w^12


class ConfigError(ValueError):
    """Configuration document is invalid; ``path`` points at the bad key."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


@dataclass(frozen=True)
class ShipParticulars:
    """Principal particulars of the subject ship (full scale)."""

    length_pp: float            # m
    breadth: float              # m
    depth: float                # m
    draught: float              # m
    block_coeff: float
    gm: float                   # m, metacentric height
    natural_roll_period: float  # s
    bilge_keel_length_ratio: float
    bilge_keel_breadth_ratio: float

    def __post_init__(self):
        for name in ("length_pp", "breadth", "depth", "draught", "gm",
                     "natural_roll_period"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"ship.{name}", "must be > 0")

    @property
    def omega0(self) -> float:
        """Natural roll frequency, rad/s."""
        return 2.0 * math.pi / self.natural_roll_period


@dataclass(frozen=True)
class RollModel:
    """Coefficients of the one-degree-of-freedom roll equation.

    The equation of motion is

        phidd + beta1*phid + beta3*phid^3 + sum_n alpha[n]*phi^(2n+1)
              + P(t)*phi = 0

    with the parametric excitation P(t) driven by the effective wave
    amplitude through the GM-variation polynomial ``rho``:

        P = (omega0^2 / gm) * sum_n rho[n] * a_w^(n+1)

    Only odd restoring powers are stored, so the restoring arm is odd in
    phi by construction.  Sign convention: positive a_w means the wave
    trough is amidships.
    """

    beta1: float                # 1/s, linear damping
    beta3: float                # s, cubic damping
    alpha: tuple[float, ...]    # restoring coefficients for phi^1,3,5,7,9
    omega0: float               # rad/s
    gm: float                   # m
    rho: tuple[float, ...]      # GM-variation coefficients for a_w^1..a_w^12

    def __post_init__(self):
        if len(self.alpha) != N_RESTORING:
            raise ConfigError("roll_model.alpha",
                              f"alpha must have {N_RESTORING} entries")
        if len(self.rho) != N_GM_POLY:
            raise ConfigError("roll_model.rho",
                              f"rho must have {N_GM_POLY} entries")
        if self.beta1 < 0:
            raise ConfigError("roll_model.beta1", "must be >= 0")
        if not (self.omega0 > 0 and self.gm > 0):
            raise ConfigError("roll_model", "omega0 and gm must be > 0")
        object.__setattr__(self, "alpha", tuple(float(a) for a in self.alpha))
        object.__setattr__(self, "rho", tuple(float(r) for r in self.rho))

    def restoring_accel(self, phi):
        """Odd restoring polynomial sum_n alpha[n]*phi^(2n+1), rad/s^2.

        Accepts scalars or arrays.  Evaluated by Horner's rule in phi^2 so
        the result is exactly odd in phi.
        """
        phi = np.asarray(phi, dtype=float)
        p2 = phi * phi
        acc = np.zeros_like(p2)
        for a in self.alpha[::-1]:
            acc = p2 * acc + a
        out = phi * acc
        return float(out) if out.ndim == 0 else out

    def gm_delta_factor(self, a_w):
        """Instantaneous parametric excitation P = (omega0^2/gm)*sum rho_n*a_w^n.

        Units 1/s^2; vanishes at a_w = 0 since the polynomial has no
        constant term.  Even-power coefficients break odd symmetry, which
        the GM-variation fit generally requires (trough and crest do not
        change GM by opposite amounts).
        """
        a_w = np.asarray(a_w, dtype=float)
        acc = np.zeros_like(a_w)
        for r in self.rho[::-1]:
            acc = a_w * (acc + r)
        out = (self.omega0 ** 2 / self.gm) * acc
        return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class CargoPosition:
    """Location of a body whose lateral acceleration is tracked.

    ``v_c`` and ``h_c`` are the vertical and horizontal distances from the
    roll axis; ``l_c`` the direct distance, ``phi_c`` the azimuth, and
    ``l_prime`` the effective lever arm l_c*cos(phi_c).
    """

    v_c: float       # m, vertical distance, > 0
    h_c: float       # m, horizontal distance, >= 0
    name: str = ""

    def __post_init__(self):
        if not self.v_c > 0:
            raise ConfigError(f"cargo.{self.name or '?'}.v_c", "must be > 0")
        if self.h_c < 0:
            raise ConfigError(f"cargo.{self.name or '?'}.h_c", "must be >= 0")

    @property
    def l_c(self) -> float:
        return math.hypot(self.v_c, self.h_c)

    @property
    def phi_c(self) -> float:
        return math.atan2(self.h_c, self.v_c)

    @property
    def l_prime(self) -> float:
        # l_c*cos(atan(h_c/v_c)) collapses to v_c algebraically; returning
        # v_c keeps the identity exact in floating point.
        return self.v_c


def cargo_geometry(v_c: float, h_c: float, name: str = "") -> CargoPosition:
    """Build a validated CargoPosition from vertical/horizontal distances."""
    return CargoPosition(v_c=float(v_c), h_c=float(h_c), name=name)


@dataclass(frozen=True)
class SeaState:
    """Short-crested sea description for the wave-field stage."""

    t01: float          # s, mean wave period
    h13: float          # m, significant wave height
    heading: float      # rad, angle from wave direction (pi = head seas)
    wave_length: float  # m, set to the ship length

    def __post_init__(self):
        for name in ("t01", "h13", "wave_length"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"sea.{name}", "must be > 0")


@dataclass(frozen=True)
class WaveNumerics:
    """Discretization settings for spectra and wave-component synthesis."""

    omega_min: float = 0.05
    omega_max: float = 3.0
    grid_points: int = 4000
    n_components: int = 100

    def __post_init__(self):
        if not (0 <= self.omega_min < self.omega_max):
            raise ConfigError("waves.omega_min", "need 0 <= omega_min < omega_max")
        if self.grid_points < 2:
            raise ConfigError("waves.grid_points", "must be >= 2")
        if self.n_components < 1:
            raise ConfigError("waves.n_components", "must be >= 1")


@dataclass(frozen=True)
class SimulationConfig:
    """Monte-Carlo ensemble settings."""

    dt: float = 0.02            # s
    duration: float = 3600.0    # s, record length per realization
    realizations: int = 1000
    master_seed: int = 12022
    burn_in: float = 0.0        # s, samples before this are discarded
    phi0: float = math.radians(5.0)   # rad
    phidot0: float = 0.0        # rad/s

    def __post_init__(self):
        if not self.dt > 0:
            raise ConfigError("simulation.dt", "must be > 0")
        if not self.burn_in >= 0:
            raise ConfigError("simulation.burn_in", "must be >= 0")
        if not self.duration > self.burn_in:
            raise ConfigError("simulation.duration", "must exceed burn_in")
        if self.realizations < 1:
            raise ConfigError("simulation.realizations", "must be >= 1")


@dataclass(frozen=True)
class Config:
    """Everything a pipeline run needs, as validated immutable records."""

    ship: ShipParticulars
    model: RollModel
    cargos: tuple[CargoPosition, ...]
    sea: SeaState
    waves: WaveNumerics = field(default_factory=WaveNumerics)
    sim: SimulationConfig = field(default_factory=SimulationConfig)


def _require(mapping, key, path):
    if not isinstance(mapping, dict):
        raise ConfigError(path, "expected a mapping")
    if key not in mapping:
        raise ConfigError(f"{path}.{key}", "missing key")
    return mapping[key]


def _number(mapping, key, path):
    value = _require(mapping, key, path)
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{path}.{key}", f"not a number: {value!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"{path}.{key}", f"non-finite number: {value!r}")
    return value


def _angle(mapping, key, path, default=None):
    """Read an angle given either as `<key>` (radians) or `<key>_deg`."""
    has_rad, has_deg = key in mapping, f"{key}_deg" in mapping
    if has_rad and has_deg:
        raise ConfigError(f"{path}.{key}", f"give either {key} or {key}_deg, not both")
    if has_deg:
        return math.radians(_number(mapping, f"{key}_deg", path))
    if has_rad:
        return _number(mapping, key, path)
    if default is None:
        raise ConfigError(f"{path}.{key}", "missing key")
    return default


def _number_list(mapping, key, path, count):
    values = _require(mapping, key, path)
    if not isinstance(values, (list, tuple)):
        raise ConfigError(f"{path}.{key}", "expected a list of numbers")
    if len(values) != count:
        raise ConfigError(f"{path}.{key}", f"{key} must have {count} entries")
    out = []
    for i, v in enumerate(values):
        try:
            v = float(v)
        except (TypeError, ValueError):
            raise ConfigError(f"{path}.{key}[{i}]", f"not a number: {v!r}") from None
        if not math.isfinite(v):
            raise ConfigError(f"{path}.{key}[{i}]", f"non-finite number: {v!r}")
        out.append(v)
    return out


def load_config(source) -> Config:
    """Load and validate a configuration document.

    ``source`` may be a path to a YAML file, a YAML string, or an
    already-parsed mapping.  Derived quantities (natural frequency, cargo
    geometry) are computed here; every validation failure carries the
    offending key path.
    """
    if isinstance(source, dict):
        doc = source
    elif hasattr(source, "read"):
        doc = yaml.safe_load(source.read())
    else:
        source = str(source)
        if "\n" in source:  # inline YAML text
            doc = yaml.safe_load(source)
        else:
            with open(source, "r", encoding="utf-8") as fh:
                doc = yaml.safe_load(fh.read())
    if not isinstance(doc, dict):
        raise ConfigError("<root>", "document must be a mapping")

    ship_doc = _require(doc, "ship", "<root>")
    ship = ShipParticulars(
        length_pp=_number(ship_doc, "length_pp", "ship"),
        breadth=_number(ship_doc, "breadth", "ship"),
        depth=_number(ship_doc, "depth", "ship"),
        draught=_number(ship_doc, "draught", "ship"),
        block_coeff=_number(ship_doc, "block_coeff", "ship"),
        gm=_number(ship_doc, "gm", "ship"),
        natural_roll_period=_number(ship_doc, "natural_roll_period", "ship"),
        bilge_keel_length_ratio=_number(ship_doc, "bilge_keel_length_ratio", "ship"),
        bilge_keel_breadth_ratio=_number(ship_doc, "bilge_keel_breadth_ratio", "ship"),
    )

    model_doc = _require(doc, "roll_model", "<root>")
    model = RollModel(
        beta1=_number(model_doc, "beta1", "roll_model"),
        beta3=_number(model_doc, "beta3", "roll_model"),
        alpha=tuple(_number_list(model_doc, "alpha", "roll_model", N_RESTORING)),
        omega0=ship.omega0,
        gm=ship.gm,
        rho=tuple(_number_list(model_doc, "rho", "roll_model", N_GM_POLY)),
    )

    cargo_doc = doc.get("cargo", {})
    if not isinstance(cargo_doc, dict):
        raise ConfigError("cargo", "expected a mapping of name -> position")
    cargos = []
    for name, pos in cargo_doc.items():
        cargos.append(CargoPosition(
            v_c=_number(pos, "v_c", f"cargo.{name}"),
            h_c=_number(pos, "h_c", f"cargo.{name}"),
            name=str(name),
        ))

    sea_doc = _require(doc, "sea", "<root>")
    sea = SeaState(
        t01=_number(sea_doc, "t01", "sea"),
        h13=_number(sea_doc, "h13", "sea"),
        heading=_angle(sea_doc, "heading", "sea", default=math.pi),
        wave_length=_number(sea_doc, "wave_length", "sea"),
    )

    waves_doc = doc.get("waves", {})
    waves = WaveNumerics(
        omega_min=_number(waves_doc, "omega_min", "waves") if "omega_min" in waves_doc else 0.05,
        omega_max=_number(waves_doc, "omega_max", "waves") if "omega_max" in waves_doc else 3.0,
        grid_points=int(_number(waves_doc, "grid_points", "waves")) if "grid_points" in waves_doc else 4000,
        n_components=int(_number(waves_doc, "n_components", "waves")) if "n_components" in waves_doc else 100,
    )

    sim_doc = doc.get("simulation", {})
    defaults = SimulationConfig()
    sim = SimulationConfig(
        dt=_number(sim_doc, "dt", "simulation") if "dt" in sim_doc else defaults.dt,
        duration=_number(sim_doc, "duration", "simulation") if "duration" in sim_doc else defaults.duration,
        realizations=int(_number(sim_doc, "realizations", "simulation")) if "realizations" in sim_doc else defaults.realizations,
        master_seed=int(_number(sim_doc, "master_seed", "simulation")) if "master_seed" in sim_doc else defaults.master_seed,
        burn_in=_number(sim_doc, "burn_in", "simulation") if "burn_in" in sim_doc else defaults.burn_in,
        phi0=_angle(sim_doc, "phi0", "simulation", default=defaults.phi0),
        phidot0=_number(sim_doc, "phidot0", "simulation") if "phidot0" in sim_doc else defaults.phidot0,
    )

    return Config(ship=ship, model=model, cargos=tuple(cargos), sea=sea,
                  waves=waves, sim=sim)


def config_to_document(cfg: Config) -> dict:
    """Serialize a Config back to a plain mapping (radians, SI units).

    ``load_config(config_to_document(cfg))`` round-trips to identical
    values: angles are emitted in radians so no unit conversion is applied
    on re-load.
    """
    return {
        "ship": {
            "length_pp": cfg.ship.length_pp,
            "breadth": cfg.ship.breadth,
            "depth": cfg.ship.depth,
            "draught": cfg.ship.draught,
            "block_coeff": cfg.ship.block_coeff,
            "gm": cfg.ship.gm,
            "natural_roll_period": cfg.ship.natural_roll_period,
            "bilge_keel_length_ratio": cfg.ship.bilge_keel_length_ratio,
            "bilge_keel_breadth_ratio": cfg.ship.bilge_keel_breadth_ratio,
        },
        "roll_model": {
            "beta1": cfg.model.beta1,
            "beta3": cfg.model.beta3,
            "alpha": list(cfg.model.alpha),
            "rho": list(cfg.model.rho),
        },
        "cargo": {c.name: {"v_c": c.v_c, "h_c": c.h_c} for c in cfg.cargos},
        "sea": {
            "t01": cfg.sea.t01,
            "h13": cfg.sea.h13,
            "heading": cfg.sea.heading,
            "wave_length": cfg.sea.wave_length,
        },
        "waves": {
            "omega_min": cfg.waves.omega_min,
            "omega_max": cfg.waves.omega_max,
            "grid_points": cfg.waves.grid_points,
            "n_components": cfg.waves.n_components,
        },
        "simulation": {
            "dt": cfg.sim.dt,
            "duration": cfg.sim.duration,
            "realizations": cfg.sim.realizations,
            "master_seed": cfg.sim.master_seed,
            "burn_in": cfg.sim.burn_in,
            "phi0": cfg.sim.phi0,
            "phidot0": cfg.sim.phidot0,
        },
    }


def dump_config(cfg: Config) -> str:
    """YAML rendering of ``config_to_document``."""
    return yaml.safe_dump(config_to_document(cfg), sort_keys=False)
