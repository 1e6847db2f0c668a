"""Configuration and calibration file I/O.

The configuration format is INI-style with sections [base], [masses],
[design] and an optional [published] block used by calibration.  Keys are
named exactly like the corresponding dataclass fields, values are SI.
Parse errors always report the offending key and line number.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import ConfigError
from .model import (DESIGN_FIELDS, BaseConstants, Calibration, DesignVector,
                    MassModel)

_BASE_KEYS = {"c_p", "R_p", "g", "rho", "K_tau_m", "K_v", "gamma",
              "R_m", "L_m"}
_MASS_KEYS = {"m_e", "m_p", "m_B", "electronics_radius", "electronics_height"}
_DESIGN_KEYS = set(DESIGN_FIELDS)
_PUBLISHED_KEYS = {"P_s", "P_m", "V_m", "i", "omega_p"}
_SECTIONS = {"base": _BASE_KEYS, "masses": _MASS_KEYS,
             "design": _DESIGN_KEYS, "published": _PUBLISHED_KEYS}


@dataclass(frozen=True)
class VehicleConfig:
    base: BaseConstants
    masses: MassModel | None
    design: DesignVector | None
    published: dict | None


def parse_config_text(text: str, origin: str = "<config>") -> VehicleConfig:
    sections: dict = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(("#", ";")):
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name not in _SECTIONS:
                raise ConfigError(f"{origin}:{lineno}: unknown section "
                                  f"[{name}]")
            current = sections.setdefault(name, {})
            continue
        if "=" not in line:
            raise ConfigError(f"{origin}:{lineno}: expected 'key = value', "
                              f"got {line!r}")
        if current is None:
            raise ConfigError(f"{origin}:{lineno}: key outside any section")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        section_name = next(n for n, s in sections.items() if s is current)
        if key not in _SECTIONS[section_name]:
            raise ConfigError(f"{origin}:{lineno}: unknown key {key!r} in "
                              f"section [{section_name}]")
        try:
            current[key] = float(value)
        except ValueError:
            raise ConfigError(f"{origin}:{lineno}: key {key!r}: "
                              f"{value!r} is not a number") from None

    try:
        base = BaseConstants(**sections.get("base", {}))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{origin}: [base]: {exc}") from None
    masses = None
    if "masses" in sections:
        try:
            masses = MassModel(**sections["masses"])
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{origin}: [masses]: {exc}") from None
    design = None
    if "design" in sections:
        missing = _DESIGN_KEYS - set(sections["design"])
        if missing:
            raise ConfigError(f"{origin}: [design]: missing keys "
                              f"{sorted(missing)}")
        try:
            design = DesignVector(**sections["design"])
        except ValueError as exc:
            raise ConfigError(f"{origin}: [design]: {exc}") from None
    published = sections.get("published")
    return VehicleConfig(base=base, masses=masses, design=design,
                         published=published)


def load_config(path: str) -> VehicleConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config_text(text, origin=path)


def save_calibration(path: str, cal: Calibration) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"weight": cal.weight, "R_m": cal.R_m}, fh, indent=2)
        fh.write("\n")


def load_calibration(path: str) -> Calibration:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read calibration {path}: {exc}") from None
    if "weight" not in obj:
        raise ConfigError(f"calibration {path}: missing 'weight'")
    return Calibration(weight=float(obj["weight"]),
                       R_m=None if obj.get("R_m") is None
                       else float(obj["R_m"]))
