"""JSON formats for mass functions and set functions.

Floats are written with ``repr`` (shortest string that round-trips, at most 17
significant digits), so a written vector re-parses bit for bit.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .alpha import AlphaSetFunction
from .errors import MassSumViolation
from .frame import MassFunction, make_frame, mass_from_assignments, members_of, subset_of
from .transforms import SetFunction

RENORMALIZE_LIMIT = 1e-3


def fmt(x: float) -> str:
    return repr(float(x))


def mass_to_dict(m: MassFunction) -> dict:
    focal = [
        {"elements": members_of(m.frame, a), "mass": float(m.values[a])}
        for a in np.flatnonzero(m.values)
    ]
    return {"frame": list(m.frame.labels), "focal": focal}


def mass_from_dict(data: dict, renormalize: bool = False, cap: int | None = None) -> MassFunction:
    frame = make_frame(data["frame"]) if cap is None else make_frame(data["frame"], cap=cap)
    pairs = [(subset_of(frame, item["elements"]), float(item["mass"])) for item in data["focal"]]
    if renormalize:
        total = sum(v for _, v in pairs)
        if abs(total - 1.0) > RENORMALIZE_LIMIT:
            raise MassSumViolation(f"masses sum to {total!r}; too far from 1 to renormalize")
        pairs = [(a, v / total) for a, v in pairs]
    return mass_from_assignments(frame, pairs)


def setfunction_to_dict(f: SetFunction | AlphaSetFunction) -> dict:
    out = {"frame": list(f.frame.labels), "family": f.family}
    if isinstance(f, AlphaSetFunction):
        out["alpha"] = f.alpha
    out["values"] = [float(v) for v in f.values]
    return out


def setfunction_from_dict(data: dict) -> SetFunction | AlphaSetFunction:
    frame = make_frame(data["frame"])
    if "alpha" in data:
        return AlphaSetFunction(frame, data["family"], float(data["alpha"]), np.array(data["values"], dtype=float))
    return SetFunction(frame, data["family"], np.array(data["values"], dtype=float))


def dumps(obj) -> str:
    # json uses float.__repr__, the shortest round-tripping form
    return json.dumps(obj, indent=1)


def load_mass(path: str | Path, renormalize: bool = False) -> MassFunction:
    with open(path, encoding="utf-8") as fh:
        return mass_from_dict(json.load(fh), renormalize=renormalize)


def save_mass(m: MassFunction, path: str | Path) -> None:
    Path(path).write_text(dumps(mass_to_dict(m)) + "\n", encoding="utf-8")
