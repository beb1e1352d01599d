"""Network scenarios: node geometry plus radio constants.

A scenario fixes the positions of the access points, the legitimate users
and the eavesdroppers on a 2-D map, together with the radio parameters
shared by every link. Node order is meaningful: index ``n`` of ``aps`` is
AP ``n + 1`` in files and reports.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, fields
from functools import cached_property
from importlib import resources
from pathlib import Path

import numpy as np

MAP_SIDE_METERS = 50.0
N_BUILTIN = 6


class ScenarioError(ValueError):
    """Raised when a scenario file cannot be parsed or fails validation.

    ``problems`` lists every violated invariant, not only the first.
    """

    def __init__(self, problems, source=None):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        self.source = source
        prefix = f"{source}: " if source else ""
        super().__init__(prefix + "; ".join(self.problems))


@dataclass(frozen=True)
class RadioParams:
    frequency_hz: float = 2.4e9
    gain_tx: float = 1.0
    gain_rx: float = 1.0
    path_loss_exp: float = 2.0
    noise_watts: float = 3.16e-12
    bandwidth_hz: float = 1.0
    p_max_watts: float = 1.0
    d_min_meters: float = 0.1

    def __post_init__(self):
        problems = self.problems()
        if problems:
            raise ScenarioError(problems)

    def problems(self):
        out = []
        for name in ("frequency_hz", "gain_tx", "gain_rx", "noise_watts",
                     "bandwidth_hz", "p_max_watts", "d_min_meters"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                out.append(f"radio.{name} must be a finite number > 0 (got {value!r})")
        g = self.path_loss_exp
        if not (isinstance(g, (int, float)) and math.isfinite(g) and g >= 1):
            out.append(f"radio.path_loss_exp must be >= 1 (got {g!r})")
        return out


def _as_points(raw, label, problems):
    pts = []
    for i, p in enumerate(raw):
        ok = (isinstance(p, (list, tuple)) and len(p) == 2
              and all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in p))
        if not ok:
            problems.append(f"{label}[{i}] must be an [x, y] pair of numbers (got {p!r})")
            continue
        x, y = float(p[0]), float(p[1])
        if not (math.isfinite(x) and math.isfinite(y)):
            problems.append(f"{label}[{i}] has non-finite coordinates")
            continue
        pts.append((x, y))
    return tuple(pts)


@dataclass(frozen=True)
class Scenario:
    """Immutable network layout. Positions are ``(x, y)`` tuples in meters."""

    aps: tuple
    users: tuple
    eves: tuple
    radio: RadioParams = field(default_factory=RadioParams)
    name: str = "scenario"

    def __post_init__(self):
        problems = []
        object.__setattr__(self, "aps", _as_points(self.aps, "aps", problems))
        object.__setattr__(self, "users", _as_points(self.users, "users", problems))
        object.__setattr__(self, "eves", _as_points(self.eves, "eves", problems))
        if len(self.aps) < 1:
            problems.append("n_aps ≥ 1 violated: scenario needs at least one AP")
        if len(self.users) < 1:
            problems.append("n_users ≥ 1 violated: scenario needs at least one user")
        if not isinstance(self.radio, RadioParams):
            problems.append("radio must be a RadioParams")
        if problems:
            raise ScenarioError(problems, self.name)

    @property
    def n_aps(self) -> int:
        return len(self.aps)

    @property
    def n_users(self) -> int:
        return len(self.users)

    @property
    def n_eves(self) -> int:
        return len(self.eves)

    @cached_property
    def ap_xy(self) -> np.ndarray:
        return _frozen_array(self.aps)

    @cached_property
    def user_xy(self) -> np.ndarray:
        return _frozen_array(self.users)

    @cached_property
    def eve_xy(self) -> np.ndarray:
        return _frozen_array(self.eves)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "radio": asdict(self.radio),
            "aps": [list(p) for p in self.aps],
            "users": [list(p) for p in self.users],
            "eves": [list(p) for p in self.eves],
        }


def _frozen_array(points):
    arr = np.asarray(points, dtype=float).reshape(-1, 2)
    arr.setflags(write=False)
    return arr


_RADIO_KEYS = {f.name for f in fields(RadioParams)}
_SCENARIO_KEYS = {"name", "radio", "aps", "users", "eves"}


def scenario_from_dict(doc, source=None) -> Scenario:
    """Build a Scenario from the JSON document layout, rejecting unknown keys."""
    if not isinstance(doc, dict):
        raise ScenarioError("top level must be a JSON object", source)
    problems = []
    for key in sorted(set(doc) - _SCENARIO_KEYS):
        problems.append(f"unknown field {key!r}")
    for key in ("aps", "users", "eves", "radio"):
        if key not in doc:
            problems.append(f"missing field {key!r}")
    radio_doc = doc.get("radio", {})
    if not isinstance(radio_doc, dict):
        problems.append("radio must be an object")
        radio_doc = {}
    for key in sorted(set(radio_doc) - _RADIO_KEYS):
        problems.append(f"unknown field 'radio.{key}'")
    radio_kwargs = {k: v for k, v in radio_doc.items() if k in _RADIO_KEYS}
    radio = None
    try:
        radio = RadioParams(**radio_kwargs)
    except ScenarioError as exc:
        problems.extend(exc.problems)

    lists = {}
    for key in ("aps", "users", "eves"):
        raw = doc.get(key, [])
        if not isinstance(raw, list):
            problems.append(f"{key} must be an array of [x, y] pairs")
            raw = []
        lists[key] = _as_points(raw, key, problems)
    if len(lists["aps"]) < 1 and isinstance(doc.get("aps", []), list):
        problems.append("n_aps ≥ 1 violated: scenario needs at least one AP")
    if len(lists["users"]) < 1 and isinstance(doc.get("users", []), list):
        problems.append("n_users ≥ 1 violated: scenario needs at least one user")

    name = doc.get("name", "scenario")
    if not isinstance(name, str):
        problems.append("name must be a string")
    if problems:
        # dedupe while keeping order
        raise ScenarioError(list(dict.fromkeys(problems)), source)
    return Scenario(lists["aps"], lists["users"], lists["eves"], radio, name)


def load_scenario(path) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(f"cannot read file: {exc}", str(path)) from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"malformed JSON: {exc}", str(path)) from exc
    return scenario_from_dict(doc, str(path))


def save_scenario(scenario: Scenario, path) -> None:
    Path(path).write_text(json.dumps(scenario.to_dict(), indent=2) + "\n", encoding="utf-8")


def builtin_scenario(scenario_id: int) -> Scenario:
    """Return bundled scenario 1..6 (4, 5, 5, 7, 9 and 13 APs)."""
    if isinstance(scenario_id, bool) or scenario_id not in range(1, N_BUILTIN + 1):
        raise ScenarioError(f"builtin scenario id must be in 1..{N_BUILTIN} (got {scenario_id!r})")
    ref = resources.files("cfjam") / "data" / f"scenario_{scenario_id}.json"
    doc = json.loads(ref.read_text(encoding="utf-8"))
    return scenario_from_dict(doc, f"builtin:{scenario_id}")


def resolve_scenario(ref: str) -> Scenario:
    """Accept either ``builtin:<id>`` or a path to a scenario file."""
    if ref.startswith("builtin:"):
        tail = ref.split(":", 1)[1]
        try:
            sid = int(tail)
        except ValueError:
            raise ScenarioError(f"bad builtin scenario id {tail!r}") from None
        return builtin_scenario(sid)
    return load_scenario(ref)


@dataclass(frozen=True)
class RandomSpec:
    n_aps: int
    n_users: int
    n_eves: int
    map_side_meters: float = MAP_SIDE_METERS
    radio: RadioParams = field(default_factory=RadioParams)

    def __post_init__(self):
        problems = []
        if self.n_aps < 1:
            problems.append("n_aps ≥ 1 violated")
        if self.n_users < 1:
            problems.append("n_users ≥ 1 violated")
        if self.n_eves < 0:
            problems.append("n_eves ≥ 0 violated")
        if not self.map_side_meters > 0:
            problems.append("map_side_meters > 0 violated")
        if problems:
            raise ScenarioError(problems)


def ap_grid_spacing(n_aps: int, side: float) -> float:
    """Minimum pairwise AP distance guaranteed by the jittered grid layout."""
    return side / (math.ceil(math.sqrt(n_aps)) + 1)


def generate_random_scenario(spec: RandomSpec, seed: int, name=None) -> Scenario:
    """Users and eves uniform on the map; APs on a jittered grid.

    The grid has ``g = ceil(sqrt(n_aps))`` cells per side; APs occupy a
    random subset of cell centers and are jittered by at most
    ``side / (2 g (g + 1))`` per axis, which keeps every pair at least
    ``side / (g + 1)`` apart.
    """
    rng = np.random.default_rng(seed)
    side = float(spec.map_side_meters)
    g = math.ceil(math.sqrt(spec.n_aps))
    pitch = side / g
    cells = rng.choice(g * g, size=spec.n_aps, replace=False)
    cells.sort()
    centers = np.stack([(cells % g + 0.5) * pitch, (cells // g + 0.5) * pitch], axis=1)
    jitter = side / (2 * g * (g + 1))
    aps = centers + rng.uniform(-jitter, jitter, size=centers.shape)
    users = rng.uniform(0.0, side, size=(spec.n_users, 2))
    eves = rng.uniform(0.0, side, size=(spec.n_eves, 2))
    if name is None:
        name = f"random-{spec.n_aps}ap-{spec.n_users}u-{spec.n_eves}e-s{seed}"
    return Scenario(aps.tolist(), users.tolist(), eves.tolist(), spec.radio, name)
