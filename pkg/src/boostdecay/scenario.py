"""Scenario files: YAML mappings with a fixed set of keys.

Example::

    name: bw-contrast
    unit_note: natural units, GeV
    dist:
      family: breit_wigner          # breit_wigner | breit_wigner_truncated | gaussian
      M: 1.0
      Gamma: 1.0                    # both Breit-Wigner families
      # m_threshold: 0.0            # breit_wigner_truncated
      # sigma_m: 0.01               # gaussian (replaces Gamma)
    packet:                         # required by wp_exact / wp_approx
      sigma_p: 0.01
      dimension: 3
    boost:
      v: 0.6
    grid:
      t_start: 0.0
      t_stop: 5.0
      n_points: 6
      spacing: uniform              # uniform | log
    treatments: [rest, naive, heuristic]
    output:
      path: bw-contrast.csv
      format: csv                   # csv | json
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Optional

import yaml

from .amplitude import Boost
from .errors import BoostDecayError, ScenarioError
from .masspec import Family, MassDistribution, breit_wigner, gaussian, truncated_breit_wigner
from .quadrature import TimeGrid
from .wavepacket import MomentumPacket

TREATMENTS = ("rest", "naive", "heuristic", "wp_exact", "wp_approx", "oracle")
WAVEPACKET_TREATMENTS = ("wp_exact", "wp_approx")
FORMATS = ("csv", "json")

_TOP_KEYS = {"name", "unit_note", "dist", "packet", "boost", "grid", "treatments", "output"}
_SECTION_KEYS = {
    "dist": {"family", "M", "Gamma", "sigma_m", "m_threshold"},
    "packet": {"sigma_p", "dimension", "shape"},
    "boost": {"v"},
    "grid": {"t_start", "t_stop", "n_points", "spacing"},
    "output": {"path", "format"},
}


@dataclass(frozen=True)
class Scenario:
    name: str
    dist: MassDistribution
    boost: Boost
    grid: TimeGrid
    treatments: tuple[str, ...]
    packet: Optional[MomentumPacket] = None
    dimension: int = 3
    output_path: str = ""
    output_format: str = "csv"
    unit_note: str = ""

    def to_dict(self) -> dict:
        d = self.dist
        dist = {"family": d.family.value, "M": d.M}
        if d.family is Family.GAUSSIAN:
            dist["sigma_m"] = d.sigma_m
        else:
            dist["Gamma"] = d.Gamma
        if d.family is Family.BREIT_WIGNER_TRUNCATED:
            dist["m_threshold"] = d.m_threshold
        out = {"name": self.name, "unit_note": self.unit_note, "dist": dist}
        if self.packet is not None:
            out["packet"] = {"sigma_p": self.packet.sigma_p, "dimension": self.dimension}
        out["boost"] = {"v": self.boost.v}
        out["grid"] = {"t_start": self.grid.t_start, "t_stop": self.grid.t_stop,
                       "n_points": self.grid.n_points, "spacing": self.grid.spacing}
        out["treatments"] = list(self.treatments)
        out["output"] = {"path": self.output_path, "format": self.output_format}
        return out

    def normalized_text(self) -> str:
        return yaml.safe_dump(self.to_dict(), sort_keys=False, default_flow_style=False)

    def digest(self) -> str:
        return hashlib.sha256(self.normalized_text().encode()).hexdigest()


def _line_index(text: str) -> dict:
    """Map dotted key paths to 1-based line numbers."""
    index = {}
    try:
        root = yaml.compose(text)
    except yaml.YAMLError:
        return index

    def walk(node, prefix):
        if isinstance(node, yaml.MappingNode):
            for k, v in node.value:
                path = f"{prefix}{k.value}"
                index[path] = k.start_mark.line + 1
                walk(v, path + ".")

    if root is not None:
        walk(root, "")
    return index


class _Reader:
    def __init__(self, lines: dict):
        self.lines = lines

    def fail(self, path: str, msg: str):
        line = self.lines.get(path)
        where = f"line {line}, " if line else ""
        raise ScenarioError(f"{where}field '{path}': {msg}")

    def number(self, section: dict, path: str, key: str, required=True, integer=False):
        full = f"{path}.{key}" if path else key
        if key not in section or section[key] is None:
            if required:
                self.fail(full, "missing")
            return None
        val = section[key]
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            self.fail(full, f"expected a number, got {val!r}")
        if integer:
            if int(val) != val:
                self.fail(full, f"expected an integer, got {val!r}")
            return int(val)
        return float(val)

    def mapping(self, data: dict, key: str, required=True):
        if key not in data or data[key] is None:
            if required:
                self.fail(key, "missing section")
            return None
        sec = data[key]
        if not isinstance(sec, dict):
            self.fail(key, "expected a mapping")
        unknown = set(sec) - _SECTION_KEYS[key]
        if unknown:
            self.fail(f"{key}.{sorted(map(str, unknown))[0]}", "unknown key")
        return sec


def parse_scenario(text: str) -> Scenario:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"line {mark.line + 1}: " if mark else ""
        raise ScenarioError(f"{where}invalid YAML ({getattr(exc, 'problem', exc)})") from None
    if not isinstance(data, dict):
        raise ScenarioError("scenario must be a YAML mapping")
    r = _Reader(_line_index(text))
    unknown = set(data) - _TOP_KEYS
    if unknown:
        r.fail(sorted(map(str, unknown))[0], "unknown key")

    name = data.get("name")
    if not isinstance(name, str) or not name.strip():
        r.fail("name", "expected a non-empty string")
    unit_note = data.get("unit_note") or ""
    if not isinstance(unit_note, str):
        r.fail("unit_note", "expected a string")

    d = r.mapping(data, "dist")
    fam = d.get("family")
    try:
        fam = Family(fam)
    except ValueError:
        r.fail("dist.family", f"expected one of {[f.value for f in Family]}, got {fam!r}")
    M = r.number(d, "dist", "M")
    try:
        if fam is Family.GAUSSIAN:
            if "Gamma" in d:
                r.fail("dist.Gamma", "gaussian width is given by sigma_m")
            dist = gaussian(M, r.number(d, "dist", "sigma_m"))
        else:
            for k in ("sigma_m",) + (("m_threshold",) if fam is Family.BREIT_WIGNER else ()):
                if k in d:
                    r.fail(f"dist.{k}", f"not used by family {fam.value}")
            gam = r.number(d, "dist", "Gamma")
            if fam is Family.BREIT_WIGNER:
                dist = breit_wigner(M, gam)
            else:
                dist = truncated_breit_wigner(M, gam, r.number(d, "dist", "m_threshold"))
    except ScenarioError:
        raise
    except BoostDecayError as exc:
        r.fail("dist", str(exc))

    treatments = data.get("treatments")
    if treatments is None or treatments == []:
        r.fail("treatments", "no treatments selected")
    if not isinstance(treatments, list) or not all(isinstance(t, str) for t in treatments):
        r.fail("treatments", "expected a list of treatment names")
    for t in treatments:
        if t not in TREATMENTS:
            r.fail("treatments", f"unknown treatment {t!r} (choose from {list(TREATMENTS)})")
    if len(set(treatments)) != len(treatments):
        r.fail("treatments", "duplicate treatment")

    p = r.mapping(data, "packet", required=False)
    packet, dimension = None, 3
    needs_packet = any(t in WAVEPACKET_TREATMENTS for t in treatments)
    if p is not None:
        if not needs_packet:
            r.fail("packet", "given but no wavepacket treatment (wp_exact, wp_approx) selected")
        shape = p.get("shape", "gaussian")
        try:
            packet = MomentumPacket(r.number(p, "packet", "sigma_p"), shape)
        except ScenarioError:
            raise
        except BoostDecayError as exc:
            r.fail("packet", str(exc))
        dimension = r.number(p, "packet", "dimension", required=False, integer=True) or 3
        if dimension not in (1, 2, 3):
            r.fail("packet.dimension", "must be 1, 2 or 3")
    elif needs_packet:
        r.fail("packet", "required by wavepacket treatments")

    b = r.mapping(data, "boost", required=False) or {}
    v = r.number(b, "boost", "v", required=False) or 0.0
    try:
        boost = Boost(v)
    except BoostDecayError as exc:
        r.fail("boost.v", str(exc))

    g = r.mapping(data, "grid")
    try:
        grid = TimeGrid(r.number(g, "grid", "t_start", required=False) or 0.0,
                        r.number(g, "grid", "t_stop"),
                        r.number(g, "grid", "n_points", integer=True),
                        g.get("spacing", "uniform"))
    except ScenarioError:
        raise
    except BoostDecayError as exc:
        r.fail("grid", str(exc))

    o = r.mapping(data, "output", required=False) or {}
    fmt = o.get("format", "csv")
    if fmt not in FORMATS:
        r.fail("output.format", f"expected one of {list(FORMATS)}, got {fmt!r}")
    path = o.get("path") or f"{name}.{fmt}"
    if not isinstance(path, str):
        r.fail("output.path", "expected a string")

    return Scenario(name=name, dist=dist, boost=boost, grid=grid, treatments=tuple(treatments),
                    packet=packet, dimension=dimension, output_path=path, output_format=fmt,
                    unit_note=unit_note)


def load_scenario(path) -> Scenario:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario: {exc}") from None
    return parse_scenario(text)
