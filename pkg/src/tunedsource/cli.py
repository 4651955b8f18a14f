"""Batch front-end: JSON configs in, deterministic CSV/JSON reports out.

Subcommands
-----------
verify    one row per (mode, chi) cell: radial integrals, boundedness and
          minimality margins, expansion coefficients, pass flags
energies  untuned vs tuned source energies for prescribed amplitudes
sweep     long-format report over a swept axis (chi, k, a, or l)
tune      roots of a tabulated tuning constraint and the selected chi0

Exit codes: 0 all assertions pass, 1 any violation or per-row failure,
2 input/config error (no output file is written in that case).

Reports are byte-identical across runs for identical configs: floats are
rendered with 17 significant digits and all iteration orders are fixed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from . import theorems, tuning
from .errors import (
    ConfigError,
    EvanescentRegimeError,
    NoTunedSolutionError,
    TunedSourceError,
)
from .model import Mode, Substrate, radial_integrals, tuned_wavenumber

__all__ = ["RunConfig", "load_config", "run_verify", "run_energies", "run_sweep", "run_tune", "main"]

REPORT_TAG = "tuned-source v1"

_DEFAULT_TOLS = {
    "quad_rel_tol": 1e-12,
    "margin_tol": 1e-9,
    "f1_tol": 1e-8,
    "f2_tol": 1e-4,
}

# strict-positivity threshold of the minimality assertion, relative to scale
_MIN_STRICT = 1e-12
# the expansion argument covers |chi| mu_omega <= 0.1 k^2
_REGIME = 0.1


@dataclass(frozen=True)
class XiSearch:
    lo: float
    hi: float
    grid_n: int
    tol: float
    table_chi: Tuple[float, ...]
    table_g: Tuple[float, ...]

    def interpolator(self):
        xs = np.asarray(self.table_chi)
        gs = np.asarray(self.table_g)

        def g(chi: float) -> float:
            return float(np.interp(chi, xs, gs))

        return g


@dataclass(frozen=True)
class RunConfig:
    substrate: Substrate
    j_list: Tuple[int, ...]
    l_values: Tuple[int, ...]
    chi_values: Tuple[float, ...]
    xi_search: Optional[XiSearch]
    amplitudes: Tuple[Tuple[Mode, complex], ...]
    sweep_axis: Optional[str]
    sweep_values: Tuple[float, ...]
    quad_rel_tol: float
    margin_tol: float
    f1_tol: float
    f2_tol: float
    out_format: str
    out_path: Optional[str]
    jobs: int


# ---------------------------------------------------------------------------
# config loading


def _expect(block, path, key, kinds, required=True, default=None):
    if key not in block:
        if required:
            raise ConfigError(f"{path}.{key}: required field is missing")
        return default
    value = block[key]
    if kinds == "number":
        if not isinstance(value, (int, float)) or isinstance(value, bool) or not math.isfinite(value):
            raise ConfigError(f"{path}.{key}: expected a finite number, got {value!r}")
        return float(value)
    if kinds == "int":
        if not isinstance(value, int) or isinstance(value, bool):
            raise ConfigError(f"{path}.{key}: expected an integer, got {value!r}")
        return value
    if kinds == "list":
        if not isinstance(value, list):
            raise ConfigError(f"{path}.{key}: expected a list, got {value!r}")
        return value
    if kinds == "dict":
        if not isinstance(value, dict):
            raise ConfigError(f"{path}.{key}: expected an object, got {value!r}")
        return value
    if kinds == "str":
        if not isinstance(value, str):
            raise ConfigError(f"{path}.{key}: expected a string, got {value!r}")
        return value
    raise AssertionError(kinds)


def _load_substrate(raw) -> Substrate:
    block = _expect(raw, "", "substrate", "dict")
    eps = _expect(block, "substrate", "epsilon_r", "number")
    mu = _expect(block, "substrate", "mu_r", "number")
    omega = _expect(block, "substrate", "omega", "number")
    a = _expect(block, "substrate", "a", "number")
    try:
        return Substrate(epsilon_r=eps, mu_r=mu, omega=omega, a=a)
    except TunedSourceError as exc:
        raise ConfigError(f"substrate: {exc}") from exc


def _load_modes(raw, need_modes: bool):
    if "modes" not in raw:
        if need_modes:
            raise ConfigError("modes: required block is missing")
        return (1, 2), ()
    block = _expect(raw, "", "modes", "dict")
    j_list = tuple(_expect(block, "modes", "j", "list", required=False, default=[1, 2]))
    for j in j_list:
        if j not in (1, 2):
            raise ConfigError(f"modes.j: entries must be 1 or 2, got {j!r}")
    if not j_list:
        raise ConfigError("modes.j: must not be empty")
    lspec = block.get("l")
    if lspec is None:
        raise ConfigError("modes.l: required field is missing")
    if isinstance(lspec, dict):
        lo = _expect(lspec, "modes.l", "lo", "int")
        hi = _expect(lspec, "modes.l", "hi", "int")
        if not (1 <= lo <= hi):
            raise ConfigError(f"modes.l: need 1 <= lo <= hi, got lo={lo}, hi={hi}")
        l_values = tuple(range(lo, hi + 1))
    elif isinstance(lspec, list):
        for l in lspec:
            if not isinstance(l, int) or isinstance(l, bool) or l < 1:
                raise ConfigError(f"modes.l: entries must be integers >= 1, got {l!r}")
        if not lspec:
            raise ConfigError("modes.l: must not be empty")
        l_values = tuple(lspec)
    else:
        raise ConfigError(f"modes.l: expected an object or list, got {lspec!r}")
    return j_list, l_values


def _load_chis(raw, substrate: Substrate):
    sources = [key for key in ("chi", "chi_values", "chi_grid") if key in raw]
    if len(sources) > 1:
        raise ConfigError(f"chi: give only one of chi, chi_values, chi_grid (got {sources})")
    if not sources:
        return ()
    key = sources[0]
    if key == "chi":
        values = [_expect(raw, "", "chi", "number")]
    elif key == "chi_values":
        entries = _expect(raw, "", "chi_values", "list")
        values = []
        for i, v in enumerate(entries):
            if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
                raise ConfigError(f"chi_values[{i}]: expected a finite number, got {v!r}")
            values.append(float(v))
    else:
        block = _expect(raw, "", "chi_grid", "dict")
        lo = _expect(block, "chi_grid", "lo", "number")
        hi = _expect(block, "chi_grid", "hi", "number")
        n = _expect(block, "chi_grid", "n", "int")
        if n < 1:
            raise ConfigError(f"chi_grid.n: must be >= 1, got {n}")
        if lo > hi:
            raise ConfigError(f"chi_grid: need lo <= hi, got [{lo}, {hi}]")
        values = [float(v) for v in np.linspace(lo, hi, n)]
    k, mw = substrate.k, substrate.mu_omega
    for i, chi in enumerate(values):
        if k * k - chi * mw <= 0.0:
            raise ConfigError(
                f"{key}[{i}]: chi={chi} is inadmissible (K^2 = k^2 - chi*mu*omega <= 0)"
            )
    return tuple(values)


def _load_xi_search(raw, substrate: Substrate):
    if "xi_search" not in raw:
        return None
    block = _expect(raw, "", "xi_search", "dict")
    lo = _expect(block, "xi_search", "lo", "number")
    hi = _expect(block, "xi_search", "hi", "number")
    grid_n = _expect(block, "xi_search", "grid_n", "int")
    tol = _expect(block, "xi_search", "tol", "number")
    table = _expect(block, "xi_search", "table", "list")
    if lo >= hi:
        raise ConfigError(f"xi_search: need lo < hi, got [{lo}, {hi}]")
    if grid_n < 2:
        raise ConfigError(f"xi_search.grid_n: must be >= 2, got {grid_n}")
    if tol <= 0.0:
        raise ConfigError(f"xi_search.tol: must be > 0, got {tol}")
    if len(table) < 2:
        raise ConfigError("xi_search.table: need at least two (chi, g) pairs")
    chis, gs = [], []
    for i, pair in enumerate(table):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ConfigError(f"xi_search.table[{i}]: expected a [chi, g] pair, got {pair!r}")
        for v in pair:
            if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
                raise ConfigError(f"xi_search.table[{i}]: entries must be finite numbers")
        chis.append(float(pair[0]))
        gs.append(float(pair[1]))
    if any(b <= a for a, b in zip(chis, chis[1:])):
        raise ConfigError("xi_search.table: chi entries must be strictly increasing")
    if lo < chis[0] or hi > chis[-1]:
        raise ConfigError(
            f"xi_search: interval [{lo}, {hi}] must lie inside the table span "
            f"[{chis[0]}, {chis[-1]}]"
        )
    return XiSearch(lo=lo, hi=hi, grid_n=grid_n, tol=tol, table_chi=tuple(chis), table_g=tuple(gs))


def _load_amplitudes(raw):
    if "amplitudes" not in raw:
        return ()
    entries = _expect(raw, "", "amplitudes", "list")
    out = []
    seen = set()
    for i, entry in enumerate(entries):
        path = f"amplitudes[{i}]"
        if not isinstance(entry, dict):
            raise ConfigError(f"{path}: expected an object, got {entry!r}")
        j = _expect(entry, path, "j", "int")
        l = _expect(entry, path, "l", "int")
        m = _expect(entry, path, "m", "int", required=False, default=0)
        re = _expect(entry, path, "re", "number")
        im = _expect(entry, path, "im", "number", required=False, default=0.0)
        try:
            mode = Mode(j=j, l=l, m=m)
        except TunedSourceError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
        if mode in seen:
            raise ConfigError(f"{path}: duplicate mode (j={j}, l={l}, m={m})")
        seen.add(mode)
        out.append((mode, complex(re, im)))
    return tuple(out)


def _load_sweep(raw, substrate: Substrate):
    if "sweep" not in raw:
        return None, ()
    block = _expect(raw, "", "sweep", "dict")
    axis = _expect(block, "sweep", "axis", "str")
    if axis not in ("chi", "k", "a", "l"):
        raise ConfigError(f"sweep.axis: must be one of chi, k, a, l; got {axis!r}")
    if "values" in block:
        entries = _expect(block, "sweep", "values", "list")
        values = []
        for i, v in enumerate(entries):
            if axis == "l":
                if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                    raise ConfigError(f"sweep.values[{i}]: l values must be integers >= 1")
                values.append(v)
            else:
                if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
                    raise ConfigError(f"sweep.values[{i}]: expected a finite number")
                values.append(float(v))
    else:
        lo = _expect(block, "sweep", "lo", "number")
        hi = _expect(block, "sweep", "hi", "number")
        n = _expect(block, "sweep", "n", "int")
        if n < 1:
            raise ConfigError(f"sweep.n: must be >= 1, got {n}")
        if axis == "l":
            raise ConfigError("sweep: axis 'l' needs explicit integer 'values'")
        values = [float(v) for v in np.linspace(lo, hi, n)]
    if not values:
        raise ConfigError("sweep.values: must not be empty")
    if axis == "chi":
        k, mw = substrate.k, substrate.mu_omega
        for i, chi in enumerate(values):
            if k * k - chi * mw <= 0.0:
                raise ConfigError(f"sweep.values[{i}]: chi={chi} is inadmissible (K^2 <= 0)")
    if axis == "a":
        for i, v in enumerate(values):
            if v <= 0.0:
                raise ConfigError(f"sweep.values[{i}]: radius must be > 0")
    if axis == "k":
        for i, v in enumerate(values):
            if v == 0.0:
                raise ConfigError(f"sweep.values[{i}]: k must be nonzero")
    return axis, tuple(values)


def _load_tolerances(raw, overrides):
    block = raw.get("tolerances", {})
    if not isinstance(block, dict):
        raise ConfigError(f"tolerances: expected an object, got {block!r}")
    tols = {}
    for name, default in _DEFAULT_TOLS.items():
        tols[name] = _expect(block, "tolerances", name, "number", required=False, default=default)
    if overrides.get("quad_rel_tol") is not None:
        tols["quad_rel_tol"] = overrides["quad_rel_tol"]
    if overrides.get("margin_tol") is not None:
        tols["margin_tol"] = overrides["margin_tol"]
    if not (1e-14 <= tols["quad_rel_tol"] <= 1e-3):
        raise ConfigError(
            f"tolerances.quad_rel_tol: must lie in [1e-14, 1e-3], got {tols['quad_rel_tol']}"
        )
    for name in ("margin_tol", "f1_tol", "f2_tol"):
        if tols[name] < 0.0:
            raise ConfigError(f"tolerances.{name}: must be >= 0, got {tols[name]}")
    return tols


def load_config(path: str, *, command: str, overrides=None) -> RunConfig:
    """Parse and validate a JSON run configuration.

    Raises ConfigError with a field path (or a line/column position for
    malformed JSON).
    """
    overrides = overrides or {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"{path}: JSON parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")

    substrate = _load_substrate(raw)
    need_modes = command in ("verify", "sweep")
    j_list, l_values = _load_modes(raw, need_modes)
    chi_values = _load_chis(raw, substrate)
    xi_search = _load_xi_search(raw, substrate)
    amplitudes = _load_amplitudes(raw)
    sweep_axis, sweep_values = _load_sweep(raw, substrate)
    tols = _load_tolerances(raw, overrides)

    out_block = raw.get("output", {})
    if not isinstance(out_block, dict):
        raise ConfigError(f"output: expected an object, got {out_block!r}")
    out_format = _expect(out_block, "output", "format", "str", required=False, default="csv")
    if out_format not in ("csv", "json"):
        raise ConfigError(f"output.format: must be 'csv' or 'json', got {out_format!r}")
    out_path = _expect(out_block, "output", "path", "str", required=False, default=None)
    if overrides.get("format") is not None:
        out_format = overrides["format"]
    if overrides.get("out") is not None:
        out_path = overrides["out"]

    if command == "verify" and not chi_values:
        raise ConfigError("verify needs one of chi, chi_values, chi_grid")
    if command == "energies" and not (chi_values or xi_search is not None):
        raise ConfigError("energies needs chi values (chi, chi_values, chi_grid) or an xi_search block")
    if command == "energies" and "amplitudes" not in raw:
        raise ConfigError("energies needs an amplitudes list (may be empty)")
    if command == "sweep":
        if sweep_axis is None:
            raise ConfigError("sweep needs a sweep block with an axis")
        if sweep_axis != "chi" and not chi_values:
            raise ConfigError("sweep over k, a or l needs chi values (chi, chi_values, chi_grid) as well")
    if command == "tune" and xi_search is None:
        raise ConfigError("tune needs an xi_search block")

    return RunConfig(
        substrate=substrate,
        j_list=j_list,
        l_values=l_values,
        chi_values=chi_values,
        xi_search=xi_search,
        amplitudes=amplitudes,
        sweep_axis=sweep_axis,
        sweep_values=sweep_values,
        quad_rel_tol=tols["quad_rel_tol"],
        margin_tol=tols["margin_tol"],
        f1_tol=tols["f1_tol"],
        f2_tol=tols["f2_tol"],
        out_format=out_format,
        out_path=out_path,
        jobs=max(1, int(overrides.get("jobs") or 1)),
    )


# ---------------------------------------------------------------------------
# report helpers


def _norm(value):
    """Normalize numpy scalars so rendering and exit-code checks are uniform."""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    return value


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, int):
        return str(value)
    return str(value)


def render_csv(command: str, columns: Sequence[str], rows) -> str:
    lines = [f"# {REPORT_TAG}", ",".join(columns)]
    for row in rows:
        cells = []
        for value in row:
            text = _fmt(_norm(value))
            if "," in text or '"' in text or "\n" in text:
                text = '"' + text.replace('"', '""') + '"'
            cells.append(text)
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def render_json(command: str, columns: Sequence[str], rows) -> str:
    payload = {
        "format": REPORT_TAG,
        "command": command,
        "columns": list(columns),
        "rows": [[_norm(v) for v in row] for row in rows],
    }
    return json.dumps(payload, indent=2) + "\n"


def _chi0_for(cfg: RunConfig):
    """Selected chi0: from an xi_search block when present, else 0 (the zero
    multiplier, when admissible, is always the smallest-magnitude choice)."""
    if cfg.xi_search is None:
        return 0.0, None
    xs = cfg.xi_search
    chi_set = tuning.find_constraint_roots(
        xs.interpolator(), xs.lo, xs.hi, xs.grid_n, xs.tol,
        k=cfg.substrate.k, mu_omega=cfg.substrate.mu_omega,
    )
    try:
        return tuning.select_chi0(chi_set), chi_set
    except NoTunedSolutionError:
        return None, chi_set


# ---------------------------------------------------------------------------
# verify


VERIFY_COLUMNS = (
    "j", "l", "k", "K", "chi", "N_k", "N_K", "M",
    "boundedness_margin", "minimality_margin", "f0", "f1_residual",
    "f2_closed", "f2_fd", "pass_bound", "pass_min", "pass_f1", "pass_f2",
    "status",
)


def _mode_expansion(cfg: RunConfig, j: int, l: int):
    """Per-mode expansion columns: f0, f1_residual, f2_closed, f2_fd, pass flags."""
    k = cfg.substrate.k
    a = cfg.substrate.a
    mw = cfg.substrate.mu_omega
    fd = theorems.expansion_fd(j, l, k, a, mw, rel_tol=max(1e-14, cfg.quad_rel_tol / 10.0))
    if j == 2:
        cf = theorems.expansion_j2(l, k, a, mw)
        f0 = cf.f0
        f1_res = abs(fd.f1) / f0
        f2_closed = cf.f2
        pass_f2 = bool(abs(f2_closed - fd.f2) <= cfg.f2_tol * abs(f2_closed))
    else:
        check = theorems.f1_vanishing_check(l, k, a, mw, tol=cfg.f1_tol, rel_tol=cfg.quad_rel_tol)
        f0 = check.f0
        f1_res = check.residual
        f2_closed = None
        pass_f2 = None
    pass_f1 = bool(f1_res <= cfg.f1_tol)
    return f0, f1_res, f2_closed, fd.f2, pass_f1, pass_f2


def _margin_cells(cfg: RunConfig, mode: Mode, chi: float, chi0: float):
    """Shared verify/sweep numerics for one (mode, chi) cell."""
    s = cfg.substrate
    t = tuned_wavenumber(s.k, s.mu_omega, chi)
    ri = radial_integrals(mode, s.k, t.K, s.a, cfg.quad_rel_tol)
    bound_scale = ri.n_self_k * ri.n_self_K
    bound_margin = bound_scale - ri.m_cross * ri.m_cross
    pass_bound = bound_margin >= -cfg.margin_tol * bound_scale
    if chi == 0.0:
        pass_bound = pass_bound and abs(bound_margin) <= cfg.margin_tol * bound_scale
    min_rep = theorems.minimality_margin(mode, s.k, chi, chi0, s.mu_omega, s.a, cfg.quad_rel_tol)
    regime_cap = _REGIME * s.k * s.k
    in_regime = abs(chi * s.mu_omega) <= regime_cap and abs(chi0 * s.mu_omega) <= regime_cap
    if in_regime and chi * chi > chi0 * chi0:
        pass_min = bool(min_rep.margin > _MIN_STRICT * min_rep.scale)
    else:
        pass_min = None
    return t, ri, bound_margin, bound_scale, min_rep, bool(pass_bound), pass_min


def run_verify(cfg: RunConfig):
    """Theorem-verification run; returns (exit_code, columns, rows)."""
    chi0, _ = _chi0_for(cfg)
    rows = []
    if chi0 is None:
        rows.append([None] * (len(VERIFY_COLUMNS) - 1) + ["no-tuned-solution"])
        return 1, VERIFY_COLUMNS, rows

    expansions = {}
    for j in cfg.j_list:
        for l in cfg.l_values:
            try:
                expansions[(j, l)] = _mode_expansion(cfg, j, l)
            except TunedSourceError as exc:
                expansions[(j, l)] = exc

    def cell(args):
        j, l, chi = args
        mode = Mode(j, l)
        exp = expansions[(j, l)]
        if isinstance(exp, TunedSourceError):
            return [j, l, cfg.substrate.k, None, chi] + [None] * 13 + [f"error: {exp}"]
        f0, f1_res, f2_closed, f2_fd, pass_f1, pass_f2 = exp
        try:
            t, ri, bm, _bs, mrep, pb, pm = _margin_cells(cfg, mode, chi, chi0)
        except TunedSourceError as exc:
            return [j, l, cfg.substrate.k, None, chi, None, None, None, None, None,
                    f0, f1_res, f2_closed, f2_fd, None, None, pass_f1, pass_f2,
                    f"error: {exc}"]
        return [j, l, cfg.substrate.k, t.K, chi, ri.n_self_k, ri.n_self_K, ri.m_cross,
                bm, mrep.margin, f0, f1_res, f2_closed, f2_fd,
                pb, pm, pass_f1, pass_f2, "ok"]

    cells = [(j, l, chi) for j in cfg.j_list for l in cfg.l_values for chi in cfg.chi_values]
    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            rows.extend(pool.map(cell, cells))
    else:
        rows.extend(map(cell, cells))

    code = 0
    for row in rows:
        if row[-1] != "ok":
            code = 1
        for flag in row[14:18]:
            if flag is False:
                code = 1
    return code, VERIFY_COLUMNS, rows


# ---------------------------------------------------------------------------
# energies


ENERGIES_COLUMNS = ("chi", "K", "E_untuned", "E_tuned", "delta", "selected", "pass", "status")


def run_energies(cfg: RunConfig):
    """Untuned vs tuned source energies; returns (exit_code, columns, rows)."""
    s = cfg.substrate
    modes = [mode for mode, _ in cfg.amplitudes]

    def energy(chi: float) -> float:
        t = tuned_wavenumber(s.k, s.mu_omega, chi)
        total = 0.0
        for mode, amp in cfg.amplitudes:
            ratio = theorems.mode_ratio(mode, s.k, t.K, s.a, cfg.quad_rel_tol)
            total += ratio * abs(amp) ** 2
        return total

    e_untuned = energy(0.0)

    chi_list = list(cfg.chi_values)
    selected = None
    chi_set = None
    if cfg.xi_search is not None:
        selected, chi_set = _chi0_for(cfg)
        if chi_set is not None:
            chi_list = list(chi_set.roots)

    rows = []
    code = 0
    if not chi_list:
        rows.append([None, None, e_untuned, None, None, None, None, "no-tuned-solution"])
        return code, ENERGIES_COLUMNS, rows

    for chi in chi_list:
        try:
            t = tuned_wavenumber(s.k, s.mu_omega, chi)
            e_tuned = energy(chi)
        except TunedSourceError as exc:
            rows.append([chi, None, e_untuned, None, None, None, None, f"error: {exc}"])
            code = 1
            continue
        delta = e_tuned - e_untuned
        scale = max(abs(e_untuned), abs(e_tuned))
        ok = bool(delta >= -cfg.margin_tol * scale)
        if not ok:
            code = 1
        is_sel = (selected is not None and chi == selected) or None
        rows.append([chi, t.K, e_untuned, e_tuned, delta, is_sel, ok, "ok"])
    return code, ENERGIES_COLUMNS, rows


# ---------------------------------------------------------------------------
# sweep


SWEEP_COLUMNS = (
    "axis", "value", "j", "l", "k", "K", "a", "mu_omega", "chi",
    "N_k", "N_K", "M", "boundedness_margin", "bound_scale",
    "minimality_margin", "min_scale", "pass_bound", "pass_min", "status",
)


def run_sweep(cfg: RunConfig):
    """Long-format sweep over chi, k, a, or l; returns (exit_code, columns, rows)."""
    s = cfg.substrate
    axis = cfg.sweep_axis
    chi0, _ = _chi0_for(cfg)
    if chi0 is None:
        return 1, SWEEP_COLUMNS, [[None] * (len(SWEEP_COLUMNS) - 1) + ["no-tuned-solution"]]

    cells = []
    if axis == "chi":
        for value in cfg.sweep_values:
            for j in cfg.j_list:
                for l in cfg.l_values:
                    cells.append((value, j, l, s.k, s.a, value))
    elif axis == "k":
        for value in cfg.sweep_values:
            for j in cfg.j_list:
                for l in cfg.l_values:
                    for chi in cfg.chi_values:
                        cells.append((value, j, l, value, s.a, chi))
    elif axis == "a":
        for value in cfg.sweep_values:
            for j in cfg.j_list:
                for l in cfg.l_values:
                    for chi in cfg.chi_values:
                        cells.append((value, j, l, s.k, value, chi))
    else:  # axis == "l"
        for value in cfg.sweep_values:
            for j in cfg.j_list:
                for chi in cfg.chi_values:
                    cells.append((value, j, value, s.k, s.a, chi))

    cells.sort(key=lambda c: (c[0], c[1], c[2], c[5]))

    def cell(args):
        value, j, l, k, a, chi = args
        try:
            mode = Mode(j, int(l))
            t = tuned_wavenumber(k, s.mu_omega, chi)
            ri = radial_integrals(mode, k, t.K, a, cfg.quad_rel_tol)
            bound_scale = ri.n_self_k * ri.n_self_K
            bound_margin = bound_scale - ri.m_cross * ri.m_cross
            pass_bound = bool(bound_margin >= -cfg.margin_tol * bound_scale)
            if chi == 0.0:
                pass_bound = pass_bound and bool(abs(bound_margin) <= cfg.margin_tol * bound_scale)
            mrep = theorems.minimality_margin(mode, k, chi, chi0, s.mu_omega, a, cfg.quad_rel_tol)
            regime_cap = _REGIME * k * k
            in_regime = abs(chi * s.mu_omega) <= regime_cap and abs(chi0 * s.mu_omega) <= regime_cap
            pass_min = (
                bool(mrep.margin > _MIN_STRICT * mrep.scale)
                if in_regime and chi * chi > chi0 * chi0
                else None
            )
        except TunedSourceError as exc:
            return [axis, value, j, l, k, None, a, s.mu_omega, chi] + [None] * 7 + [
                None, None, f"error: {exc}"]
        return [axis, value, j, l, k, t.K, a, s.mu_omega, chi,
                ri.n_self_k, ri.n_self_K, ri.m_cross, bound_margin, bound_scale,
                mrep.margin, mrep.scale, pass_bound, pass_min, "ok"]

    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = list(pool.map(cell, cells))
    else:
        rows = list(map(cell, cells))

    code = 0
    for row in rows:
        if row[-1] != "ok" or row[16] is False or row[17] is False:
            code = 1
    return code, SWEEP_COLUMNS, rows


# ---------------------------------------------------------------------------
# tune


TUNE_COLUMNS = ("chi_root", "admissible", "selected", "status")


def run_tune(cfg: RunConfig):
    """Roots of the tabulated constraint and the selected chi0."""
    chi0, chi_set = _chi0_for(cfg)
    rows = []
    if chi_set is None or (not chi_set.roots and not chi_set.excluded):
        rows.append([None, None, None, "no-tuned-solution"])
        return 0, TUNE_COLUMNS, rows
    for root in sorted(chi_set.roots + chi_set.excluded):
        admissible = root in chi_set.roots
        rows.append([root, admissible, (chi0 is not None and root == chi0) or None,
                     "ok" if admissible else "inadmissible"])
    if chi0 is None:
        rows.append([None, None, None, "no-tuned-solution"])
    return 0, TUNE_COLUMNS, rows


# ---------------------------------------------------------------------------
# entry point


_RUNNERS = {
    "verify": run_verify,
    "energies": run_energies,
    "sweep": run_sweep,
    "tune": run_tune,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tuned-source",
        description="Certify boundedness/minimality of tuned minimum-energy radiating sources.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("verify", "per-mode margins, expansion coefficients and pass flags"),
        ("energies", "untuned vs tuned source energies for prescribed amplitudes"),
        ("sweep", "long-format report over a swept axis"),
        ("tune", "roots of a tabulated tuning constraint"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--config", required=True, help="path to the JSON run configuration")
        p.add_argument("--out", default=None, help="output file (defaults to config output.path, else stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=None, help="report format override")
        p.add_argument("--tol-quad", type=float, default=None, help="quadrature relative tolerance override")
        p.add_argument("--tol-margin", type=float, default=None, help="margin tolerance override")
        p.add_argument("--jobs", type=int, default=1, help="concurrent cell evaluations")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    overrides = {
        "out": args.out,
        "format": args.format,
        "quad_rel_tol": args.tol_quad,
        "margin_tol": args.tol_margin,
        "jobs": args.jobs,
    }
    try:
        cfg = load_config(args.config, command=args.command, overrides=overrides)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    code, columns, rows = _RUNNERS[args.command](cfg)
    text = (render_csv if cfg.out_format == "csv" else render_json)(args.command, columns, rows)
    if cfg.out_path:
        with open(cfg.out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
