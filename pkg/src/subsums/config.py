"""Run configuration parsing and the preset registry."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from functools import lru_cache
from importlib import resources
from typing import Any, Dict, List, Optional, Tuple

from .errors import ConfigError, SubsumsError
from .scalar import Scalar
from .series import ScalarContext, Spec, spec_from_config

COMMANDS = (
    "cover1d",
    "cover2d",
    "classify",
    "psum",
    "pcut-build",
    "pcut-verify",
    "spectre",
    "center",
    "render",
    "explore-pq",
    "check-props",
)
FORMATS = ("svg", "pgm", "text")

_TOP_KEYS = {
    "command", "spec", "params", "grid", "points", "depth", "out", "format", "budget", "threads",
    "render", "p", "q", "cases", "seed", "version", "description",
}
_GRID_KEYS = {"shape", "spacing", "level", "radius"}
_RENDER_KEYS = {"width", "height", "viewport"}


@dataclass(frozen=True)
class GridRequest:
    shape: str
    spacing: Scalar
    level: int = 0
    radius: Optional[Scalar] = None


@dataclass(frozen=True)
class RunConfig:
    """One validated command invocation; every scalar is exact."""

    command: Optional[str] = None
    spec: Optional[Spec] = None
    params: Any = None  # PcutParams
    grid: Optional[GridRequest] = None
    points: Optional[Tuple] = None
    depth: Optional[int] = None
    out: Optional[str] = None
    format: str = "text"
    budget: Optional[int] = None
    threads: Optional[int] = None
    width: int = 512
    height: int = 512
    viewport: Optional[Tuple[Scalar, Scalar, Scalar, Scalar]] = None
    p: Tuple[Scalar, ...] = ()
    q: Tuple[Scalar, ...] = ()
    cases: int = 500
    seed: int = 0
    description: str = ""

    def with_overrides(self, **kw) -> "RunConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


def _reject_duplicates(pairs):
    obj = {}
    for k, v in pairs:
        if k in obj:
            raise ConfigError("SyntaxError", f"duplicate key {k!r}", k)
        obj[k] = v
    return obj


def load_json(text: str) -> Any:
    try:
        return json.loads(text, object_pairs_hook=_reject_duplicates)
    except json.JSONDecodeError as exc:
        raise ConfigError("SyntaxError", exc.msg, f"line {exc.lineno}, column {exc.colno}") from None


def _int(obj: dict, key: str, path: str, minimum: int = 0) -> int:
    v = obj[key]
    if not isinstance(v, int) or isinstance(v, bool) or v < minimum:
        raise ConfigError("InvalidConfig", f"{key} must be an integer >= {minimum}", f"{path}.{key}")
    return v


def _grid(obj: Any, path: str, ctx: ScalarContext) -> GridRequest:
    if not isinstance(obj, dict):
        raise ConfigError("InvalidConfig", "grid must be an object", path)
    for key in obj:
        if key not in _GRID_KEYS:
            raise ConfigError("InvalidConfig", f"unknown key {key!r}", f"{path}.{key}")
    shape = obj.get("shape")
    if shape not in ("square", "disk", "triangle", "sierpinski", "cantor"):
        raise ConfigError("UnknownKind", f"unknown grid shape {shape!r}", f"{path}.shape")
    if "spacing" not in obj:
        raise ConfigError("InvalidConfig", "missing key 'spacing'", f"{path}.spacing")
    spacing = ctx.scalar(obj["spacing"], f"{path}.spacing")
    level = _int(obj, "level", path) if "level" in obj else 0
    radius = ctx.scalar(obj["radius"], f"{path}.radius") if "radius" in obj else None
    return GridRequest(shape, spacing, level, radius)


def _points(obj: Any, path: str, ctx: ScalarContext) -> Tuple:
    if not isinstance(obj, list) or not obj:
        raise ConfigError("InvalidConfig", "points must be a nonempty list", path)
    out = []
    for i, p in enumerate(obj):
        if isinstance(p, list):
            out.append(tuple(ctx.scalar(c, f"{path}[{i}][{j}]") for j, c in enumerate(p)))
        else:
            out.append(ctx.scalar(p, f"{path}[{i}]"))
    return tuple(out)


def _params(obj: Any, path: str, ctx: ScalarContext):
    from .pcut import pcut_params_from_config

    if not isinstance(obj, dict):
        raise ConfigError("InvalidConfig", "params must be an object", path)
    for key in obj:
        if key not in ("P", "a", "base", "yscale"):
            raise ConfigError("InvalidConfig", f"unknown key {key!r}", f"{path}.{key}")
    for key in ("P", "a"):
        if key not in obj:
            raise ConfigError("InvalidConfig", f"missing key {key!r}", f"{path}.{key}")
    try:
        return pcut_params_from_config(obj, path, ctx)
    except ConfigError:
        raise
    except SubsumsError as exc:
        raise ConfigError("InvalidConfig", str(exc), path) from None


def parse_config(text: str, command: Optional[str] = None) -> RunConfig:
    """Parse config text into a :class:`RunConfig`.

    The text is either a full run object (``{"command": ..., "spec": ...}``)
    or a bare spec, P-sum params object or grid object.
    """
    return config_from_obj(load_json(text), command)


def config_from_obj(obj: Any, command: Optional[str] = None) -> RunConfig:
    ctx = ScalarContext()
    if not isinstance(obj, dict):
        raise ConfigError("InvalidConfig", "config must be a JSON object", "$")
    if "kind" in obj:
        return RunConfig(command=command, spec=spec_from_config(obj, "$", ctx))
    if "P" in obj:
        return RunConfig(command=command, params=_params(obj, "$", ctx))
    if "shape" in obj:
        return RunConfig(command=command, grid=_grid(obj, "$", ctx))
    for key in obj:
        if key not in _TOP_KEYS:
            raise ConfigError("InvalidConfig", f"unknown key {key!r}", f"$.{key}")
    # the command named on the command line wins over the one stored in the config
    cmd = command or obj.get("command")
    if cmd is not None and cmd not in COMMANDS:
        raise ConfigError("UnknownKind", f"unknown command {cmd!r}", "$.command")
    kw: Dict[str, Any] = {"command": cmd}
    present = [k for k in ("spec", "params", "grid", "points") if k in obj]
    if len(present) > 1:
        raise ConfigError("InvalidConfig", f"give only one of {', '.join(present)}", f"$.{present[1]}")
    if "spec" in obj:
        kw["spec"] = spec_from_config(obj["spec"], "$.spec", ctx)
    if "params" in obj:
        kw["params"] = _params(obj["params"], "$.params", ctx)
    if "grid" in obj:
        kw["grid"] = _grid(obj["grid"], "$.grid", ctx)
    if "points" in obj:
        kw["points"] = _points(obj["points"], "$.points", ctx)
    for key, minimum in (("depth", 0), ("budget", 1), ("threads", 1), ("cases", 1), ("seed", 0)):
        if key in obj:
            kw[key] = _int(obj, key, "$", minimum)
    if "out" in obj:
        if not isinstance(obj["out"], str):
            raise ConfigError("InvalidConfig", "out must be a path string", "$.out")
        kw["out"] = obj["out"]
    if "format" in obj:
        if obj["format"] not in FORMATS:
            raise ConfigError("InvalidConfig", f"format must be one of {', '.join(FORMATS)}", "$.format")
        kw["format"] = obj["format"]
    if "description" in obj:
        if not isinstance(obj["description"], str):
            raise ConfigError("InvalidConfig", "description must be a string", "$.description")
        kw["description"] = obj["description"]
    if "render" in obj:
        r = obj["render"]
        if not isinstance(r, dict):
            raise ConfigError("InvalidConfig", "render must be an object", "$.render")
        for key in r:
            if key not in _RENDER_KEYS:
                raise ConfigError("InvalidConfig", f"unknown key {key!r}", f"$.render.{key}")
        if "width" in r:
            kw["width"] = _int(r, "width", "$.render", 1)
        if "height" in r:
            kw["height"] = _int(r, "height", "$.render", 1)
        if "viewport" in r:
            vp = r["viewport"]
            if not isinstance(vp, list) or len(vp) != 4:
                raise ConfigError("InvalidConfig", "viewport is [xmin, xmax, ymin, ymax]", "$.render.viewport")
            kw["viewport"] = tuple(ctx.scalar(v, f"$.render.viewport[{i}]") for i, v in enumerate(vp))
    for key in ("p", "q"):
        if key in obj:
            vals = obj[key] if isinstance(obj[key], list) else [obj[key]]
            kw[key] = tuple(ctx.scalar(v, f"$.{key}") for v in vals)
    return RunConfig(**kw)


@lru_cache(maxsize=1)
def presets() -> Dict[str, dict]:
    text = resources.files("subsums").joinpath("presets.json").read_text(encoding="utf-8")
    return json.loads(text)


def preset_config(name: str, command: Optional[str] = None) -> RunConfig:
    table = presets()
    if name not in table:
        raise ConfigError("UnknownKind", f"unknown preset {name!r}", "--preset")
    return config_from_obj(table[name], command)
