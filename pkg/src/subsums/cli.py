"""Command line entry point: ``subsums COMMAND [--config FILE | --preset NAME] [options]``.

Exit codes: 0 success, 2 certificate or verification failure, 3 enumeration
budget exceeded, 4 configuration error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence

from . import _kernels
from .config import COMMANDS, FORMATS, RunConfig, parse_config, preset_config, presets
from .cover1d import center_of_distances, classify_gn, cover1d, psum_cover, validate_certificate
from .cover1d import representation_collisions
from .cover2d import cover2d, explore_pq, project_axis, unique_representation_certificate
from .errors import ConfigError, DepthBudgetExceeded, NotEventuallyMonotone, SubsumsError
from .lattice import default_budget, subset_sum_vectors
from .scalar import ONE, Scalar
from .series import Mixed, classify_convergence

EXIT_OK, EXIT_CERT, EXIT_BUDGET, EXIT_CONFIG = 0, 2, 3, 4

DEFAULT_DEPTH = {
    "cover1d": 12,
    "cover2d": 12,
    "classify": 12,
    "psum": 6,
    "pcut-build": 2,
    "pcut-verify": 4,
    "spectre": 6,
    "center": 6,
    "render": 12,
    "explore-pq": 10,
}
DEFAULT_PQ = ("1/2", "2/3", "3/4", "4/5")


@dataclass
class Outcome:
    status: int = EXIT_OK
    text: str = ""
    artifacts: Dict[str, bytes] = field(default_factory=dict)


def _need(cond: bool, what: str, command: str) -> None:
    if not cond:
        raise ConfigError("InvalidConfig", f"{command} needs {what}", "$")


def _fmt_set(values) -> str:
    return "{" + ", ".join(str(v) for v in values) + "}"


def _fmt_vec(v) -> str:
    return "(" + ", ".join(str(c) for c in v) + ")" if len(v) > 1 else str(v[0])


def _image(cover, cfg: RunConfig, stem: str, out: Outcome) -> None:
    from .render import render_cover

    if cfg.format in ("svg", "pgm"):
        out.artifacts[f"{stem}.{cfg.format}"] = render_cover(cover, cfg.viewport, cfg.width, cfg.height, cfg.format)


def run_command(cfg: RunConfig, name: str = "") -> Outcome:
    """Run one validated command and return its exit status, stdout text and files."""
    cmd = cfg.command
    if cmd not in COMMANDS:
        raise ConfigError("UnknownKind", f"unknown command {cmd!r}", "command")
    cap = cfg.budget or default_budget()
    depth = cfg.depth if cfg.depth is not None else DEFAULT_DEPTH.get(cmd, 0)
    stem = name or cmd
    out = Outcome()
    spec = cfg.spec

    if cmd == "cover1d":
        _need(spec is not None and spec.dim == 1, "a 1D spec", cmd)
        cov = cover1d(spec, depth, cap)
        out.text = f"{cov}\n"
        out.artifacts[f"{stem}.txt"] = cov.to_text().encode()
        _image(cov, cfg, stem, out)

    elif cmd == "cover2d":
        _need(spec is not None and spec.dim == 2, "a 2D spec", cmd)
        cov = cover2d(spec, depth, cap)
        x0, x1, y0, y1 = cov.hull()
        px, py = project_axis(cov, "x"), project_axis(cov, "y")
        out.text = (
            f"depth = {depth}\nboxes = {len(cov)}\nhull = [{x0},{x1}] x [{y0},{y1}]\n"
            f"x-projection intervals = {len(px)}\ny-projection intervals = {len(py)}\n"
        )
        out.artifacts[f"{stem}.txt"] = cov.to_text().encode()
        _image(cov, cfg, stem, out)

    elif cmd == "classify":
        _need(spec is not None, "a spec", cmd)
        out.text, out.status = _classify(spec, depth, cap)

    elif cmd == "psum":
        _need(cfg.params is not None, "a params object with P and a", cmd)
        cov = psum_cover(cfg.params.P, cfg.params.a, depth, cap)
        out.text = f"{cov}\n"
        out.artifacts[f"{stem}.txt"] = cov.to_text().encode()
        _image(cov, cfg, stem, out)

    elif cmd == "pcut-build":
        from .pcut import build_pcut_sequence

        _need(cfg.params is not None, "a params object with P and a", cmd)
        seq = build_pcut_sequence(cfg.params)
        n = cfg.params.k * depth
        lines = [f"{i} {x} {y}" for i, (x, y) in enumerate(seq.terms(n), start=1)]
        (xm, xp), (ym, yp) = seq.tail(n)
        lines.append(f"tail x [{xm},{xp}] y [{ym},{yp}]")
        out.text = "\n".join(lines) + "\n"
        out.artifacts[f"{stem}.txt"] = out.text.encode()

    elif cmd == "pcut-verify":
        from .pcut import verify_pcut_cut

        _need(cfg.params is not None, "a params object with P and a", cmd)
        rep = verify_pcut_cut(cfg.params, depth, cap)
        out.text = rep.to_text()
        out.artifacts[f"{stem}.txt"] = out.text.encode()
        out.status = EXIT_OK if rep.ok else EXIT_CERT

    elif cmd == "spectre":
        from .spectre import spectre_of_finite_set, spectre_of_grid

        if cfg.grid is not None:
            res = spectre_of_grid(_grid(cfg))
        elif cfg.points is not None:
            res = spectre_of_finite_set(cfg.points)
        else:
            _need(spec is not None, "a grid, points or spec", cmd)
            terms = spec.terms(depth)
            pts = subset_sum_vectors([t if spec.dim == 2 else (t,) for t in terms], spec.dim, cap)
            res = spectre_of_finite_set(pts)
        body = "".join(_fmt_vec(v) + "\n" for v in res.sorted())
        out.text = f"# spectre of {res.ambient}\nvectors = {len(res)}\n{body}"
        out.artifacts[f"{stem}.txt"] = out.text.encode()

    elif cmd == "center":
        from .spectre import center_of_distances_grid

        if cfg.grid is not None:
            C = center_of_distances_grid(_grid(cfg))
        elif cfg.points is not None:
            C = center_of_distances(cfg.points)
        else:
            _need(spec is not None and spec.dim == 1, "a 1D grid, points or 1D spec", cmd)
            C = center_of_distances(v[0] for v in subset_sum_vectors([(t,) for t in spec.terms(depth)], 1, cap))
        out.text = _fmt_set(sorted(C)) + "\n"
        out.artifacts[f"{stem}.txt"] = out.text.encode()

    elif cmd == "render":
        from .render import render_cover

        _need(spec is not None, "a spec", cmd)
        cov = cover1d(spec, depth, cap) if spec.dim == 1 else cover2d(spec, depth, cap)
        fmt = cfg.format if cfg.format in ("svg", "pgm") else "svg"
        data = render_cover(cov, cfg.viewport, cfg.width, cfg.height, fmt)
        out.artifacts[f"{stem}.{fmt}"] = data
        out.text = f"{stem}.{fmt}: {len(cov)} {'intervals' if spec.dim == 1 else 'boxes'} at depth {depth}, {len(data)} bytes\n"

    elif cmd == "explore-pq":
        ps = cfg.p or tuple(Scalar(v) for v in DEFAULT_PQ)
        qs = cfg.q or tuple(Scalar(v) for v in DEFAULT_PQ)
        lines = ["p q verdict reason boxes potential_collisions exact_collisions disjoint"]
        for p in ps:
            for q in qs:
                st = explore_pq(p, q, depth, cap)
                lines.append(
                    f"{p} {q} {st.verdict} {st.reason.replace(' ', '_')} {st.boxes} "
                    f"{st.potential_collisions} {st.exact_collisions} {st.disjoint}"
                )
        out.text = "\n".join(lines) + "\n"
        out.artifacts[f"{stem}.txt"] = out.text.encode()

    elif cmd == "check-props":
        from .props import run_all

        results = run_all(cfg.cases, cfg.seed)
        out.text = "".join(r.line() + "\n" for r in results)
        out.status = EXIT_OK if all(r.ok for r in results) else EXIT_CERT
    return out


def _grid(cfg: RunConfig):
    from .spectre import make_grid_shape

    g = cfg.grid
    return make_grid_shape(g.shape, g.spacing, g.level, g.radius if g.radius is not None else ONE)


def _classify(spec, depth: int, cap: int):
    lines = []
    status = EXIT_OK
    if spec.dim == 1:
        try:
            conv = classify_convergence(spec)
            if isinstance(conv, Mixed):
                pattern = "".join(v[0] for v in conv.verdicts[:16])
                lines.append(f"convergence = Mixed ({conv.diagnostic}; first verdicts {pattern})")
            else:
                lines.append(f"convergence = {conv}")
        except NotEventuallyMonotone as exc:
            lines.append(f"convergence = not certified ({exc})")
        res = classify_gn(spec, depth)
        lines.append(f"type = {res.verdict}" + (f" ({res.name})" if res.name else ""))
        if res.certificate is not None:
            lines.append(f"certificate = {type(res.certificate).__name__}")
            ok = validate_certificate(spec, res)
            lines.append(f"certificate_valid = {ok}")
            if not ok:
                status = EXIT_CERT
        for k, v in res.stats.items():
            lines.append(f"{k} = {v}")
    else:
        cert = unique_representation_certificate(spec)
        if cert is not None:
            lines.append(f"type = Cantor (unique representations: {cert.reason})")
        else:
            lines.append("type = Undetermined")
        rep = representation_collisions(spec, min(depth, 16), cap)
        lines.append(f"depth = {rep.depth}")
        lines.append(f"potential_collisions = {len(rep.potential)}")
        lines.append(f"exact_collisions = {len(rep.exact)}")
        if cert is not None and rep.exact:
            status = EXIT_CERT
    return "\n".join(lines) + "\n", status


class _Parser(argparse.ArgumentParser):
    # usage errors are configuration errors (exit 4), not argparse's exit 2
    def error(self, message):
        raise ConfigError("InvalidConfig", message, "argv")


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="subsums", description="Exact covers of sets of subsums, P-cuts and spectra.")
    p.add_argument("command", nargs="?", choices=COMMANDS + ("presets",), help="defaults to the config's or preset's command")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--config", metavar="FILE", help="JSON config file ('-' for stdin)")
    src.add_argument("--preset", metavar="NAME", help="named preset from the registry")
    p.add_argument("--depth", type=int, metavar="N")
    p.add_argument("--out", metavar="DIR", help="directory for output files")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--budget", type=int, metavar="N", help="cap on enumerated states")
    p.add_argument("--threads", type=int, metavar="N", help="worker threads for parallel kernels")
    p.add_argument("--cases", type=int, metavar="N", help="cases per property suite (check-props)")
    p.add_argument("--seed", type=int, metavar="N", help="random seed (check-props)")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "presets":
            for name, entry in sorted(presets().items()):
                print(f"{name}\t{entry['command']}\t{entry['description']}")
            return EXIT_OK
        name = ""
        if args.preset:
            cfg = preset_config(args.preset, args.command)
            name = args.preset.replace("/", "_")
        elif args.config:
            text = sys.stdin.read() if args.config == "-" else _read(args.config)
            cfg = parse_config(text, args.command)
        else:
            cfg = RunConfig(command=args.command)
        if cfg.command is None:
            raise ConfigError("InvalidConfig", "no command given on the command line or in the config", "command")
        cfg = cfg.with_overrides(
            depth=args.depth, out=args.out, format=args.format, budget=args.budget,
            threads=args.threads, cases=args.cases, seed=args.seed,
        )
        for key in ("depth", "budget", "threads", "cases"):
            v = getattr(args, key)
            if v is not None and v < (0 if key == "depth" else 1):
                raise ConfigError("InvalidConfig", f"--{key} out of range", f"--{key}")
        if cfg.threads:
            _kernels.set_threads(cfg.threads)
        outcome = run_command(cfg, name)
    except ConfigError as exc:
        print(f"error: {exc.code} at {exc.location}: {exc.message}", file=sys.stderr)
        return EXIT_CONFIG
    except DepthBudgetExceeded as exc:
        print(f"error: DepthBudgetExceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except SubsumsError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        if cfg.out:
            os.makedirs(cfg.out, exist_ok=True)
            for fname, data in sorted(outcome.artifacts.items()):
                with open(os.path.join(cfg.out, fname), "wb") as fh:
                    fh.write(data)
            sys.stdout.write(outcome.text)
        elif cfg.command == "render":
            sys.stdout.buffer.write(next(iter(outcome.artifacts.values())))
        else:
            sys.stdout.write(outcome.text)
        sys.stdout.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    return outcome.status


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ConfigError("InvalidConfig", f"cannot read config: {exc.strerror}", path) from None


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
