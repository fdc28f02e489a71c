"""Command-line entry point: ``recolor10 <command> ...``.

Every command prints one report (JSON with ``schema: 1`` or plain text).
Exit codes: 0 success, 1 usage or input errors, 2 a verification
counterexample (its motif file is written next to the report).
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

SCHEMA = 1
NAMED = ("k4", "octahedron", "icosahedron")


class CliError(Exception):
    def __init__(self, code: str, message: str, exit_code: int = 1):
        super().__init__(message)
        self.code = code
        self.exit_code = exit_code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message)


@dataclass
class RunConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    seed: int = 0
    samples: int = 1_000_000
    budget_states: int = 2_000_000
    format: str = "json"
    jobs: int = 1
    out: str | None = None
    timing: bool = False


# -- input helpers -----------------------------------------------------------

def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError("io_error", f"{path}: {exc.strerror or exc}") from None


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise CliError("io_error", f"{path}: {exc.strerror or exc}") from None


def load_graph(arg: str):
    from .embed import GraphError, named, parse_plane_graph

    if arg in NAMED:
        return named(arg)
    try:
        return parse_plane_graph(_read(arg))
    except GraphError as exc:
        raise CliError("bad_graph", f"{arg}: {exc}") from None


def load_coloring(arg: str):
    from .recolor import ColoringError, parse_coloring

    try:
        return parse_coloring(_read(arg))
    except ColoringError as exc:
        raise CliError("bad_coloring", f"{arg}: {exc}") from None


def _counterexample(cfg: RunConfig, default: str, text: str) -> str:
    path = cfg.out or default
    _write(path, text)
    return path


# -- commands ----------------------------------------------------------------

def cmd_gen(cfg: RunConfig, args) -> tuple[dict, int]:
    from .embed import GraphError, format_plane_graph, generate

    try:
        g = generate(args.kind, n=args.n, seed=cfg.seed)
    except GraphError as exc:
        raise CliError("bad_arguments", str(exc)) from None
    text = format_plane_graph(g)
    report = {"kind": args.kind, "seed": cfg.seed, "n": g.n, "m": g.m,
              "min_degree": min(g.degree(v) for v in range(g.n))}
    if cfg.out:
        _write(cfg.out, text)
        report["path"] = cfg.out
    else:
        report["graph"] = text
    return report, 0


def cmd_validate(cfg: RunConfig, args) -> tuple[dict, int]:
    from .embed import GraphError, euler_characteristic, validate, validate_triangulation
    from .recolor import ColoringError, Scene, is_proper, parse_sequence, verify_valid_sequence

    g = load_graph(args.graph)
    try:
        validate(g)
    except GraphError as exc:
        raise CliError("bad_graph", str(exc)) from None
    tri = validate_triangulation(g)
    report: dict = {"n": g.n, "m": g.m, "faces": len(g.faces()), "components": len(g.components()),
                    "euler_characteristic": euler_characteristic(g),
                    "is_triangulation": tri.is_triangulation, "min_degree": tri.min_degree}
    code = 0
    if args.coloring:
        phi = load_coloring(args.coloring)
        if len(phi) != g.n:
            raise CliError("bad_coloring", f"coloring has {len(phi)} entries, graph has {g.n} vertices")
        report["coloring"] = {"k": phi.k, "proper": is_proper(g, phi)}
    if args.sequence:
        if not args.coloring:
            raise CliError("usage", "--sequence needs --coloring")
        try:
            steps = parse_sequence(_read(args.sequence))
            scene = Scene(g, phi)
        except (ValueError, ColoringError) as exc:
            raise CliError("bad_sequence", str(exc)) from None
        rep = verify_valid_sequence(scene, steps)
        report["sequence"] = {"valid": rep.valid, "length": rep.length,
                              "errors": [list(e) for e in rep.errors[:20]]}
    return report, code


def cmd_explore(cfg: RunConfig, args) -> tuple[dict, int]:
    from .recolor import explore

    g = load_graph(args.graph)
    rep = explore(g, args.k, budget=cfg.budget_states)
    report = asdict(rep)
    report["eccentricity_histogram"] = {str(k): v for k, v in sorted(rep.eccentricity_histogram.items())}
    report["k"] = args.k
    return report, 0


def cmd_verify_lemmas(cfg: RunConfig, args) -> tuple[dict, int]:
    from .motif import MotifError, oo_recolorable, parse_motif

    if args.single:
        try:
            M = parse_motif(_read(args.single))
        except MotifError as exc:
            raise CliError("bad_motif", str(exc)) from None
        verdict = oo_recolorable(M)
        return {"motif": args.single, **json.loads(verdict.to_json())}, 0
    from .catalog import verify_base_lemmas

    reports = verify_base_lemmas()
    out = []
    code = 0
    for r in reports:
        d = r.to_dict()
        if not cfg.timing:
            d.pop("runtime")
        out.append(d)
        if r.verdict != "verified":
            code = 2
            d["artifact"] = _counterexample(cfg, f"counterexample_{r.lemma}.motif", r.counterexample)
    return {"lemmas": out, "verdict": "verified" if code == 0 else "counterexample"}, code


def cmd_verify_catalog(cfg: RunConfig, args) -> tuple[dict, int]:
    from .catalog import CatalogError, load_catalog, verify_catalog

    try:
        templates = load_catalog(_read(args.catalog) if args.catalog else None)
    except CatalogError as exc:
        raise CliError("bad_catalog", str(exc)) from None
    only = args.only.split(",") if args.only else None
    reports = verify_catalog(templates, samples=cfg.samples, seed=cfg.seed, jobs=cfg.jobs, only=only)
    out = []
    code = 0
    for r in reports:
        d = r.to_dict()
        if not cfg.timing:
            d.pop("runtime")
        if r.verdict != "verified":
            code = 2
            d["artifact"] = _counterexample(cfg, f"counterexample_{r.config}.motif", r.counterexample)
        d.pop("counterexample")
        out.append(d)
    return {"configurations": out, "verdict": "verified" if code == 0 else "counterexample"}, code


def _appearance_input_error(g) -> str | None:
    from .discharge import DischargeError, _check_appearance_input

    try:
        _check_appearance_input(g)
    except DischargeError as exc:
        return str(exc)
    return None


def cmd_find_config(cfg: RunConfig, args) -> tuple[dict, int]:
    from .discharge import AppearanceError, find_induced_configuration

    g = load_graph(args.graph)
    err = _appearance_input_error(g)
    if err:
        raise CliError("precondition", err)
    try:
        app = find_induced_configuration(g)
    except AppearanceError as exc:
        return {"verdict": "counterexample", "message": str(exc)}, 2
    return {"verdict": "found", **asdict(app)}, 0


def cmd_discharge(cfg: RunConfig, args) -> tuple[dict, int]:
    from .discharge import DischargeError, apply_rules, final_charges, find_appearance

    g = load_graph(args.graph)
    try:
        ledger = apply_rules(g)
        fc = final_charges(g, ledger)
    except DischargeError as exc:
        raise CliError("precondition", str(exc)) from None
    report: dict = {"n": g.n, "total_initial": fc.total_initial, "total_final": fc.total_final,
                    "conserved": fc.conserved,
                    "transfers": dict(sorted(Counter(t.rule for t in ledger.transfers).items()))}
    if cfg.out:
        _write(cfg.out, ledger.to_json())
        report["ledger"] = cfg.out
    code = 0 if fc.conserved else 2
    err = _appearance_input_error(g)
    if err:
        report["appearance"] = None
        report["appearance_skipped"] = err
    else:
        app = find_appearance(g)
        report["appearance"] = asdict(app) if app else None
        if app is None:
            code = 2
    return report, code


def cmd_solve(cfg: RunConfig, args) -> tuple[dict, int]:
    from .recolor import ColoringError, Scene, format_sequence
    from .solver import MotifCounterexample, SolverError, solve_scene

    g = load_graph(args.graph)
    try:
        scene = Scene(g, load_coloring(args.coloring))
    except ColoringError as exc:
        raise CliError("bad_coloring", str(exc)) from None
    try:
        seq, final, stats = solve_scene(scene)
    except MotifCounterexample as exc:
        path = _counterexample(cfg, "counterexample.motif", exc.motif_text)
        return {"verdict": "counterexample", "message": str(exc), "artifact": path}, 2
    except SolverError as exc:
        raise CliError("solver_error", str(exc)) from None
    report = asdict(stats)
    report["final"] = list(final.colors)
    if cfg.out:
        _write(cfg.out, format_sequence(seq))
        report["sequence"] = cfg.out
    else:
        report["steps"] = [list(s) for s in seq]
    return report, 0


def cmd_transform(cfg: RunConfig, args) -> tuple[dict, int]:
    from .recolor import ColoringError, Scene, format_sequence
    from .solver import MotifCounterexample, SolverError, transform_10

    g = load_graph(args.graph)
    try:
        a = Scene(g, load_coloring(args.alpha)).alpha
        b = Scene(g, load_coloring(args.beta)).alpha
    except ColoringError as exc:
        raise CliError("bad_coloring", str(exc)) from None
    try:
        seq, stats = transform_10(g, a, b)
    except MotifCounterexample as exc:
        path = _counterexample(cfg, "counterexample.motif", exc.motif_text)
        return {"verdict": "counterexample", "message": str(exc), "artifact": path}, 2
    except SolverError as exc:
        raise CliError("solver_error", str(exc)) from None
    report = asdict(stats)
    report["bound"] = 8 * g.n
    if cfg.out:
        _write(cfg.out, format_sequence(seq))
        report["sequence"] = cfg.out
    else:
        report["steps"] = [list(s) for s in seq]
    return report, 0


COMMANDS = {
    "gen": cmd_gen, "validate": cmd_validate, "explore": cmd_explore,
    "verify-lemmas": cmd_verify_lemmas, "verify-catalog": cmd_verify_catalog,
    "find-config": cmd_find_config, "discharge": cmd_discharge, "solve": cmd_solve,
    "transform": cmd_transform,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for all randomness (default 0)")
    common.add_argument("--samples", type=int, default=1_000_000,
                        help="samples per randomized configuration (default 10^6)")
    common.add_argument("--budget-states", type=int, default=2_000_000,
                        help="state budget for explore (default 2*10^6)")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    common.add_argument("--out", help="output file for the command's artifact")
    common.add_argument("--timing", action="store_true", help="include runtimes in the report")

    p = _Parser(prog="recolor10", description="Recoloring experiments on planar graphs.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    s = sub.add_parser("gen", parents=[common], help="generate a triangulation")
    s.add_argument("kind", choices=NAMED + ("random", "random_mindeg5"))
    s.add_argument("--n", type=int)
    s = sub.add_parser("validate", parents=[common], help="check a graph, coloring and sequence")
    s.add_argument("graph")
    s.add_argument("--coloring")
    s.add_argument("--sequence")
    s = sub.add_parser("explore", parents=[common], help="reconfiguration graph statistics")
    s.add_argument("graph")
    s.add_argument("--k", type=int, required=True)
    s = sub.add_parser("verify-lemmas", parents=[common], help="verify the base lemmas")
    s.add_argument("--single", help="decide one motif file instead")
    s = sub.add_parser("verify-catalog", parents=[common], help="verify the configuration catalog")
    s.add_argument("--only", help="comma-separated configuration ids")
    s.add_argument("--catalog", help="catalog file (default: packaged catalog)")
    s = sub.add_parser("find-config", parents=[common], help="find an induced configuration")
    s.add_argument("graph")
    s = sub.add_parser("discharge", parents=[common], help="run the charge rules")
    s.add_argument("graph")
    s = sub.add_parser("solve", parents=[common], help="recolor a 10-coloring to 9 colors")
    s.add_argument("graph")
    s.add_argument("coloring")
    s = sub.add_parser("transform", parents=[common], help="recolor one 10-coloring into another")
    s.add_argument("graph")
    s.add_argument("alpha")
    s.add_argument("beta")
    return p


def _text(report: dict, prefix: str = "") -> list[str]:
    lines = []
    for k, v in report.items():
        if isinstance(v, dict):
            lines.append(f"{prefix}{k}:")
            lines.extend(_text(v, prefix + "  "))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{prefix}{k}:")
            for item in v:
                lines.extend(_text(item, prefix + "  "))
                lines.append("")
        elif k == "graph":
            lines.append(v.rstrip("\n"))
        else:
            lines.append(f"{prefix}{k}: {v}")
    return lines


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    fmt = "text" if "--format=text" in argv or ("--format" in argv and "text" in argv) else "json"
    command = next((a for a in argv if a in COMMANDS), None)
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise CliError("usage", "a command is required: " + ", ".join(COMMANDS))
        inputs = [getattr(args, k) for k in ("graph", "coloring", "alpha", "beta") if getattr(args, k, None)]
        cfg = RunConfig(args.command, inputs, args.seed, args.samples, args.budget_states, args.format,
                        args.jobs, args.out, args.timing)
        fmt = cfg.format
        report, code = COMMANDS[args.command](cfg, args)
        status = "ok" if code == 0 else "counterexample"
        body = {"schema": SCHEMA, "command": args.command, "status": status, **report}
        if cfg.timing:
            body["runtime"] = round(time.perf_counter() - start, 3)
    except CliError as exc:
        code = exc.exit_code
        body = {"schema": SCHEMA, "command": command, "status": "error",
                "error": {"code": exc.code, "message": str(exc)}}
    if fmt == "json":
        stdout.write(json.dumps(body, sort_keys=True, indent=2) + "\n")
    else:
        stdout.write("\n".join(_text(body)) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
