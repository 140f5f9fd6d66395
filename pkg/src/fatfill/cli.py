"""
Command line entry point.

Exit status: 0 on success, 1 when a verification fails (invalid filling,
construction mismatch, non-isomorphic inputs, search budget exhausted), 2 on
usage or input errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from . import constructions as C
from .core import FatGraphError, invariants
from .enumeration import BudgetExceeded, SearchSpec, budget_from_env, enumerate_graphs, max_filling_size
from .io import dumps, read_graph, to_dot
from .isomorphism import canonical_form, isomorphism
from .partitions import PartitionClass, orbit_lower_bound
from .validity import is_filling_system

# JSON Schema for each subcommand's --json output
SCHEMAS: dict[str, dict] = {
    "construct": {
        "type": "object",
        "required": ["command", "family", "graph", "report"],
        "properties": {
            "command": {"const": "construct"},
            "family": {"type": "string"},
            "graph": {"$ref": "#/$defs/graph"},
            "report": {
                "type": "object",
                "required": ["claimed", "computed", "matches", "valid", "notes"],
            },
        },
    },
    "verify": {
        "type": "object",
        "required": ["command", "report"],
        "properties": {
            "command": {"const": "verify"},
            "report": {
                "type": "object",
                "required": ["is_valid", "invariants", "curve_lengths", "face_lengths", "failures"],
                "properties": {"is_valid": {"type": "boolean"}, "failures": {"type": "array"}},
            },
        },
    },
    "canon": {
        "type": "object",
        "required": ["command", "digest", "code", "allow_reflection"],
        "properties": {
            "command": {"const": "canon"},
            "digest": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
            "code": {"type": "array", "items": {"type": "integer"}},
            "allow_reflection": {"type": "boolean"},
        },
    },
    "iso": {
        "type": "object",
        "required": ["command", "isomorphic", "allow_reflection", "mapping", "reverses_orientation"],
        "properties": {
            "command": {"const": "iso"},
            "isomorphic": {"type": "boolean"},
            "mapping": {"type": ["array", "null"], "items": {"type": "integer"}},
        },
    },
    "enumerate": {
        "type": "object",
        "required": ["command", "spec", "counters", "exhausted", "representatives"],
        "properties": {
            "command": {"const": "enumerate"},
            "exhausted": {"type": "boolean"},
            "representatives": {"type": "array"},
        },
    },
    "max-size": {
        "type": "object",
        "required": ["command", "g", "b", "size", "witness"],
        "properties": {
            "command": {"const": "max-size"},
            "size": {"type": "integer"},
            "witness": {"anyOf": [{"$ref": "#/$defs/graph"}, {"type": "null"}]},
        },
    },
    "orbits": {
        "type": "object",
        "required": ["command", "g", "b", "bound"],
        "properties": {
            "command": {"const": "orbits"},
            "bound": {"type": "object", "required": ["counts", "total", "bound"]},
            "census": {"type": "object"},
        },
    },
    "export": {
        "type": "object",
        "required": ["command", "format", "text"],
        "properties": {"command": {"const": "export"}, "format": {"enum": ["dot", "json"]}},
    },
}
GRAPH_SCHEMA = {
    "type": "object",
    "required": ["edges", "sigma0"],
    "properties": {
        "edges": {"type": "integer", "minimum": 0},
        "sigma0": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
    },
}
ERROR_SCHEMA = {
    "type": "object",
    "required": ["command", "error"],
    "properties": {"error": {"type": "string"}},
}
SCHEMAS = {
    name: {"anyOf": [body, ERROR_SCHEMA], "$defs": {"graph": GRAPH_SCHEMA}}
    for name, body in SCHEMAS.items()
}


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    def __init__(self, payload, text):
        super().__init__(text)
        self.payload = payload
        self.text = text


@dataclass
class RunManifest:
    command: str
    parameters: dict
    tool_version: str = __version__
    input_digests: dict = field(default_factory=dict)
    output_digests: dict = field(default_factory=dict)
    wall_time: float = 0.0

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


# ---------------------------------------------------------------------------
# subcommands; each returns (payload, human text, output bytes or None)


def _graph_json(G) -> dict:
    return json.loads(dumps(G))


def _load(path, manifest):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    manifest.input_digests[str(path)] = _sha256(data)
    try:
        return read_graph(path)
    except FatGraphError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _parse_partition(text):
    try:
        return PartitionClass.from_parts(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise UsageError(f"bad partition {text!r}: {exc}") from exc


def cmd_construct(args, manifest):
    fam = args.family
    try:
        if fam == "example":
            G = C.gamma_example()
            rep = C._report(G, C._claim(2, 1, 3), [], check=True)
        elif fam == "remark5":
            G = C.gamma_remark5()
            rep = C._report(G, C._claim(3, 1, 6), [], check=True)
        elif fam == "chain":
            n = args.s
            if n is None:
                if args.g is None or args.b not in (1, 2):
                    raise UsageError("chain needs --s N, or --g G with --b 1 or 2")
                n = 2 * args.g + args.b - 1
            G = C.chain(n)
            inv = invariants(G)
            rep = C._report(G, C._claim(inv.genus, inv.boundary, n), [f"chain of {n} curves"], check=True)
        elif fam == "gamma":
            _need(args, "g", "b")
            rep = C.gamma_g_b(args.g, args.b)
        else:
            _need(args, "g", "b", "partition")
            p = _parse_partition(args.partition)
            if args.s is not None and args.s > p.length:
                p = PartitionClass(p.parts + (0,) * (args.s - p.length))
            s = args.s if args.s is not None else p.length
            rep = C.orbit_representative(args.g, C.OrbitShape(args.b, s, p))
    except C.ConstructionMismatch as exc:
        raise VerificationFailed({"command": "construct", "family": fam, "error": str(exc)},
                                 f"construction mismatch: {exc}") from exc
    except (C.OutOfRange, C.ShapeInvariantViolated, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    inv = rep.computed
    payload = {"command": "construct", "family": fam, "graph": _graph_json(rep.graph), "report": rep.to_dict()}
    text = f"{fam}: genus={inv.genus} boundary={inv.boundary} curves={inv.curves} valid={rep.valid}"
    return payload, text, dumps(rep.graph).encode()


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + n for n in missing))


def cmd_verify(args, manifest):
    G = _load(args.graph, manifest)
    rep = is_filling_system(G)
    payload = {"command": "verify", "report": rep.to_dict()}
    inv = rep.invariants
    if inv is None:
        head = "disconnected graph"
    else:
        head = f"genus={inv.genus} boundary={inv.boundary} curves={inv.curves}"
    lines = [head, "valid filling" if rep.is_valid else "not a valid filling"]
    lines += ["  " + f.describe() for f in rep.failures]
    text = "\n".join(lines)
    out = (rep.to_json() + "\n").encode()
    if not rep.is_valid:
        raise VerificationFailed(payload, text)
    return payload, text, out


def cmd_canon(args, manifest):
    G = _load(args.graph, manifest)
    try:
        code = canonical_form(G, not args.no_reflection)
    except FatGraphError as exc:
        raise UsageError(str(exc)) from exc
    payload = {"command": "canon", "digest": code.hexdigest(), "code": list(code.values),
               "allow_reflection": code.allow_reflection}
    return payload, code.hexdigest(), (code.hexdigest() + "\n").encode()


def cmd_iso(args, manifest):
    G = _load(args.first, manifest)
    H = _load(args.second, manifest)
    try:
        w = isomorphism(G, H, not args.no_reflection)
    except FatGraphError as exc:
        raise UsageError(str(exc)) from exc
    payload = {"command": "iso", "isomorphic": w is not None, "allow_reflection": not args.no_reflection,
               "mapping": list(w.mapping) if w else None,
               "reverses_orientation": w.reverses_orientation if w else None}
    if w is None:
        raise VerificationFailed(payload, "not isomorphic")
    text = "isomorphic" + (" (orientation reversing)" if w.reverses_orientation else "")
    return payload, text, (json.dumps(payload, sort_keys=True) + "\n").encode()


def cmd_enumerate(args, manifest):
    try:
        spec = SearchSpec(args.vertices, genus=args.genus, boundary=args.boundary, curves=args.curves,
                          require_valid_filling=args.valid, budget=_budget(args),
                          allow_reflection=not args.no_reflection, allow_large=args.allow_large)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    res = enumerate_graphs(spec, jobs=args.jobs)
    payload = {"command": "enumerate", **res.to_dict()}
    text = (f"{len(res.representatives)} representatives "
            f"({res.oriented_classes} orientation classes, {res.reflection_classes} up to reflection), "
            f"{res.expanded} nodes expanded, exhausted={res.exhausted}")
    if not res.exhausted:
        raise VerificationFailed(payload, text + "\nsearch budget exhausted; census incomplete")
    return payload, text, (res.to_json() + "\n").encode()


def _budget(args):
    return args.budget if args.budget is not None else budget_from_env()


def cmd_max_size(args, manifest):
    try:
        size, census = max_filling_size(args.g, args.b, budget=_budget(args), jobs=args.jobs)
    except BudgetExceeded as exc:
        raise VerificationFailed({"command": "max-size", "g": args.g, "b": args.b, "error": str(exc)},
                                 str(exc)) from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    witness = census.representatives[0].graph if size else None
    payload = {"command": "max-size", "g": args.g, "b": args.b, "size": size,
               "witness": _graph_json(witness) if witness else None}
    text = f"maximum filling size for genus {args.g} with {args.b} discs: {size}"
    return payload, text, (json.dumps(payload, sort_keys=True) + "\n").encode()


def cmd_orbits(args, manifest):
    try:
        bound = orbit_lower_bound(args.g, args.b)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    payload = {"command": "orbits", "g": args.g, "b": args.b, "bound": bound.to_dict()}
    lines = [f"genus {args.g}, {args.b} discs", "  s  classes"]
    lines += [f"  {s:<2} {c}" for s, c in bound.counts]
    lines.append(f"  total {bound.total}, lower bound {bound.bound}")
    failed = False
    if args.construct or args.verify:
        census = C.orbit_census(args.g, args.b)
        payload["census"] = census.to_dict()
        lines.append(f"built {len(census.built)} of {census.expected} shapes, "
                     f"{census.distinct} pairwise distinct")
        lines += [f"  could not build {s}: {r}" for s, r in census.failed]
        lines += [f"  {s} is isomorphic to {t}" for s, t in census.collisions]
        if census.gamma_is_new:
            lines.append(f"gamma({args.g},{args.b}) is a further class, not isomorphic to any representative")
        else:
            lines.append(f"gamma({args.g},{args.b}) is isomorphic to one of the representatives")
        failed = args.verify and not census.complete
    text = "\n".join(lines)
    if failed:
        raise VerificationFailed(payload, text)
    return payload, text, (json.dumps(payload, sort_keys=True) + "\n").encode()


def cmd_export(args, manifest):
    G = _load(args.graph, manifest)
    if args.format == "dot":
        body = to_dot(G) + "\n"
    else:
        body = dumps(G)
    payload = {"command": "export", "format": args.format, "text": body}
    return payload, body.rstrip("\n"), body.encode()


COMMANDS = {
    "construct": cmd_construct,
    "verify": cmd_verify,
    "canon": cmd_canon,
    "iso": cmd_iso,
    "enumerate": cmd_enumerate,
    "max-size": cmd_max_size,
    "orbits": cmd_orbits,
    "export": cmd_export,
}


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output on stdout")
    common.add_argument("--out", help="write the result artifact here (plus FILE.manifest.json)")
    common.add_argument("--config", help="key=value file supplying defaults; flags win")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = argparse.ArgumentParser(prog="fatfill", description="Fat graphs and filling systems of curves.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    c = sub.add_parser("construct", parents=[common], help="build a known filling")
    c.add_argument("--family", required=True, choices=["chain", "gamma", "orbit", "example", "remark5"])
    c.add_argument("--g", type=int)
    c.add_argument("--b", type=int)
    c.add_argument("--s", type=int, help="chain order, or number of parts for an orbit shape")
    c.add_argument("--partition", help="comma separated parts, e.g. 2,1,0")

    v = sub.add_parser("verify", parents=[common], help="check that a graph is a valid filling")
    v.add_argument("graph")

    k = sub.add_parser("canon", parents=[common], help="print the canonical digest of a graph")
    k.add_argument("graph")
    k.add_argument("--no-reflection", action="store_true")

    i = sub.add_parser("iso", parents=[common], help="test two graphs for isomorphism (exit 1 if not)")
    i.add_argument("first")
    i.add_argument("second")
    i.add_argument("--no-reflection", action="store_true")

    e = sub.add_parser("enumerate", parents=[common], help="census of 4-regular fat graphs")
    e.add_argument("--vertices", type=int, required=True)
    e.add_argument("--genus", type=int)
    e.add_argument("--boundary", type=int)
    e.add_argument("--curves", type=int)
    e.add_argument("--valid", action="store_true", help="keep valid fillings only")
    e.add_argument("--budget", type=int)
    e.add_argument("--no-reflection", action="store_true")
    e.add_argument("--allow-large", action="store_true")

    m = sub.add_parser("max-size", parents=[common], help="largest filling by exhaustive search")
    m.add_argument("--g", type=int, required=True)
    m.add_argument("--b", type=int, required=True)
    m.add_argument("--budget", type=int)

    o = sub.add_parser("orbits", parents=[common], help="orbit lower bound table")
    o.add_argument("--g", type=int, required=True)
    o.add_argument("--b", type=int, required=True)
    o.add_argument("--construct", action="store_true", help="build a representative per shape")
    o.add_argument("--verify", action="store_true", help="fail unless the representatives meet the bound")

    x = sub.add_parser("export", parents=[common], help="write a graph as DOT or normalized JSON")
    x.add_argument("graph")
    x.add_argument("--format", choices=["dot", "json"], default="dot")
    return p


def _read_config(path) -> dict[str, str]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from exc
    out = {}
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key=value")
        key, val = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = val.strip('"')
    return out


def _apply_config(parser, argv, args):
    """Re-parse with config values as defaults so explicit flags still win."""
    sub = parser._subparsers._group_actions[0].choices[args.command]
    actions = {a.dest: a for a in sub._actions}
    defaults = {}
    for key, raw in _read_config(args.config).items():
        if key not in actions or key in ("config", "help"):
            raise UsageError(f"unknown config key {key!r} for {args.command}")
        a = actions[key]
        if isinstance(a, argparse._StoreTrueAction):
            defaults[key] = raw.lower() in ("1", "true", "yes", "on")
        else:
            try:
                defaults[key] = a.type(raw) if a.type else raw
            except ValueError as exc:
                raise UsageError(f"config {key}: {exc}") from exc
            if a.choices and defaults[key] not in a.choices:
                raise UsageError(f"config {key}: {raw!r} not one of {list(a.choices)}")
    for a in sub._actions:
        if a.dest in defaults:
            a.required = False
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    try:
        config = pre.parse_known_args(argv)[0].config
        if config is None:
            args = parser.parse_args(argv)
        else:
            command = next((a for a in argv if a in COMMANDS), None)
            if command is None:
                args = parser.parse_args(argv)
            else:
                args = _apply_config(parser, argv, argparse.Namespace(config=config, command=command))
    except SystemExit as exc:
        return int(exc.code or 0)
    except UsageError as exc:
        parser.print_usage(stderr)
        print(f"fatfill: error: {exc}", file=stderr)
        return 2

    if args.jobs < 1:
        print("fatfill: error: --jobs must be positive", file=stderr)
        return 2
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "json", "out", "config")}
    manifest = RunManifest(args.command, params)
    t0 = time.perf_counter()
    status = 0
    try:
        payload, text, data = COMMANDS[args.command](args, manifest)
    except UsageError as exc:
        parser.print_usage(stderr)
        print(f"fatfill: error: {exc}", file=stderr)
        return 2
    except VerificationFailed as exc:
        payload, text, data = exc.payload, exc.text, None
        status = 1
    manifest.wall_time = round(time.perf_counter() - t0, 6)

    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True), file=stdout)
    else:
        print(text, file=stdout if status == 0 else stderr)
    if args.out and data is not None:
        out = Path(args.out)
        out.write_bytes(data)
        manifest.output_digests[str(out)] = _sha256(data)
        Path(str(out) + ".manifest.json").write_text(manifest.to_json())
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
