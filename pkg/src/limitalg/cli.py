"""Command-line surface: parsing, certificates, and JSON reports.

Exit codes: 0 = verdict established, 2 = unknown/inconclusive,
1 = input or usage error.  Reports are JSON with sorted keys, so
identical invocations are byte-identical.  Tower specs are given as a
preset name, a file path, or '-' for stdin; LIMITALG_HORIZON overrides
the default search horizon.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import crossed, dynamics, links, peters, radical
from .parser import ActionSpecData, TowerSyntaxError, parse_tower_file
from .tower import (LevelRangeError, MatrixUnit, PRESETS, TowerSpec,
                    TowerValidationError, embed_unit, verify_embedding_order)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNKNOWN = 2


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def _default_horizon() -> int:
    env = os.environ.get("LIMITALG_HORIZON")
    return int(env) if env else links.DEFAULT_HORIZON


def _read_spec(arg: str) -> tuple[TowerSpec, list[ActionSpecData]]:
    if arg == "-":
        text = sys.stdin.read()
    elif arg in PRESETS:
        text = f"preset {arg}\n"
    elif os.path.exists(arg):
        with open(arg) as fh:
            text = fh.read()
    else:
        raise CliError(f"no such preset or file: {arg}")
    return parse_tower_file(text)


def _parse_unit(text: str) -> MatrixUnit:
    parts = text.split(":")
    if len(parts) != 4:
        raise CliError("unit must be LEVEL:SUMMAND:ROW:COL")
    level, summand, row, col = (int(p) for p in parts)
    return MatrixUnit(level, summand, row, col)


def _emit(report: dict, compact: bool) -> None:
    if compact:
        print(json.dumps(report, sort_keys=True, separators=(",", ":")))
    else:
        print(json.dumps(report, sort_keys=True, indent=2))


# ---------------------------------------------------------------------------
# crossed-product argument plumbing


def _parse_group(text: str) -> crossed.FiniteAbelianGroup:
    if text in ("1", ""):
        return crossed.FiniteAbelianGroup(())
    return crossed.FiniteAbelianGroup(tuple(int(x) for x in text.split("x")))


def _parse_action_gen(text: str, shape: tuple[int, ...]):
    """'perm=1,0;diag=0,1|0,1' -> (permutation, diagonal zeta exponents)."""
    perm = tuple(range(len(shape)))
    diag = tuple((0,) * k for k in shape)
    for part in text.split(";"):
        if not part:
            continue
        key, _, val = part.partition("=")
        if key == "perm":
            perm = tuple(int(x) for x in val.split(","))
        elif key == "diag":
            diag = tuple(tuple(int(x) for x in blk.split(","))
                         for blk in val.split("|"))
        else:
            raise CliError(f"unknown action component {key!r}")
    if len(perm) != len(shape) or len(diag) != len(shape) \
            or any(len(d) != k for d, k in zip(diag, shape)):
        raise CliError("action does not match the base shape")
    return perm, diag


def _build_system(args):
    shape = tuple(int(x) for x in args.base.split(","))
    group = _parse_group(args.group)
    gens = [_parse_action_gen(a, shape) for a in (args.action or [])]
    if len(gens) != len(group.orders):
        raise CliError("need exactly one --action per group factor")
    action = crossed.LevelAction(group, shape, gens)
    return shape, group, action


# ---------------------------------------------------------------------------
# subcommands


def _cmd_validate(args) -> int:
    try:
        tower, actions = _read_spec(args.spec)
    except (TowerSyntaxError, TowerValidationError) as exc:
        _emit({"command": "validate", "ok": False, "error": str(exc)},
              args.json)
        return EXIT_ERROR
    report = {"command": "validate", "ok": True,
              "stationary": tower.stationary,
              "levels_explicit": len(tower.levels),
              "actions": [a.name for a in actions]}
    _emit(report, args.json)
    return EXIT_OK


def _cmd_embed(args) -> int:
    tower, _ = _read_spec(args.spec)
    e = _parse_unit(args.unit)
    img = embed_unit(tower, e, args.level)
    _emit({"command": "embed", "unit": [e.level, e.summand, e.row, e.col],
           "level": args.level,
           "image": [[u.summand, u.row, u.col] for u in img.units]},
          args.json)
    return EXIT_OK


def _cmd_links(args) -> int:
    tower, _ = _read_spec(args.spec)
    e = _parse_unit(args.unit)
    st = links.link_status(tower, e, args.horizon)
    _emit({"command": "links",
           "unit": [e.level, e.summand, e.row, e.col], **st.to_json()},
          args.json)
    return EXIT_UNKNOWN if isinstance(st, links.NotLinkedUpTo) else EXIT_OK


def _cmd_donsig(args) -> int:
    tower, _ = _read_spec(args.spec)
    rep = links.donsig_report(tower, args.level, args.horizon)
    _emit({"command": "donsig", **rep}, args.json)
    return EXIT_UNKNOWN if rep["verdict"] == "inconclusive" else EXIT_OK


def _cmd_radical(args) -> int:
    tower, _ = _read_spec(args.spec)
    e = _parse_unit(args.unit)
    st = radical.radical_membership(tower, e,
                                    expand_horizon=args.expand_horizon,
                                    link_horizon=args.horizon,
                                    exponent=args.exponent)
    _emit({"command": "radical",
           "unit": [e.level, e.summand, e.row, e.col], **st.to_json()},
          args.json)
    return EXIT_UNKNOWN if isinstance(st, radical.Unknown) else EXIT_OK


def _cmd_audit_order(args) -> int:
    tower, _ = _read_spec(args.spec)
    rep = verify_embedding_order(tower, args.level)
    _emit({"command": "audit-order", **rep}, args.json)
    return EXIT_OK if rep["ok"] else EXIT_ERROR


def _tower_action(tower, specs: list[ActionSpecData]) -> dynamics.TowerAction:
    if not specs:
        return dynamics.trivial_tower_action(
            tower, crossed.FiniteAbelianGroup(()))
    group = crossed.FiniteAbelianGroup(tuple(s.order for s in specs))
    return dynamics.TowerAction(tower, group, [dict(s.maps) for s in specs],
                                names=[s.name for s in specs])


def _cmd_audit_technical(args) -> int:
    tower, specs = _read_spec(args.spec)
    action = _tower_action(tower, specs)
    e = _parse_unit(args.unit)
    h1, h2 = (int(x) for x in args.horizons.split(","))
    rep = dynamics.technical_index_audit(tower, action, e, (h1, h2))
    _emit({"command": "audit-technical", **rep}, args.json)
    return EXIT_OK


def _cmd_crossed(args) -> int:
    shape, group, action = _build_system(args)
    triangular = not args.full
    if args.what == "radical":
        a = crossed.build_crossed(shape, group, action, triangular)
        rad = a.radical()
        rep = {"dimension": a.dim, "radical_dim": len(rad),
               "radical": [{str(k): c.as_coeff_strings() for k, c in v.items()}
                           for v in rad]}
    elif args.what == "tight":
        rep = crossed.radical_tightness_check(shape, group, action, triangular)
    elif args.what == "lattice":
        rep = crossed.verify_lattice_iso(shape, group, action, triangular)
    elif args.what == "diag":
        rep = crossed.diag_check(shape, group, action, triangular)
    elif args.what == "links-lemma":
        a = crossed.build_crossed(shape, group, action, triangular)
        rep = crossed.links_lemma_check(a)
    elif args.what == "permanence":
        rep = crossed.semisimplicity_permanence_check(shape, group, action,
                                                      triangular)
    else:  # pragma: no cover - argparse restricts choices
        raise CliError(f"unknown crossed subcommand {args.what!r}")
    _emit({"command": f"crossed-{args.what}", "base": list(shape),
           "group": list(group.orders), **rep}, args.json)
    return EXIT_OK


def _parse_system_file(text: str) -> peters.FiniteDynSys:
    points: list[str] = []
    phi: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("points"):
            _, _, rest = line.partition("=")
            points = rest.split()
        elif line.startswith("phi"):
            _, _, rest = line.partition(":")
            for pair in rest.split():
                src, _, dst = pair.partition("->")
                if not dst:
                    raise CliError(f"line {lineno}: bad phi pair {pair!r}")
                phi[src] = dst
        else:
            raise CliError(f"line {lineno}: unrecognized system line {line!r}")
    if not points:
        raise CliError("system file defines no points")
    try:
        return peters.FiniteDynSys(points, phi)
    except AssertionError as exc:
        raise CliError(f"invalid system: {exc}") from None


def _parse_sets(text: str, sys_: peters.FiniteDynSys) -> peters.SubsetSequence:
    sets = []
    for block in text.split("|"):
        labels = [x for x in block.split(",") if x]
        unknown = set(labels) - set(map(str, sys_.points))
        if unknown:
            raise CliError(f"unknown points in --sets: {sorted(unknown)}")
        by_str = {str(p): p for p in sys_.points}
        sets.append(frozenset(by_str[x] for x in labels))
    return peters.SubsetSequence(tuple(sets))


def _cmd_peters(args) -> int:
    if args.sysfile == "-":
        text = sys.stdin.read()
    else:
        with open(args.sysfile) as fh:
            text = fh.read()
    system = _parse_system_file(text)
    if args.what == "enum":
        seqs = peters.enumerate_sequences(system, args.horizon)
        rep = {"count": len(seqs),
               "sequences": [[sorted(map(str, s)) for s in q.sets]
                             for q in seqs],
               "recurrent_dense": peters.recurrent_dense(system)}
        _emit({"command": "peters-enum", **rep}, args.json)
        return EXIT_OK
    if args.sets is None:
        raise CliError(f"peters {args.what} requires --sets")
    seq = _parse_sets(args.sets, system)
    if args.what == "check":
        rep = peters.check_star(system, seq)
        _emit({"command": "peters-check",
               "ok": rep["ok"],
               **{k: [str(x) for x in v] if k == "witness" else v
                  for k, v in rep.items() if k != "ok"}}, args.json)
        return EXIT_OK
    if args.what == "truncate":
        model = peters.TruncatedSemicrossed(system, args.n)
        ideal = peters.ideal_from_sequence(model, seq)
        iseq = peters.extract_bigstar(model, ideal)
        roundtrip = all(iseq.at(n) == seq.at(n) for n in range(args.n - 1))
        _emit({"command": "peters-truncate", "n": args.n,
               "roundtrip": roundtrip,
               "corners": [sorted(map(str, z)) for z in iseq.zero_sets]},
              args.json)
        return EXIT_OK
    raise CliError(f"unknown peters subcommand {args.what!r}")


def _cmd_preset(args) -> int:
    if args.name not in PRESETS:
        raise CliError(f"unknown preset {args.name!r}")
    sys.stdout.write(f"preset {args.name}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument wiring


def _build_parser() -> _Parser:
    p = _Parser(prog="limitalg", description=__doc__)
    sub = p.add_subparsers(dest="cmd", required=True)
    horizon = _default_horizon()

    def add(name, fn, **kwargs):
        sp = sub.add_parser(name, **kwargs)
        sp.set_defaults(fn=fn)
        sp.add_argument("--json", action="store_true",
                        help="compact single-line JSON")
        return sp

    sp = add("validate", _cmd_validate, help="parse and validate a tower spec")
    sp.add_argument("spec")

    sp = add("embed", _cmd_embed, help="embed a matrix unit to a later level")
    sp.add_argument("spec")
    sp.add_argument("--unit", required=True)
    sp.add_argument("--level", type=int, required=True)

    sp = add("links", _cmd_links, help="link status of a matrix unit")
    sp.add_argument("spec")
    sp.add_argument("--unit", required=True)
    sp.add_argument("--horizon", type=int, default=horizon)

    sp = add("donsig", _cmd_donsig, help="semisimplicity report up to a level")
    sp.add_argument("spec")
    sp.add_argument("--level", type=int, required=True)
    sp.add_argument("--horizon", type=int, default=horizon)

    sp = add("radical", _cmd_radical, help="radical membership of a unit")
    sp.add_argument("spec")
    sp.add_argument("--unit", required=True)
    sp.add_argument("--horizon", type=int, default=horizon)
    sp.add_argument("--expand-horizon", type=int,
                    default=radical.DEFAULT_EXPAND_HORIZON)
    sp.add_argument("--exponent", type=int, default=None)

    sp = add("audit-order", _cmd_audit_order,
             help="diagonal occurrence bounds across one TUHF step")
    sp.add_argument("spec")
    sp.add_argument("--level", type=int, required=True)

    sp = add("audit-technical", _cmd_audit_technical,
             help="tightness index-chase audit")
    sp.add_argument("spec")
    sp.add_argument("--unit", required=True)
    sp.add_argument("--horizons", default="3,4")

    sp = add("crossed", _cmd_crossed, help="finite crossed-product reports")
    sp.add_argument("what", choices=["radical", "tight", "lattice", "diag",
                                     "links-lemma", "permanence"])
    sp.add_argument("--base", required=True,
                    help="comma-separated block sizes, e.g. 2 or 2,2")
    sp.add_argument("--full", action="store_true",
                    help="full matrix blocks instead of triangular")
    sp.add_argument("--group", default="1", help="e.g. 2 or 2x2")
    sp.add_argument("--action", action="append",
                    help="per generator: 'perm=1,0;diag=0,1|0,1'")

    sp = add("peters", _cmd_peters, help="gauge-invariant ideal parametrization")
    sp.add_argument("sysfile")
    sp.add_argument("what", choices=["enum", "check", "truncate"])
    sp.add_argument("--horizon", type=int, default=1)
    sp.add_argument("--sets", default=None,
                    help="sequence as '1,2|1|' (empty block = empty set)")
    sp.add_argument("--n", type=int, default=6)

    sp = add("preset", _cmd_preset, help="emit a builtin tower spec")
    sp.add_argument("name")
    return p


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (TowerSyntaxError, TowerValidationError, LevelRangeError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
