"""Command-line interface: ingestion, verification commands and generators.

Exit codes: 0 all checks passed, 1 some check or capability failed,
2 unreadable or schema-invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import generate as gen
from .category import duality_roundtrip, validate_dca_morphism, validate_dms_morphism
from .contact import CONTACT_AXIOMS, PRECONTACT_AXIOMS, contact_from_adjacency
from .dca import (
    DCA,
    canonical_standard_dca,
    canonical_time_structure,
    clan_structure,
    correspondence2,
    g_maps,
    standard_dca,
    validate_dca,
)
from .dms import classify, dual, dual_space, validate_dms
from .errors import CapabilityError, MereotimeError, PreconditionError, SchemaError
from .models import digest, load_path, write_path
from .reporting import plain
from .snapshot import (
    TIME_CONDITIONS,
    check_time_condition,
    correspondence_check,
    is_full,
    is_rich,
)

OUTPUT_ENV = "MEREOTIME_OUT"


def _out_dir(args) -> Path:
    out = args.out or os.environ.get(OUTPUT_ENV) or "."
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _atoms(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


class CommandReport:
    def __init__(self, command: str, source: str, input_digest: str):
        self.command = command
        self.source = source
        self.input_digest = input_digest
        self.checks: list[dict] = []
        self.info: dict = {}
        self.started = time.perf_counter()

    def add_check(self, name: str, holds: bool, witness=None, note=None) -> None:
        entry = {"name": name, "holds": bool(holds)}
        if witness is not None:
            entry["witness"] = plain(witness)
        if note is not None:
            entry["note"] = note
        self.checks.append(entry)

    def absorb(self, report) -> None:
        for c in report.checks:
            self.add_check(c.name, c.holds, c.witness, c.note)

    @property
    def ok(self) -> bool:
        return all(c["holds"] for c in self.checks)

    def payload(self) -> dict:
        body = {
            "command": self.command,
            "input": self.source,
            "input_digest": self.input_digest,
            "ok": self.ok,
            "checks": self.checks,
            "info": self.info,
        }
        body["report_digest"] = digest(
            {k: body[k] for k in ("command", "input_digest", "checks", "info")}
        )
        body["elapsed_ms"] = round((time.perf_counter() - self.started) * 1000, 3)
        return body

    def emit(self, fmt: str) -> None:
        body = self.payload()
        if fmt == "json":
            print(json.dumps(body, indent=2, sort_keys=True))
            return
        print(f"== {self.command} {self.source}")
        for check in self.checks:
            mark = "PASS" if check["holds"] else "FAIL"
            extra = ""
            if "witness" in check:
                extra = f"  witness={check['witness']}"
            if "note" in check:
                extra += f"  note={check['note']}"
            print(f"{mark}  {check['name']}{extra}")
        for key, value in self.info.items():
            print(f"{key}: {json.dumps(value, sort_keys=True)}")
        print(f"result: {'ok' if self.ok else 'FAILED'}")


def _claim_axioms(claims) -> list[str]:
    out: list[str] = []
    for claim in claims:
        if claim == "precontact":
            out.extend(PRECONTACT_AXIOMS)
        elif claim == "contact":
            out.extend(CONTACT_AXIOMS)
        else:
            out.append(claim)
    seen = []
    for name in out:
        if name not in seen:
            seen.append(name)
    return seen


def _check_command(args) -> int:
    kind, obj, extras, payload = load_path(args.path)
    report = CommandReport("check", str(args.path), digest(payload))

    if kind == "adjacency":
        algebra = contact_from_adjacency(obj)
        table = algebra.axiom_report
        for name in _claim_axioms(extras["claims"]):
            if name not in table:
                raise SchemaError(f"unknown claim {name!r}")
            check = table[name]
            report.add_check(name, check.holds, check.witness)
        report.info["axioms"] = {c.name: c.holds for c in table.checks}
    elif kind == "time_structure":
        report.info["conditions"] = {
            cond.name: check_time_condition(obj, cond).holds for cond in TIME_CONDITIONS
        }
    elif kind == "dca":
        report.absorb(validate_dca(obj))
    elif kind == "dmst":
        for i, coord in enumerate(obj.coordinates):
            failing = [
                c for c in coord.axiom_report.checks if c.name in CONTACT_AXIOMS and not c.holds
            ]
            report.add_check(
                f"coordinate {i} is a contact algebra",
                not failing,
                failing[0].witness if failing else None,
                note=failing[0].name if failing else None,
            )
        rich = is_rich(obj)
        report.info["rich"] = rich
        report.info["full"] = is_full(obj)
        report.info["regions"] = len(obj.regions)
        if rich:
            report.absorb(standard_dca(obj).report)
        else:
            report.info["note"] = "model is not rich; induced algebra not required to validate"
    elif kind == "dms":
        space_report = validate_dms(obj)
        report.absorb(space_report)
        if space_report.ok:
            shape = classify(obj)
            report.info["T0"] = shape.is_t0
            report.info["DM_compact"] = shape.is_dm_compact
    elif kind == "morphism":
        if hasattr(obj, "table"):
            report.absorb(validate_dca_morphism(obj))
        else:
            report.absorb(validate_dms_morphism(obj))
    report.emit(args.format)
    return 0 if report.ok else 1


def _points_command(args) -> int:
    kind, obj, _, payload = load_path(args.path)
    if kind != "dca":
        raise SchemaError("points expects a dca file")
    report = CommandReport("points", str(args.path), digest(payload))
    validation = validate_dca(obj)
    if not validation.ok:
        report.absorb(validation)
        report.emit(args.format)
        return 1
    structure = clan_structure(obj)
    canonical = canonical_time_structure(obj, structure)
    report.info["ultrafilters"] = [[x] for x in obj.base.atoms()]
    report.info["s_clans"] = [_atoms(s) for s in structure.s_clans]
    report.info["t_clans"] = [_atoms(s) for s in structure.t_clans]
    report.info["clusters"] = [_atoms(s) for s in structure.clusters]
    report.info["gamma"] = [
        {"t_clan": _atoms(s), "cluster": _atoms(c)} for s, c in sorted(structure.gamma.items())
    ]
    report.info["counts"] = {
        "ultrafilters": obj.base.atom_count,
        "s_clans": len(structure.s_clans),
        "t_clans": len(structure.t_clans),
        "clusters": len(structure.clusters),
    }
    report.info["canonical_time"] = {
        "point_count": canonical.structure.point_count,
        "prec": sorted(list(p) for p in canonical.structure.prec),
    }
    report.emit(args.format)
    return 0


def _represent_command(args) -> int:
    from .dca import verify_embedding

    kind, obj, _, payload = load_path(args.path)
    if kind != "dca":
        raise SchemaError("represent expects a dca file")
    report = CommandReport("represent", str(args.path), digest(payload))
    report.absorb(verify_embedding(obj))
    canonical = canonical_standard_dca(obj)
    target = _out_dir(args) / (Path(args.path).stem + ".canonical.json")
    write_path(target, canonical.model)
    report.info["model_file"] = str(target)
    report.emit(args.format)
    return 0 if report.ok else 1


def _dualize_command(args) -> int:
    kind, obj, _, payload = load_path(args.path)
    report = CommandReport("dualize", str(args.path), digest(payload))
    out = _out_dir(args)
    if kind == "dca":
        result = dual_space(obj)
        report.absorb(validate_dms(result.space))
        target = out / (Path(args.path).stem + ".dual.json")
        write_path(target, result.space)
        report.info["model_file"] = str(target)
    elif kind == "dms":
        algebra = dual(obj)
        report.absorb(validate_dca(algebra.dca))
        target = out / (Path(args.path).stem + ".dual_algebra.json")
        write_path(target, algebra.dca)
        report.info["model_file"] = str(target)
    else:
        raise SchemaError("dualize expects a dca or dms file")
    report.emit(args.format)
    return 0 if report.ok else 1


def _roundtrip_command(args) -> int:
    kind, obj, _, payload = load_path(args.path)
    if kind not in ("dca", "dms"):
        raise SchemaError("roundtrip expects a dca or dms file")
    report = CommandReport("roundtrip", str(args.path), digest(payload))
    report.absorb(duality_roundtrip(obj))
    report.emit(args.format)
    return 0 if report.ok else 1


def _correspondence_command(args) -> int:
    kind, obj, _, payload = load_path(args.path)
    report = CommandReport("correspondence", str(args.path), digest(payload))
    if kind == "dmst":
        rows = correspondence_check(obj)
        for row in rows:
            report.add_check(
                f"{row.condition.name} matches {row.condition.region_axiom}",
                row.agree,
                witness=(row.left, row.right) if not row.agree else None,
                note=row.note,
            )
        report.info["rows"] = [
            {"condition": r.condition.name, "left": r.left, "right": r.right} for r in rows
        ]
    elif kind == "dca":
        rows = correspondence2(obj)
        for row in rows:
            report.add_check(
                f"{row.condition.name} three-way",
                row.agree,
                witness=(row.on_ultrafilters, row.on_clusters, row.on_regions)
                if not row.agree
                else None,
            )
        report.info["rows"] = [
            {
                "condition": r.condition.name,
                "ultrafilters": r.on_ultrafilters,
                "clusters": r.on_clusters,
                "regions": r.on_regions,
            }
            for r in rows
        ]
    else:
        raise SchemaError("correspondence expects a dmst or dca file")
    report.emit(args.format)
    return 0 if report.ok else 1


def _generate_command(args) -> int:
    try:
        gen.check_size(args.kind, args.size)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = _out_dir(args)
    written = []

    def emit(name: str, obj, claims=None):
        target = out / f"{name}.json"
        write_path(target, obj, claims=claims)
        written.append(str(target))

    if args.exhaustive:
        if args.kind == "adjacency":
            for i, rel in enumerate(gen.all_relations(args.size)):
                emit(f"adjacency_s{args.size}_{i:04d}", rel)
        elif args.kind == "time_structure":
            for i, ts in enumerate(gen.all_time_structures(args.size)):
                emit(f"time_structure_s{args.size}_{i:04d}", ts)
        else:
            print("error: exhaustive generation covers adjacency and time_structure", file=sys.stderr)
            return 2
    else:
        import random

        rng = random.Random(args.seed)
        if args.kind == "adjacency":
            pairs = {
                (x, y)
                for x in range(args.size)
                for y in range(args.size)
                if rng.random() < 0.5
            }
            emit(f"adjacency_s{args.size}_seed{args.seed}", gen.Relation(args.size, frozenset(pairs)))
        elif args.kind == "time_structure":
            emit(
                f"time_structure_s{args.size}_seed{args.seed}",
                gen.seeded_time_structure(rng, args.size),
            )
        elif args.kind == "dca":
            emit(f"dca_s{args.size}_seed{args.seed}", gen.seeded_dca(args.seed, args.size))
        elif args.kind == "dmst":
            emit(f"dmst_s{args.size}_seed{args.seed}", gen.seeded_model(rng, args.size))
    for path in written:
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mereotime",
        description="Finite-model toolkit for region-based theories of space and time.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_common(p, path=True, out=False):
        if path:
            p.add_argument("paths", nargs="+", metavar="path", help="model file(s)")
        if out:
            p.add_argument("--out", help=f"output directory (default ${OUTPUT_ENV} or .)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        return p

    with_common(sub.add_parser("check", help="validate a model file")).set_defaults(
        handler=_check_command
    )
    with_common(sub.add_parser("points", help="clan inventory of an algebra")).set_defaults(
        handler=_points_command
    )
    with_common(
        sub.add_parser("represent", help="snapshot representation of an algebra"), out=True
    ).set_defaults(handler=_represent_command)
    with_common(
        sub.add_parser("dualize", help="dual space of an algebra, or dual algebra of a space"),
        out=True,
    ).set_defaults(handler=_dualize_command)
    with_common(sub.add_parser("roundtrip", help="duality round-trip checks")).set_defaults(
        handler=_roundtrip_command
    )
    with_common(
        sub.add_parser("correspondence", help="time condition / time axiom correspondence")
    ).set_defaults(handler=_correspondence_command)

    g = sub.add_parser("generate", help="generate model files")
    g.add_argument("--kind", required=True, choices=("adjacency", "time_structure", "dca", "dmst"))
    g.add_argument("--size", required=True, type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--exhaustive", action="store_true")
    g.add_argument("--out", help=f"output directory (default ${OUTPUT_ENV} or .)")
    g.set_defaults(handler=_generate_command)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    paths = getattr(args, "paths", None)
    worst = 0
    # inputs are independent; they are processed in input order
    for path in paths if paths is not None else [None]:
        if path is not None:
            args.path = path
        try:
            code = args.handler(args)
        except (SchemaError, OSError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            code = 2
        except (CapabilityError, PreconditionError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            code = 1
        except MereotimeError as exc:
            print(f"error: {exc}", file=sys.stderr)
            code = 1
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
