"""Kind-tagged JSON model files and their canonical serialization.

One structured-text format: UTF-8 JSON with an explicit kind tag and a
format version.  Relations are sorted pair arrays, sets are sorted index
arrays, so files diff cleanly and serialization round-trips byte for byte.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .boolean import FiniteBA, atoms_of, mask_of
from .category import DcaMorphism, DmsMorphism
from .contact import PrecontactAlgebra, Relation
from .dca import DCA
from .dms import DMSpace, FiniteTopSpace
from .errors import SchemaError
from .snapshot import DMST, TimeStructure, build_dmst

FORMAT_VERSION = 1
KINDS = ("adjacency", "time_structure", "dca", "dmst", "dms", "morphism")


def canonical_dumps(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def digest(payload: dict) -> str:
    return hashlib.sha256(canonical_dumps(payload).encode("utf-8")).hexdigest()


def _pairs(relation) -> list[list[int]]:
    return [list(p) for p in sorted(relation)]


def _mask_list(mask: int) -> list[int]:
    return list(atoms_of(mask))


def encode(obj, claims=None) -> dict:
    """Model dictionary for any supported structure."""
    if isinstance(obj, Relation):
        payload = {
            "kind": "adjacency",
            "format_version": FORMAT_VERSION,
            "point_count": obj.size,
            "pairs": _pairs(obj.pairs),
        }
        if claims:
            payload["claims"] = sorted(claims)
        return payload
    if isinstance(obj, TimeStructure):
        return {
            "kind": "time_structure",
            "format_version": FORMAT_VERSION,
            "point_count": obj.point_count,
            "prec": _pairs(obj.prec),
        }
    if isinstance(obj, DCA):
        return {
            "kind": "dca",
            "format_version": FORMAT_VERSION,
            "atom_count": obj.base.atom_count,
            "space_contact": _pairs(obj.space_rel.pairs),
            "time_contact": _pairs(obj.time_rel.pairs),
            "precedence": _pairs(obj.prec_rel.pairs),
        }
    if isinstance(obj, DMST):
        payload = {
            "kind": "dmst",
            "format_version": FORMAT_VERSION,
            "time": {"point_count": obj.time.point_count, "prec": _pairs(obj.time.prec)},
            "coordinates": [
                {"atom_count": c.base.atom_count, "contact": _pairs(c.relation.pairs)}
                for c in obj.coordinates
            ],
        }
        if len(obj.regions) == _full_size(obj):
            payload["mode"] = "full"
        else:
            payload["mode"] = "custom"
            payload["regions"] = [[_mask_list(x) for x in region] for region in obj.regions]
        return payload
    if isinstance(obj, DMSpace):
        return {
            "kind": "dms",
            "format_version": FORMAT_VERSION,
            "point_count": obj.space.point_count,
            "closed_base": [_mask_list(b) for b in obj.space.closed_base],
            "space_points": _mask_list(obj.space_points),
            "time_points": _mask_list(obj.time_points),
            "prec": _pairs(obj.prec),
            "regions": [_mask_list(a) for a in obj.regions],
        }
    if isinstance(obj, DcaMorphism):
        return {
            "kind": "morphism",
            "format_version": FORMAT_VERSION,
            "morphism_kind": "dca",
            "dom": encode(obj.dom),
            "cod": encode(obj.cod),
            "map": [_mask_list(obj.table[a]) for a in obj.dom.base.elements()],
        }
    if isinstance(obj, DmsMorphism):
        return {
            "kind": "morphism",
            "format_version": FORMAT_VERSION,
            "morphism_kind": "dms",
            "dom": encode(obj.dom),
            "cod": encode(obj.cod),
            "map": list(obj.point_map),
        }
    raise SchemaError(f"cannot encode {type(obj).__name__}")


def _full_size(model: DMST) -> int:
    size = 1
    for c in model.coordinates:
        size *= c.base.size
    return size


def _require(payload: dict, key: str):
    if key not in payload:
        raise SchemaError(f"missing field {key!r}")
    return payload[key]


def _int_pairs(raw, what: str) -> set[tuple[int, int]]:
    try:
        pairs = {(int(x), int(y)) for x, y in raw}
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{what} must be an array of index pairs") from exc
    return pairs


def _mask(raw, what: str) -> int:
    try:
        return mask_of(int(i) for i in raw)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{what} must be an array of indices") from exc


def decode(payload: dict):
    """Structure named by the payload's kind tag.

    Returns (kind, object, extras); extras carries optional fields such as
    an adjacency file's claims.
    """
    if not isinstance(payload, dict):
        raise SchemaError("model file must hold a JSON object")
    kind = _require(payload, "kind")
    if kind not in KINDS:
        raise SchemaError(f"unknown kind {kind!r}")
    version = _require(payload, "format_version")
    if version != FORMAT_VERSION:
        raise SchemaError(f"unsupported format_version {version!r}")
    extras: dict = {}

    if kind == "adjacency":
        size = int(_require(payload, "point_count"))
        pairs = _int_pairs(_require(payload, "pairs"), "pairs")
        extras["claims"] = payload.get("claims", ["precontact"])
        return kind, _checked(Relation, size, pairs), extras
    if kind == "time_structure":
        size = int(_require(payload, "point_count"))
        prec = _int_pairs(_require(payload, "prec"), "prec")
        return kind, _checked(TimeStructure, size, prec), extras
    if kind == "dca":
        n = int(_require(payload, "atom_count"))
        try:
            obj = DCA.from_pairs(
                n,
                _int_pairs(_require(payload, "space_contact"), "space_contact"),
                _int_pairs(_require(payload, "time_contact"), "time_contact"),
                _int_pairs(_require(payload, "precedence"), "precedence"),
            )
        except Exception as exc:
            raise SchemaError(f"bad dca payload: {exc}") from exc
        return kind, obj, extras
    if kind == "dmst":
        time_raw = _require(payload, "time")
        ts = _checked(
            TimeStructure,
            int(_require(time_raw, "point_count")),
            _int_pairs(_require(time_raw, "prec"), "time.prec"),
        )
        coordinates = []
        for coord in _require(payload, "coordinates"):
            n = int(_require(coord, "atom_count"))
            pairs = _int_pairs(_require(coord, "contact"), "contact")
            coordinates.append(
                PrecontactAlgebra(FiniteBA(n), _checked(Relation, n, pairs))
            )
        mode = payload.get("mode", "full")
        regions = None
        if mode != "full":
            regions = [
                tuple(_mask(x, "region coordinate") for x in region)
                for region in _require(payload, "regions")
            ]
        try:
            model = build_dmst(ts, coordinates, mode=mode, regions=regions)
        except Exception as exc:
            raise SchemaError(f"bad dmst payload: {exc}") from exc
        return kind, model, extras
    if kind == "dms":
        count = int(_require(payload, "point_count"))
        base = tuple(sorted(_mask(b, "closed_base") for b in _require(payload, "closed_base")))
        regions = tuple(sorted(_mask(a, "regions") for a in _require(payload, "regions")))
        try:
            space = DMSpace(
                FiniteTopSpace(count, base),
                _mask(_require(payload, "space_points"), "space_points"),
                _mask(_require(payload, "time_points"), "time_points"),
                frozenset(_int_pairs(_require(payload, "prec"), "prec")),
                regions,
            )
        except Exception as exc:
            raise SchemaError(f"bad dms payload: {exc}") from exc
        return kind, space, extras
    if kind == "morphism":
        morphism_kind = _require(payload, "morphism_kind")
        _, dom, _ = decode(_require(payload, "dom"))
        _, cod, _ = decode(_require(payload, "cod"))
        raw_map = _require(payload, "map")
        try:
            if morphism_kind == "dca":
                table = tuple(_mask(entry, "map entry") for entry in raw_map)
                return kind, DcaMorphism(dom, cod, table), extras
            if morphism_kind == "dms":
                return kind, DmsMorphism(dom, cod, tuple(int(x) for x in raw_map)), extras
        except Exception as exc:
            raise SchemaError(f"bad morphism payload: {exc}") from exc
        raise SchemaError(f"unknown morphism_kind {morphism_kind!r}")
    raise SchemaError(f"unhandled kind {kind!r}")  # pragma: no cover


def _checked(cls, size, pairs):
    try:
        return cls.of(size, pairs) if hasattr(cls, "of") else cls(size, frozenset(pairs))
    except Exception as exc:
        raise SchemaError(f"bad {cls.__name__.lower()} payload: {exc}") from exc


def load_path(path) -> tuple[str, object, dict, dict]:
    """Parse a model file: kind, object, extras and the raw payload."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON at line {exc.lineno}") from exc
    kind, obj, extras = decode(payload)
    return kind, obj, extras, payload


def write_path(path, obj, claims=None) -> str:
    payload = encode(obj, claims=claims)
    text = canonical_dumps(payload)
    Path(path).write_text(text, encoding="utf-8")
    return digest(payload)
