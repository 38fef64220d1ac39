"""JSON file formats, deterministic rendering and the on-disk result cache.

Three input schemas are accepted:

* group file: ``{"name", "order", "table"}`` or ``{"name", "degree", "perm_gens"}``
* fusion file: ``{"group", "p", "seed_morphisms"}``; ``group`` is inline or a path
* ambient file: ``{"ambient", "p", "sylow"?}``

Elements are written as indices. For table groups an index is a row of the
given table; for permutation groups it is the position in the sorted list of
permutations, or the permutation itself as a list of images.
"""

from __future__ import annotations

import hashlib
import json
import os
import warnings
from pathlib import Path

import jsonschema

from .config import DEFAULT
from .errors import CacheCorrupt, CapExceeded, FuscatError, IncompleteMap, NotSylow, ParseError, ValidationError
from .groups import (
    FiniteGroup,
    Subgroup,
    all_subgroups,
    from_cayley_table,
    from_permutations,
    prime_power,
    sylow_p_subgroup,
)
from .morphism import Morphism, extend_from_generators
from .pcategory import PCategory, divisible_closure, inner_category

_INDEX = {"type": "integer", "minimum": 0}
_ELEMENT = {"oneOf": [_INDEX, {"type": "array", "items": _INDEX}]}

GROUP_SCHEMA = {
    "oneOf": [
        {
            "type": "object",
            "properties": {
                "name": {"type": "string"},
                "order": {"type": "integer", "minimum": 1},
                "table": {"type": "array", "items": {"type": "array", "items": _INDEX}},
            },
            "required": ["order", "table"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "name": {"type": "string"},
                "degree": {"type": "integer", "minimum": 1},
                "perm_gens": {"type": "array", "items": {"type": "array", "items": _INDEX}},
            },
            "required": ["degree", "perm_gens"],
            "additionalProperties": False,
        },
    ]
}

_GROUP_REF = {"oneOf": [{"type": "string"}, {"type": "object"}]}

_SEED = {
    "type": "object",
    "properties": {
        "domain": {"type": "array", "items": _ELEMENT},
        "codomain": {"type": "array", "items": _ELEMENT},
        "map": {
            "oneOf": [
                {"type": "object", "additionalProperties": _ELEMENT},
                {"type": "array", "items": {"type": "array", "items": _ELEMENT, "minItems": 2, "maxItems": 2}},
            ]
        },
    },
    "required": ["domain", "codomain", "map"],
    "additionalProperties": False,
}

FUSION_SCHEMA = {
    "type": "object",
    "properties": {
        "group": _GROUP_REF,
        "p": {"type": "integer", "minimum": 2},
        "seed_morphisms": {"type": "array", "items": _SEED},
    },
    "required": ["group", "p"],
    "additionalProperties": False,
}

AMBIENT_SCHEMA = {
    "type": "object",
    "properties": {
        "ambient": _GROUP_REF,
        "p": {"type": "integer", "minimum": 2},
        "sylow": {"type": "array", "items": _ELEMENT},
    },
    "required": ["ambient", "p"],
    "additionalProperties": False,
}


# -- reading ------------------------------------------------------------------


def _read_json(path) -> object:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def _validate(data, schema, where=""):
    if isinstance(data, dict) and "oneOf" in schema:
        # pick the branch by its required keys so errors name the real culprit
        branches = [b for b in schema["oneOf"] if set(b.get("required", ())) <= set(data)]
        if len(branches) == 1:
            schema = branches[0]
    try:
        jsonschema.validate(data, schema)
    except jsonschema.ValidationError as exc:
        best = jsonschema.exceptions.best_match([exc]) or exc
        key = ".".join(str(k) for k in (where, *best.absolute_path) if k != "") or "<root>"
        if best.validator == "additionalProperties":
            extra = sorted(set(best.instance) - set(best.schema.get("properties", {})))
            if extra:
                key = f"{key}.{extra[0]}" if key != "<root>" else extra[0]
                raise ValidationError(key, "unknown key") from None
        raise ValidationError(key, best.message) from None


class Codec:
    """Translate element tokens in files and on the command line to group indices and back."""

    def __init__(self, G: FiniteGroup):
        self.G = G
        labels = G.labels
        self.perm = labels is not None and len(labels) > 0 and isinstance(labels[0], tuple)
        if labels is not None and not self.perm:
            self._out = list(labels)
            self._in = {lab: i for i, lab in enumerate(labels)}
        else:
            self._out = list(range(G.order))
            self._in = {i: i for i in range(G.order)}
        self._perm_in = {lab: i for i, lab in enumerate(labels)} if self.perm else {}

    def decode(self, token, key="element") -> int:
        if isinstance(token, list):
            if not self.perm:
                raise ValidationError(key, "permutation given for a table group")
            i = self._perm_in.get(tuple(token))
            if i is None:
                raise ValidationError(key, f"{token} is not an element of the group")
            return i
        if isinstance(token, str):
            try:
                token = int(token)
            except ValueError:
                raise ValidationError(key, f"{token!r} is not an element index") from None
        if token not in self._in:
            raise ValidationError(key, f"index {token} out of range 0..{self.G.order - 1}")
        return self._in[token]

    def encode(self, i: int) -> int:
        return self._out[i]

    def subgroup(self, tokens, key="subgroup") -> Subgroup:
        return self.G.closure([self.decode(t, key) for t in tokens])


def group_from_data(data, where="group", base: Path | None = None) -> FiniteGroup:
    if isinstance(data, str):
        path = Path(data) if base is None else base / data
        return group_from_data(_read_json(path), where, path.parent)
    _validate(data, GROUP_SCHEMA, where)
    name = data.get("name")
    try:
        if "table" in data:
            if len(data["table"]) != data["order"]:
                raise ValidationError(f"{where}.order", "does not match the number of table rows")
            return from_cayley_table(data["table"], name=name)
        return from_permutations(data["degree"], data["perm_gens"], name=name)
    except (ValidationError, CapExceeded):
        raise
    except FuscatError as exc:
        key = f"{where}.table" if "table" in data else f"{where}.perm_gens"
        raise ValidationError(key, str(exc)) from exc


def parse_group_file(path) -> FiniteGroup:
    return group_from_data(_read_json(path), "<root>", Path(path).parent)


def _seed_morphism(codec: Codec, seed: dict, where: str) -> Morphism:
    R = codec.subgroup(seed["domain"], f"{where}.domain")
    S = codec.subgroup(seed["codomain"], f"{where}.codomain")
    pairs = seed["map"].items() if isinstance(seed["map"], dict) else seed["map"]
    gen_images = {}
    for a, b in pairs:
        x = codec.decode(a, f"{where}.map")
        y = codec.decode(b, f"{where}.map")
        if x not in R:
            raise ValidationError(f"{where}.map", f"{a} is not in the domain")
        if gen_images.get(x, y) != y:
            raise ValidationError(f"{where}.map", f"{a} is mapped twice")
        gen_images[x] = y
    try:
        return extend_from_generators(R, S, gen_images)
    except IncompleteMap as exc:
        raise IncompleteMap(f"{where}: {exc}") from None


def _require_p_group(G: FiniteGroup, p: int, key: str):
    pk = prime_power(G.order)
    if G.order > 1 and (pk is None or pk[0] != p):
        raise ValidationError(key, f"group of order {G.order} is not a {p}-group")


def _fusion_key(kind: str, G: FiniteGroup, p: int, extra) -> str:
    payload = json.dumps([kind, G.table, p, extra], separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


def parse_fusion_file(path, config=None) -> PCategory:
    F, _ = load_fusion(_read_json(path), Path(path).parent, config)
    return F


def parse_ambient_file(path, config=None) -> PCategory:
    F, _ = load_ambient(_read_json(path), Path(path).parent, config)
    return F


def load_fusion(data, base: Path, config=None):
    config = config or DEFAULT
    _validate(data, FUSION_SCHEMA)
    G = group_from_data(data["group"], "group", base)
    codec = Codec(G)
    p = data["p"]
    _require_p_group(G, p, "group")
    seeds = [_seed_morphism(codec, s, f"seed_morphisms.{i}") for i, s in enumerate(data.get("seed_morphisms", []))]
    extra = sorted([list(s.domain.elements), list(s.codomain.elements), list(s.images)] for s in seeds)
    key = _fusion_key("fusion", G, p, extra)
    P = G.whole()
    F = cached_category(key, P, p, lambda: divisible_closure(P, p, seeds, hom_cap=config.hom_cap))
    return F, codec


def load_ambient(data, base: Path, config=None):
    from .verify import fusion_from_ambient

    _validate(data, AMBIENT_SCHEMA)
    G = group_from_data(data["ambient"], "ambient", base)
    codec = Codec(G)
    p = data["p"]
    if "sylow" in data:
        S = codec.subgroup(data["sylow"], "sylow")
    else:
        S = sylow_p_subgroup(G, p)
    key = _fusion_key("ambient", G, p, list(S.elements))
    try:
        F = cached_category(key, S, p, lambda: fusion_from_ambient(G, p, S))
    except NotSylow as exc:
        raise ValidationError("sylow", str(exc)) from exc
    return F, codec


def load_category(path, config=None):
    """Any of the three file kinds as ``(PCategory, Codec)``; a bare group gives ``F_P``."""
    data = _read_json(path)
    base = Path(path).parent
    if isinstance(data, dict) and "ambient" in data:
        return load_ambient(data, base, config)
    if isinstance(data, dict) and "group" in data:
        return load_fusion(data, base, config)
    G = group_from_data(data, "<root>", base)
    pk = prime_power(G.order)
    if pk is None:
        raise ValidationError("<root>", f"group of order {G.order} is not a p-group; use an ambient file")
    return inner_category(G, pk[0]), Codec(G)


# -- cache ------------------------------------------------------------------


def cache_dir() -> Path | None:
    d = os.environ.get("FUSCAT_CACHE_DIR")
    return Path(d) if d else None


def _encode_category(key: str, F: PCategory) -> str:
    maps = sorted([list(m.domain.elements), list(m.images)] for m in F.hom_iter_P())
    body = json.dumps(maps, separators=(",", ":"))
    digest = hashlib.sha256(body.encode()).hexdigest()
    return json.dumps({"key": key, "digest": digest, "maps": maps}, separators=(",", ":")) + "\n"


def _decode_category(text: str, key: str, P: Subgroup, p: int) -> PCategory:
    try:
        data = json.loads(text)
        maps = data["maps"]
        body = json.dumps(maps, separators=(",", ":"))
        if data["key"] != key or data["digest"] != hashlib.sha256(body.encode()).hexdigest():
            raise CacheCorrupt("cache entry does not match its key or digest")
        subs = all_subgroups(P)
        by_elems = {S.elements: S for S in subs}
        morphs = [Morphism(by_elems[tuple(d)], P, imgs) for d, imgs in maps]
    except CacheCorrupt:
        raise
    except (ValueError, KeyError, TypeError, FuscatError) as exc:
        raise CacheCorrupt(f"unreadable cache entry: {exc}") from exc
    F = PCategory.from_maps(P, p, morphs, subgroups=subs)
    F.divisible_verified = True
    return F


def cached_category(key: str, P: Subgroup, p: int, build) -> PCategory:
    """Look ``key`` up in ``$FUSCAT_CACHE_DIR``; on a miss or a corrupt entry, build and store."""
    d = cache_dir()
    if d is None:
        return build()
    path = d / f"{key}.json"
    if path.exists():
        try:
            return _decode_category(path.read_text(encoding="utf-8"), key, P, p)
        except CacheCorrupt as exc:
            warnings.warn(f"ignoring corrupt cache entry {path.name}: {exc}", stacklevel=2)
    F = build()
    d.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(_encode_category(key, F), encoding="utf-8")
    tmp.replace(path)
    return F


# -- rendering ----------------------------------------------------------------


def render_group(G: FiniteGroup) -> str:
    data = {"name": G.name or "G", "order": G.order, "table": [list(r) for r in G.table]}
    return json.dumps(data) + "\n"


def render_report(report: dict, as_json=False) -> str:
    """Text or JSON for a catalog report (``{"seed", "cases"}``)."""
    if as_json:
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    lines = [f"catalog seed={report['seed']} cases={len(report['cases'])}"]
    for row in report["cases"]:
        if "error" in row:
            lines.append(f"{row['key']}: ERROR {row['error']}")
            continue
        yn = lambda b: "yes" if b else "no"  # noqa: E731
        lines.append(
            f"{row['key']}: |P|={row['order']} p={row['p']} morphisms={row['morphisms']} "
            f"divisible={yn(row['divisible'])} frobenius={yn(row['frobenius'])} "
            f"sylow_alperin={yn(row['sylow_alperin'])} agreement={yn(row['agreement'])}"
            + ("" if row["complete"] else " INCOMPLETE")
        )
        for e in row["essentials"]:
            lines.append(
                f"  essential {e['subgroup']} |F(Q)|={e['aut_order']} components={e['components']} "
                f"radical={yn(e['radical'])} transitive={yn(e['transitive'])}"
            )
        for k, label in (("frobenius_witness", "frobenius"), ("sylow_alperin_witness", "sylow+alperin")):
            if k in row:
                lines.append(f"  {label} witness: {row[k]}")
        lines.append("  " + "; ".join(f"{k}={v}" for k, v in sorted(row["checks"].items())))
    agree = sum(1 for r in report["cases"] if r.get("agreement"))
    lines.append(f"agreement {agree}/{len(report['cases'])}")
    return "\n".join(lines) + "\n"
