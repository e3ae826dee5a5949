"""The ``.qlat`` file format: strict JSON documents with a version and a kind.

Four kinds exist. ``lattice`` lists elements, order pairs and ortho pairs.
``sps`` lists states, properties (plain, inverse of another, or product of
others) and actuality triples. ``hilbert-seeds`` gives a dimension and seed
subspaces with exact complex rational entries ``[re_num, re_den, im_num,
im_den]``. ``product-job`` names two sps documents to combine.

Every error raised while parsing is a :class:`ParseError` carrying the line
and column of the offending JSON node.
"""

from __future__ import annotations

import json
import json.decoder
import json.scanner
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from .report import ParseError, QlatInputError

FORMAT_VERSION = 1
KINDS = ("lattice", "sps", "hilbert-seeds", "product-job")


# position-tracking JSON decoding

class _Obj(dict):
    pos = 0
    duplicate: Optional[str] = None


class _Arr(list):
    pos = 0


class _Str(str):
    pos = 0


def _pairs_hook(pairs):
    out = _Obj()
    for k, v in pairs:
        if k in out and out.duplicate is None:
            out.duplicate = k
        out[k] = v
    return out


def _decoder() -> json.JSONDecoder:
    dec = json.JSONDecoder(object_pairs_hook=_pairs_hook)

    def parse_object(s_and_end, *args):
        obj, end = json.decoder.JSONObject(s_and_end, *args)
        obj.pos = s_and_end[1] - 1
        return obj, end

    def parse_array(s_and_end, scan_once):
        arr, end = json.decoder.JSONArray(s_and_end, scan_once)
        out = _Arr(arr)
        out.pos = s_and_end[1] - 1
        return out, end

    def parse_string(s, end, strict):
        value, new_end = json.decoder.scanstring(s, end, strict)
        out = _Str(value)
        out.pos = end - 1
        return out, new_end

    dec.parse_object = parse_object
    dec.parse_array = parse_array
    dec.parse_string = parse_string
    dec.scan_once = json.scanner.py_make_scanner(dec)
    return dec


class _Ctx:
    """Turns node offsets into line/column errors."""

    def __init__(self, text: str):
        self.text = text

    def where(self, pos: int) -> tuple[int, int]:
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def error(self, node, message: str, fallback=None) -> ParseError:
        pos = getattr(node, "pos", None)
        if pos is None:
            pos = getattr(fallback, "pos", 0)
        return ParseError(message, *self.where(pos))


# document model

@dataclass(frozen=True)
class LatticeBody:
    elements: tuple
    order: tuple  # (a, b) pairs meaning a <= b
    ortho: Optional[tuple] = None  # (a, a') pairs
    closure: bool = True


@dataclass(frozen=True)
class PropertyDecl:
    label: str
    inverse: Optional[str] = None
    product: Optional[tuple] = None

    @property
    def derived(self) -> bool:
        return self.inverse is not None or self.product is not None


@dataclass(frozen=True)
class SpsBody:
    states: tuple
    properties: tuple  # PropertyDecl
    actuality: tuple  # (state, property, "yes" | "no")
    state_ortho: Optional[tuple] = None


@dataclass(frozen=True)
class Seed:
    label: str
    basis: tuple  # vectors of (re, im) Fraction pairs


@dataclass(frozen=True)
class HilbertSeedsBody:
    dimension: int
    seeds: tuple
    max_elements: int = 256


@dataclass(frozen=True)
class ProductJobBody:
    left: Union[str, "SpecDocument"]
    right: Union[str, "SpecDocument"]
    extended: bool = False


@dataclass(frozen=True)
class SpecDocument:
    version: int
    kind: str
    body: object
    origin: Optional[str] = field(default=None, compare=False)


# parsing

def parse_spec(source: Union[str, Path]) -> SpecDocument:
    """Parse a path or raw JSON text.

    A :class:`Path`, or a string naming an existing file, is read from disk;
    anything else is taken as the document text.
    """
    origin = None
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source and os.path.isfile(source)):
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise QlatInputError(f"cannot read {source}: {exc.strerror}") from None
        origin = str(Path(source).resolve().parent)
    else:
        text = source
    return parse_text(text, origin)


def parse_text(text: str, origin: Optional[str] = None) -> SpecDocument:
    ctx = _Ctx(text)
    try:
        root = _decoder().decode(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"syntax error: {exc.msg}", exc.lineno, exc.colno) from None
    return _document(ctx, root, origin)


def _check_duplicates(ctx: _Ctx, node):
    if isinstance(node, _Obj):
        if node.duplicate is not None:
            raise ctx.error(node, f"duplicate key {node.duplicate!r}")
        for v in node.values():
            _check_duplicates(ctx, v)
    elif isinstance(node, list):
        for v in node:
            _check_duplicates(ctx, v)


def _fields(ctx: _Ctx, node, required: tuple, optional: tuple = (), what: str = "document") -> None:
    if not isinstance(node, dict):
        raise ctx.error(node, f"{what} must be an object")
    for key in node:
        if key not in required and key not in optional:
            # object keys are not position-tagged; locate the key text inside the object
            key_node = _Str(key)
            key_node.pos = max(ctx.text.find(json.dumps(key), getattr(node, "pos", 0)), 0)
            raise ctx.error(key_node, f"unknown field {key!r} in {what}")
    for key in required:
        if key not in node:
            raise ctx.error(node, f"missing field {key!r} in {what}")


def _string(ctx, node, what: str, parent=None) -> str:
    if not isinstance(node, str):
        raise ctx.error(node, f"{what} must be a string", parent)
    if not node:
        raise ctx.error(node, f"{what} must not be empty", parent)
    return str(node)


def _list(ctx, node, what: str, parent=None) -> list:
    if not isinstance(node, list):
        raise ctx.error(node, f"{what} must be an array", parent)
    return node


def _int(ctx, node, what: str, parent) -> int:
    if not isinstance(node, int) or isinstance(node, bool):
        raise ctx.error(node, f"{what} must be an integer", parent)
    return node


def _bool(ctx, node, what: str, parent) -> bool:
    if not isinstance(node, bool):
        raise ctx.error(node, f"{what} must be true or false", parent)
    return node


def _labels(ctx, node, what: str, parent) -> tuple:
    seen = set()
    out = []
    for item in _list(ctx, node, what, parent):
        label = _string(ctx, item, f"{what} entry", node)
        if label in seen:
            raise ctx.error(item, f"duplicate label {label!r}", node)
        seen.add(label)
        out.append(label)
    return tuple(out)


def _ref(ctx, node, known, what: str, parent) -> str:
    label = _string(ctx, node, what, parent)
    if label not in known:
        raise ctx.error(node, f"dangling reference: undeclared {what} {label!r}", parent)
    return label


def _pair_list(ctx, node, known, what: str, parent) -> tuple:
    out = []
    for item in _list(ctx, node, what, parent):
        if not isinstance(item, list) or len(item) != 2:
            raise ctx.error(item, f"{what} entries must be two-element arrays", node)
        out.append((_ref(ctx, item[0], known, "element" if what != "state_ortho" else "state", item),
                    _ref(ctx, item[1], known, "element" if what != "state_ortho" else "state", item)))
    return tuple(out)


def _document(ctx: _Ctx, root, origin) -> SpecDocument:
    _check_duplicates(ctx, root)
    if not isinstance(root, dict):
        raise ctx.error(root, "document must be an object")
    for key in ("version", "kind"):
        if key not in root:
            raise ctx.error(root, f"missing field {key!r} in document")
    version = root["version"]
    if isinstance(version, bool) or version != FORMAT_VERSION or not isinstance(version, int):
        raise ctx.error(root, f"unknown version {version!r} (expected {FORMAT_VERSION})")
    kind = root["kind"]
    if kind not in KINDS:
        raise ctx.error(kind, f"unknown kind {kind!r}", root)
    body = {
        "lattice": _lattice_body,
        "sps": _sps_body,
        "hilbert-seeds": _seeds_body,
        "product-job": _job_body,
    }[kind](ctx, root)
    return SpecDocument(version, str(kind), body, origin)


def _lattice_body(ctx, node) -> LatticeBody:
    _fields(ctx, node, ("version", "kind", "elements", "order"), ("ortho", "closure"))
    elements = _labels(ctx, node["elements"], "elements", node)
    if not elements:
        raise ctx.error(node["elements"], "a lattice needs at least one element", node)
    known = set(elements)
    order = _pair_list(ctx, node["order"], known, "order", node)
    ortho = None
    if "ortho" in node:
        ortho = _pair_list(ctx, node["ortho"], known, "ortho", node)
        image: dict = {}
        for item, (a, b) in zip(node["ortho"], ortho):
            for x, y in ((a, b), (b, a)):
                if image.setdefault(x, y) != y:
                    raise ctx.error(item, f"element {x!r} has two orthocomplements", node)
    closure = _bool(ctx, node["closure"], "closure", node) if "closure" in node else True
    return LatticeBody(elements, order, ortho, closure)


def _sps_body(ctx, node) -> SpsBody:
    _fields(ctx, node, ("version", "kind", "states", "properties", "actuality"), ("state_ortho",))
    states = _labels(ctx, node["states"], "states", node)
    if not states:
        raise ctx.error(node["states"], "at least one state is required", node)
    decls = []
    declared: set = set()
    for item in _list(ctx, node["properties"], "properties", node):
        _fields(ctx, item, ("label",), ("inverse", "product"), what="property")
        label = _string(ctx, item["label"], "property label", item)
        if label in declared:
            raise ctx.error(item["label"], f"duplicate label {label!r}", item)
        if "inverse" in item and "product" in item:
            raise ctx.error(item, "a property is either an inverse or a product, not both")
        inverse = product = None
        if "inverse" in item:
            inverse = _ref(ctx, item["inverse"], declared, "property", item)
        if "product" in item:
            parts = _list(ctx, item["product"], "product", item)
            if not parts:
                raise ctx.error(parts, "a product needs at least one component", item)
            product = tuple(_ref(ctx, p, declared, "property", parts) for p in parts)
        declared.add(label)
        decls.append(PropertyDecl(label, inverse, product))
    base = {d.label for d in decls if not d.derived}
    derived = {d.label for d in decls if d.derived}
    known_states = set(states)
    triples = []
    seen_pairs = set()
    for item in _list(ctx, node["actuality"], "actuality", node):
        if not isinstance(item, list) or len(item) != 3:
            raise ctx.error(item, "actuality entries are [state, property, \"yes\"|\"no\"]", node)
        s = _ref(ctx, item[0], known_states, "state", item)
        if isinstance(item[1], str) and item[1] in derived:
            raise ctx.error(item[1], f"property {str(item[1])!r} is derived; its outcomes follow from its components", item)
        p = _ref(ctx, item[1], base, "property", item)
        outcome = _string(ctx, item[2], "outcome", item)
        if outcome not in ("yes", "no"):
            raise ctx.error(item[2], f"outcome must be \"yes\" or \"no\", not {outcome!r}", item)
        if (s, p) in seen_pairs:
            raise ctx.error(item, f"outcome for ({s}, {p}) given twice", node)
        seen_pairs.add((s, p))
        triples.append((s, p, outcome))
    state_ortho = None
    if "state_ortho" in node:
        state_ortho = _pair_list(ctx, node["state_ortho"], known_states, "state_ortho", node)
        for item, (a, b) in zip(node["state_ortho"], state_ortho):
            if a == b:
                raise ctx.error(item, f"state {a!r} cannot be orthogonal to itself", node)
    return SpsBody(states, tuple(decls), tuple(triples), state_ortho)


def _entry(ctx, node, parent) -> tuple:
    if not isinstance(node, list) or len(node) != 4:
        raise ctx.error(node, "complex entries are [re_num, re_den, im_num, im_den]", parent)
    nums = [_int(ctx, x, "complex entry component", node) for x in node]
    if nums[1] == 0 or nums[3] == 0:
        raise ctx.error(node, "zero denominator in complex entry", parent)
    return Fraction(nums[0], nums[1]), Fraction(nums[2], nums[3])


def _seeds_body(ctx, node) -> HilbertSeedsBody:
    _fields(ctx, node, ("version", "kind", "dimension", "seeds"), ("max_elements",))
    dim = _int(ctx, node["dimension"], "dimension", node)
    if not 1 <= dim <= 8:
        raise ctx.error(node["dimension"], "dimension must be between 1 and 8", node)
    seeds = []
    labels = set()
    for item in _list(ctx, node["seeds"], "seeds", node):
        _fields(ctx, item, ("label", "basis"), what="seed")
        label = _string(ctx, item["label"], "seed label", item)
        if label in labels or label in ("0", "1"):
            raise ctx.error(item["label"], f"duplicate label {label!r}", item)
        labels.add(label)
        vectors = []
        for vec in _list(ctx, item["basis"], "basis", item):
            entries = _list(ctx, vec, "basis vector", item["basis"])
            if len(entries) != dim:
                raise ctx.error(vec, f"basis vector has {len(entries)} entries, expected {dim}", item)
            vectors.append(tuple(_entry(ctx, e, vec) for e in entries))
        if not vectors:
            raise ctx.error(item["basis"], "a seed needs at least one basis vector", item)
        seeds.append(Seed(label, tuple(vectors)))
    if not seeds:
        raise ctx.error(node["seeds"], "at least one seed is required", node)
    cap = _int(ctx, node["max_elements"], "max_elements", node) if "max_elements" in node else 256
    if cap < 2:
        raise ctx.error(node["max_elements"], "max_elements must be at least 2", node)
    return HilbertSeedsBody(dim, tuple(seeds), cap)


def _job_body(ctx, node) -> ProductJobBody:
    _fields(ctx, node, ("version", "kind", "left", "right"), ("extended",))
    sides = []
    for key in ("left", "right"):
        value = node[key]
        if isinstance(value, str):
            sides.append(_string(ctx, value, key, node))
        elif isinstance(value, dict):
            doc = _document(ctx, value, None)
            if doc.kind != "sps":
                raise ctx.error(value, f"{key} factor must be an sps document", node)
            sides.append(doc)
        else:
            raise ctx.error(value, f"{key} must be a path or an inline sps document", node)
    extended = _bool(ctx, node["extended"], "extended", node) if "extended" in node else False
    return ProductJobBody(sides[0], sides[1], extended)


# serialization

def _quad(x: Fraction, y: Fraction) -> list:
    return [x.numerator, x.denominator, y.numerator, y.denominator]


def to_json_value(doc: SpecDocument) -> dict:
    out: dict = {"version": doc.version, "kind": doc.kind}
    b = doc.body
    if doc.kind == "lattice":
        out["elements"] = list(b.elements)
        out["order"] = [list(p) for p in b.order]
        if b.ortho is not None:
            out["ortho"] = [list(p) for p in b.ortho]
        if not b.closure:
            out["closure"] = False
    elif doc.kind == "sps":
        out["states"] = list(b.states)
        props = []
        for d in b.properties:
            entry = {"label": d.label}
            if d.inverse is not None:
                entry["inverse"] = d.inverse
            if d.product is not None:
                entry["product"] = list(d.product)
            props.append(entry)
        out["properties"] = props
        out["actuality"] = [list(t) for t in b.actuality]
        if b.state_ortho is not None:
            out["state_ortho"] = [list(p) for p in b.state_ortho]
    elif doc.kind == "hilbert-seeds":
        out["dimension"] = b.dimension
        out["seeds"] = [
            {"label": s.label, "basis": [[_quad(*e) for e in v] for v in s.basis]} for s in b.seeds
        ]
        if b.max_elements != 256:
            out["max_elements"] = b.max_elements
    else:
        for key in ("left", "right"):
            side = getattr(b, key)
            out[key] = side if isinstance(side, str) else to_json_value(side)
        if b.extended:
            out["extended"] = True
    return out


def serialize(doc: SpecDocument) -> str:
    """Deterministic text form; short arrays stay on one line."""
    return _dump(to_json_value(doc), 0) + "\n"


def _dump(value, depth: int) -> str:
    pad = "  " * (depth + 1)
    if isinstance(value, dict):
        flat = json.dumps(value, ensure_ascii=False)
        if depth > 0 and len(flat) <= 72:
            return flat
        items = [f"{pad}{json.dumps(k)}: {_dump(v, depth + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * depth + "}"
    if isinstance(value, list):
        flat = json.dumps(value, ensure_ascii=False)
        if len(flat) <= 88 or not any(isinstance(v, (list, dict)) for v in value):
            return flat
        items = [pad + _dump(v, depth + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + "  " * depth + "]"
    return json.dumps(value, ensure_ascii=False)


# building domain objects

def build_lattice(doc: SpecDocument):
    from .lattice import FiniteOrtholattice

    b = doc.body
    ortho = None
    if b.ortho is not None:
        ortho = {}
        for x, y in b.ortho:
            ortho[x] = y
            ortho[y] = x
    return FiniteOrtholattice.from_pairs(list(b.elements), b.order, ortho=ortho, closure=b.closure)


def sps_tests(body: SpsBody) -> dict:
    """Yes-no test of every declared property, as a label -> YesNo map."""
    from .sps import YesNo

    index = {s: i for i, s in enumerate(body.states)}
    yes = {d.label: 0 for d in body.properties}
    no = {d.label: 0 for d in body.properties}
    for s, p, outcome in body.actuality:
        (yes if outcome == "yes" else no)[p] |= 1 << index[s]
    tests: dict = {}
    for d in body.properties:
        if d.inverse is not None:
            tests[d.label] = tests[d.inverse].inverse()
        elif d.product is not None:
            tests[d.label] = YesNo.product(*(tests[c] for c in d.product))
        else:
            tests[d.label] = YesNo(yes[d.label], no[d.label])
    return tests


def build_sps(doc: SpecDocument):
    """State-property system whose lattice is inclusion of actuality sets.

    The orthocomplement of a property is the property whose test is its
    inverse test, when one is declared.
    """
    from .sps import StatePropertySystem, YesNo

    b = doc.body
    tests = sps_tests(b)
    full = (1 << len(b.states)) - 1
    by_test = {t: k for k, t in tests.items()}
    by_test.setdefault(YesNo(0, full), "0")
    by_test.setdefault(YesNo(full, 0), "1")
    ortho = {}
    for k, t in tests.items():
        partner = by_test.get(t.inverse())
        if partner is not None:
            ortho[k] = partner

    def names(mask):
        return [b.states[i] for i in range(len(b.states)) if mask >> i & 1]

    return StatePropertySystem.from_actuality_sets(
        list(b.states),
        {k: names(t.yes) for k, t in tests.items()},
        state_ortho=b.state_ortho,
        certain_no={k: names(t.no) for k, t in tests.items()},
        ortho=ortho,
    )


def build_seeds(doc: SpecDocument) -> list:
    from . import exact
    from .hilbert import Subspace

    b = doc.body
    out = []
    for s in b.seeds:
        vectors = [exact.qvector([exact.QQi(re, im) for re, im in v]) for v in s.basis]
        out.append(Subspace.span(vectors, b.dimension))
    return out


def build_hilbert_lattice(doc: SpecDocument):
    from .hilbert import generate_subspace_lattice

    return generate_subspace_lattice(build_seeds(doc), doc.body.max_elements, [s.label for s in doc.body.seeds])


def load_side(doc: SpecDocument, key: str) -> SpecDocument:
    side = getattr(doc.body, key)
    if isinstance(side, SpecDocument):
        return side
    path = Path(side)
    if not path.is_absolute() and doc.origin is not None:
        path = Path(doc.origin) / path
    sub = parse_spec(path)
    if sub.kind != "sps":
        raise QlatInputError(f"{key} factor {side} is a {sub.kind} document, not sps")
    return sub


def build_product(doc: SpecDocument):
    from .product import build_separated_product

    left = build_sps(load_side(doc, "left"))
    right = build_sps(load_side(doc, "right"))
    return build_separated_product(left, right, extended=doc.body.extended)


def build(doc: SpecDocument):
    """Domain object for any document kind."""
    return {
        "lattice": build_lattice,
        "sps": build_sps,
        "hilbert-seeds": build_hilbert_lattice,
        "product-job": build_product,
    }[doc.kind](doc)


# documents from domain objects (used to write fixtures)

def lattice_document(L, covers_only: bool = True) -> SpecDocument:
    """Document listing the covering pairs (or the whole order) of a lattice."""
    from .lattice import _covers

    order = []
    for a in L.elements():
        for b in L.elements():
            if a != b and L.leq(a, b) and (not covers_only or _covers(L, a, b)):
                order.append((L.labels[a], L.labels[b]))
    ortho = None
    if L.ortho is not None:
        ortho = tuple((L.labels[a], L.labels[L.ortho[a]]) for a in L.elements() if a <= L.ortho[a])
    return SpecDocument(FORMAT_VERSION, "lattice", LatticeBody(L.labels, tuple(order), ortho))


def sps_document(S, properties=None) -> SpecDocument:
    """Document with every listed property as a plain test (default: all but 0 and 1)."""
    L = S.lattice
    chosen = properties if properties is not None else [
        a for a in L.elements() if a not in (L.bottom, L.top)
    ]
    decls = tuple(PropertyDecl(L.labels[a]) for a in chosen)
    triples = []
    for p, s in enumerate(S.states):
        for a in chosen:
            if S.actual[a] >> p & 1:
                triples.append((s, L.labels[a], "yes"))
            elif S.certain_no[a] >> p & 1:
                triples.append((s, L.labels[a], "no"))
    pairs = tuple(
        (S.states[p], S.states[q]) for p in range(len(S.states)) for q in range(p + 1, len(S.states))
        if S.state_ortho[p] >> q & 1
    )
    return SpecDocument(FORMAT_VERSION, "sps", SpsBody(S.states, decls, tuple(triples), pairs))
