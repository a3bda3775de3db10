"""JSON documents in and classification records out.

Rationals are written as ``"p/q"`` strings and integers as JSON integers;
floats are rejected on input so nothing is ever rounded.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from fractions import Fraction

from .arith import format_rational, parse_rational
from .lattice_maps import affine_normal_form, lattice_width
from .multiplier import DEFAULT_BOUND, NOT_F_HOLLOW, classify, sporadicity_check
from .polytope import LatticePolytope, Polytope


class DocumentError(ValueError):
    """Malformed polytope document."""


def encode_rational(q):
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else format_rational(q)


def encode_vector(v) -> list:
    return [encode_rational(x) for x in v]


def decode_vector(v) -> tuple[Fraction, ...]:
    return tuple(parse_rational(x) for x in v)


@dataclass(frozen=True)
class PolytopeDocument:
    ambient_dim: int
    vertices: tuple[tuple[Fraction, ...], ...]
    name: str | None = None

    @classmethod
    def from_obj(cls, obj) -> "PolytopeDocument":
        if not isinstance(obj, dict):
            raise DocumentError("document must be a JSON object")
        d = obj.get("ambient_dim")
        if not isinstance(d, int) or isinstance(d, bool) or d < 1:
            raise DocumentError("ambient_dim must be a positive integer")
        verts = obj.get("vertices")
        if not isinstance(verts, list) or not verts:
            raise DocumentError("vertices must be a non-empty list")
        out = []
        for v in verts:
            if not isinstance(v, list) or len(v) != d:
                raise DocumentError(f"every vertex must be a list of length {d}")
            try:
                out.append(decode_vector(v))
            except ValueError as exc:
                raise DocumentError(str(exc)) from exc
        name = obj.get("name")
        if name is not None and not isinstance(name, str):
            raise DocumentError("name must be a string")
        return cls(d, tuple(out), name)

    @classmethod
    def parse(cls, text: str) -> "PolytopeDocument":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"invalid JSON: {exc.msg}") from exc
        return cls.from_obj(obj)

    @classmethod
    def from_polytope(cls, P: Polytope, name: str | None = None) -> "PolytopeDocument":
        return cls(P.ambient_dim, tuple(P.vertices), name)

    def to_obj(self) -> dict:
        obj = {"ambient_dim": self.ambient_dim,
               "vertices": [encode_vector(v) for v in self.vertices]}
        if self.name is not None:
            obj["name"] = self.name
        return obj

    def serialize(self) -> str:
        return json.dumps(self.to_obj())

    def to_polytope(self) -> Polytope:
        if all(x.denominator == 1 for v in self.vertices for x in v):
            return LatticePolytope([tuple(int(x) for x in v) for v in self.vertices])
        return Polytope.from_points(self.vertices)


@dataclass(frozen=True)
class ClassificationRecord:
    name: str | None
    normal_form_key: str | None
    mu: str
    dim_fine_at_mu: int
    classification: str
    kodaira: int | str
    width: dict | None
    sporadicity: dict | None
    fano: dict | None
    projection: dict | None
    provenance: dict

    def to_obj(self) -> dict:
        return asdict(self)

    def serialize(self) -> str:
        return json.dumps(self.to_obj())

    @classmethod
    def from_obj(cls, obj: dict) -> "ClassificationRecord":
        return cls(**{k: obj[k] for k in cls.__dataclass_fields__})

    @classmethod
    def parse(cls, text: str) -> "ClassificationRecord":
        return cls.from_obj(json.loads(text))


def build_record(doc: PolytopeDocument, bound: int = DEFAULT_BOUND) -> ClassificationRecord:
    P = doc.to_polytope()
    if not P.is_full_dimensional:
        raise DocumentError("polytope must be full-dimensional")
    report = classify(P)
    certified = [f"mu and {report.classification} computed by exact LP"]
    asserted: list[str] = []
    key = None
    width = None
    if P.is_lattice:
        try:
            key = affine_normal_form(P).digest()
        except ValueError:
            key = None
        w = lattice_width(P, bound)
        width = {"value": encode_rational(w.width), "exhaustive": w.exhaustive,
                 "directions": [list(v) for v in w.directions]}
    spor = None
    if report.classification != NOT_F_HOLLOW and P.is_lattice:
        s = sporadicity_check(P, bound, report=report)
        spor = {"status": s.status, "certified": s.certified,
                "witness": None if s.witness is None else
                {"matrix": [list(r) for r in s.witness.matrix], "offset": list(s.witness.offset)},
                "notes": list(s.notes)}
        if s.certified:
            certified.append(f"sporadicity {s.status}")
        asserted.extend(s.asserted)
    fano = None
    if report.fano is not None:
        f = report.fano
        fano = {"p": encode_vector(f.p),
                "q_vertices": [list(v) for v in f.q_polytope.vertices],
                "q_dual_vertices": [encode_vector(v) for v in f.q_dual.vertices],
                "adjunction_coefficient": format_rational(f.adjunction_coefficient)}
    proj = None
    if report.projection is not None:
        pi, image = report.projection
        proj = {"matrix": [list(r) for r in pi.matrix], "offset": list(pi.offset),
                "image_vertices": [list(v) for v in image.vertices]}
    return ClassificationRecord(
        name=doc.name, normal_form_key=key, mu=format_rational(report.mu),
        dim_fine_at_mu=report.dim_fine_at_mu, classification=report.classification,
        kodaira=report.kodaira, width=width, sporadicity=spor, fano=fano, projection=proj,
        provenance={"certified": certified, "asserted": asserted})
