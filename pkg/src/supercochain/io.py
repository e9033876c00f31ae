"""Problem-file parsing and report serialization.

One JSON file can carry several sections; each command picks the sections it
needs.  Rationals are strings "p" or "p/q" everywhere.  Section shapes:

  "algebra" / "g" / "h":
      {"even_basis": [...], "odd_basis": [...],
       "bracket": [{"left": label, "right": label,
                    "value": [{"basis": label, "coeff": "p/q"}]}]}
  "action":  [{"g": label, "h": label, "value": [...]}]
  "D":       [{"g": label, "value": [...]}]
  "deformation":
      {"order": N,
       "coefficients": [{"order": k, "pi": [bracket entries],
                         "rho": [action entries], "mu": [bracket entries],
                         "D": [D entries]}]}
  "requested": [command names]                       (validated, informative)

Structural problems raise ParseError (malformed JSON / wrong types) or
ValidationError (unknown labels, duplicate entries, parity violations, zero
denominators); both map to CLI exit code 2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, ValidationError
from .exact_linalg import format_scalar, parse_scalar
from .graded import GradedSpace
from .superalgebra import LinearMap, SuperAlgebra
from .triple import ActionMap
from .util import zero_vec

COMMANDS = (
    "check-algebra",
    "check-triple",
    "check-crossed",
    "cohomology",
    "ch-cohomology",
    "deform",
    "ch-deform",
)


@dataclass
class RawDeformation:
    order: int
    pi: dict    # k -> bracket entry list
    rho: dict   # k -> action entry list
    mu: dict    # k -> bracket entry list
    d: dict     # k -> D entry list


@dataclass
class ProblemFile:
    """Validated sections of one input file."""

    algebra: SuperAlgebra = None
    g: SuperAlgebra = None
    h: SuperAlgebra = None
    action: ActionMap = None
    crossed: LinearMap = None
    deformation: RawDeformation = None
    requested: tuple = ()

    def algebras(self):
        out = []
        for name in ("algebra", "g", "h"):
            alg = getattr(self, name)
            if alg is not None:
                out.append((name, alg))
        return out

    def require(self, *names):
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            raise ValidationError(f"file is missing required section(s): {', '.join(missing)}")


def _expect(cond, message):
    if not cond:
        raise ParseError(message)


def _parse_value(value, space: GradedSpace, where: str):
    _expect(isinstance(value, list), f"{where}: value must be a list")
    vec = list(zero_vec(space.dim))
    seen = set()
    for item in value:
        _expect(isinstance(item, dict), f"{where}: value items must be objects")
        _expect("basis" in item and "coeff" in item, f"{where}: value item needs basis and coeff")
        k = space.index(item["basis"])
        if k in seen:
            raise ValidationError(f"{where}: duplicate basis label {item['basis']!r}")
        seen.add(k)
        vec[k] = parse_scalar(item["coeff"])
    return tuple(vec)


def _parse_space(obj, section: str) -> GradedSpace:
    _expect(isinstance(obj, dict), f"section {section!r} must be an object")
    even = obj.get("even_basis", [])
    odd = obj.get("odd_basis", [])
    _expect(isinstance(even, list) and isinstance(odd, list), f"{section}: basis lists must be lists")
    for lab in list(even) + list(odd):
        _expect(isinstance(lab, str) and lab, f"{section}: basis labels must be nonempty strings")
    return GradedSpace(tuple(even), tuple(odd))


def _parse_bracket_entries(entries, space: GradedSpace, section: str):
    _expect(isinstance(entries, list), f"{section}: bracket must be a list")
    sc = {}
    for ent in entries:
        _expect(isinstance(ent, dict), f"{section}: bracket entries must be objects")
        _expect(
            "left" in ent and "right" in ent and "value" in ent,
            f"{section}: bracket entry needs left, right, value",
        )
        i = space.index(ent["left"])
        j = space.index(ent["right"])
        vec = _parse_value(ent["value"], space, f"{section}.bracket")
        if i > j:
            # store the i <= j representative via super-skew-symmetry
            sign = Fraction(-1 if (space.parity(i) * space.parity(j)) % 2 == 0 else 1)
            i, j = j, i
            vec = tuple(sign * x for x in vec)
        if (i, j) in sc:
            raise ValidationError(
                f"{section}: duplicate bracket entry for ({ent['left']},{ent['right']})"
            )
        sc[(i, j)] = vec
    return sc


def _parse_algebra(obj, section: str) -> SuperAlgebra:
    space = _parse_space(obj, section)
    sc = _parse_bracket_entries(obj.get("bracket", []), space, section)
    return SuperAlgebra(space, sc)


def _parse_action(entries, g: SuperAlgebra, h: SuperAlgebra) -> ActionMap:
    _expect(isinstance(entries, list), "action: must be a list")
    table = [[zero_vec(h.dim) for _ in range(h.dim)] for _ in range(g.dim)]
    seen = set()
    for ent in entries:
        _expect(isinstance(ent, dict), "action: entries must be objects")
        _expect("g" in ent and "h" in ent and "value" in ent, "action: entry needs g, h, value")
        i = g.space.index(ent["g"])
        j = h.space.index(ent["h"])
        if (i, j) in seen:
            raise ValidationError(f"action: duplicate entry for ({ent['g']},{ent['h']})")
        seen.add((i, j))
        table[i][j] = _parse_value(ent["value"], h.space, "action")
    return ActionMap(g.space, h.space, table)


def _parse_crossed(entries, g: SuperAlgebra, h: SuperAlgebra) -> LinearMap:
    _expect(isinstance(entries, list), "D: must be a list")
    cols = [zero_vec(h.dim) for _ in range(g.dim)]
    seen = set()
    for ent in entries:
        _expect(isinstance(ent, dict), "D: entries must be objects")
        _expect("g" in ent and "value" in ent, "D: entry needs g and value")
        i = g.space.index(ent["g"])
        if i in seen:
            raise ValidationError(f"D: duplicate entry for {ent['g']!r}")
        seen.add(i)
        cols[i] = _parse_value(ent["value"], h.space, "D")
    return LinearMap(g.space, h.space, tuple(cols))


def _parse_deformation(obj) -> RawDeformation:
    _expect(isinstance(obj, dict), "deformation: must be an object")
    order = obj.get("order")
    _expect(isinstance(order, int) and order >= 1, "deformation: order must be an integer >= 1")
    coeffs = obj.get("coefficients", [])
    _expect(isinstance(coeffs, list), "deformation: coefficients must be a list")
    raw = RawDeformation(order, {}, {}, {}, {})
    for item in coeffs:
        _expect(isinstance(item, dict), "deformation: coefficient blocks must be objects")
        k = item.get("order")
        _expect(isinstance(k, int) and k >= 1, "deformation: coefficient order must be an integer >= 1")
        if k in raw.pi or k in raw.rho or k in raw.mu or k in raw.d:
            raise ValidationError(f"deformation: duplicate coefficient block for order {k}")
        for key, store in (("pi", raw.pi), ("rho", raw.rho), ("mu", raw.mu), ("D", raw.d)):
            if key in item:
                store[k] = item[key]
    return raw


def parse(path) -> ProblemFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
    return parse_obj(data)


def parse_obj(data) -> ProblemFile:
    _expect(isinstance(data, dict), "top level must be an object")
    known = {"algebra", "g", "h", "action", "D", "deformation", "requested"}
    unknown = set(data) - known
    if unknown:
        raise ValidationError(f"unknown section(s): {', '.join(sorted(unknown))}")
    pf = ProblemFile()
    if "algebra" in data:
        pf.algebra = _parse_algebra(data["algebra"], "algebra")
    if "g" in data:
        pf.g = _parse_algebra(data["g"], "g")
    if "h" in data:
        pf.h = _parse_algebra(data["h"], "h")
    if "action" in data:
        pf.require("g", "h")
        pf.action = _parse_action(data["action"], pf.g, pf.h)
    if "D" in data:
        pf.require("g", "h")
        pf.crossed = _parse_crossed(data["D"], pf.g, pf.h)
    if "deformation" in data:
        pf.deformation = _parse_deformation(data["deformation"])
    if "requested" in data:
        req = data["requested"]
        _expect(isinstance(req, list), "requested: must be a list")
        for cmd in req:
            if cmd not in COMMANDS:
                raise ValidationError(f"requested: unknown command {cmd!r}")
        pf.requested = tuple(req)
    return pf


def deformation_terms(pf: ProblemFile):
    """Materialize the triple-deformation coefficient lists against g, h."""
    from .cochains import Cochain

    raw = pf.deformation
    g, h = pf.g, pf.h
    pis, rhos, mus = [], [], []
    for k in range(1, raw.order + 1):
        sc = _parse_bracket_entries(raw.pi.get(k, []), g.space, f"deformation.pi[{k}]")
        pis.append(SuperAlgebra(g.space, sc).as_cochain())
        sc = _parse_bracket_entries(raw.mu.get(k, []), h.space, f"deformation.mu[{k}]")
        mus.append(SuperAlgebra(h.space, sc).as_cochain())
        rhos.append(_parse_action(raw.rho.get(k, []), g, h))
    return pis, rhos, mus


def crossed_deformation_terms(pf: ProblemFile):
    raw = pf.deformation
    return [
        _parse_crossed(raw.d.get(k, []), pf.g, pf.h) for k in range(1, raw.order + 1)
    ]


# ---------------------------------------------------------------------------
# serialization back out


def space_to_obj(space: GradedSpace):
    return {"even_basis": list(space.even_basis), "odd_basis": list(space.odd_basis)}


def value_to_obj(vec, space: GradedSpace):
    return [
        {"basis": space.labels[k], "coeff": format_scalar(x)}
        for k, x in enumerate(vec)
        if x != 0
    ]


def algebra_to_obj(A: SuperAlgebra):
    obj = space_to_obj(A.space)
    entries = []
    for (i, j) in sorted(A.sc):
        entries.append(
            {
                "left": A.space.labels[i],
                "right": A.space.labels[j],
                "value": value_to_obj(A.sc[(i, j)], A.space),
            }
        )
    obj["bracket"] = entries
    return obj


def action_to_obj(rho: ActionMap):
    out = []
    for i in range(rho.g_space.dim):
        for j in range(rho.h_space.dim):
            vec = rho.value(i, j)
            if any(x != 0 for x in vec):
                out.append(
                    {
                        "g": rho.g_space.labels[i],
                        "h": rho.h_space.labels[j],
                        "value": value_to_obj(vec, rho.h_space),
                    }
                )
    return out


def crossed_to_obj(D: LinearMap):
    out = []
    for i, col in enumerate(D.cols):
        if any(x != 0 for x in col):
            out.append({"g": D.source.labels[i], "value": value_to_obj(col, D.target)})
    return out


def cochain_to_obj(c):
    """Serialize a cochain as entries {"slots": [labels], "value": [...]}.

    Slots are emitted in wedge normal form; only nonzero values appear.
    """
    out = []
    for key in sorted(c.coeffs):
        out.append(
            {
                "slots": [c.source.labels[i] for i in key],
                "value": value_to_obj(c.coeffs[key], c.target),
            }
        )
    return out


def cochain_from_obj(entries, source: GradedSpace, target: GradedSpace, arity: int):
    from .cochains import Cochain
    from .graded import normalize_tuple

    _expect(isinstance(entries, list), "cochain: must be a list")
    coeffs = {}
    for ent in entries:
        _expect(isinstance(ent, dict), "cochain: entries must be objects")
        _expect("slots" in ent and "value" in ent, "cochain: entry needs slots and value")
        slots = tuple(source.index(lab) for lab in ent["slots"])
        key, sign = normalize_tuple(source, slots)
        if sign == 0:
            raise ValidationError("cochain: slots contain a repeated even label")
        if sign != 1 or key != slots:
            raise ValidationError("cochain: slots must be in normal form")
        if key in coeffs:
            raise ValidationError(f"cochain: duplicate entry for slots {ent['slots']}")
        coeffs[key] = _parse_value(ent["value"], target, "cochain")
    return Cochain(source, target, arity, coeffs)


def morphism_to_obj(m):
    """Two dense matrix blocks, rows over target coordinates as scalars."""

    def matrix_block(lin):
        return [
            [format_scalar(lin.cols[j][k]) for j in range(lin.source.dim)]
            for k in range(lin.target.dim)
        ]

    return {"phi1": matrix_block(m.phi1), "phi2": matrix_block(m.phi2)}


def morphism_from_obj(obj, g_space: GradedSpace, h_space: GradedSpace):
    from .crossed import CHMorphism

    _expect(isinstance(obj, dict), "morphism: must be an object")
    _expect("phi1" in obj and "phi2" in obj, "morphism: needs phi1 and phi2")

    def block_to_map(rows, space):
        _expect(isinstance(rows, list) and len(rows) == space.dim, "morphism: bad matrix height")
        parsed = [[parse_scalar(x) for x in row] for row in rows]
        for row in parsed:
            if len(row) != space.dim:
                raise ParseError("morphism: bad matrix width")
        cols = tuple(
            tuple(parsed[k][j] for k in range(space.dim)) for j in range(space.dim)
        )
        return LinearMap(space, space, cols)

    return CHMorphism(block_to_map(obj["phi1"], g_space), block_to_map(obj["phi2"], h_space))


def report_to_json(report_dict) -> str:
    """Canonical byte form: sorted keys, two-space indent, trailing newline."""
    return json.dumps(report_dict, sort_keys=True, indent=2) + "\n"
