"""Algebra spec files (TOML) and matrix/element exchange files (JSON).

The spec file carries the field descriptor, the ambient rank, the grade
lattice basis and the commutation matrix, plus an optional [matrix] section
with the size and shift vectors.  Matrices travel as JSON with one list of
{degree, coeff} terms per entry.
"""

from __future__ import annotations

import json

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .algebra import make_algebra
from .errors import ParseError, ValidationError
from .gmatrix import ShiftedMatrixAlgebra
from .scalars import make_field


def load_algebra_spec(path):
    """Parse a TOML algebra spec into (algebra, matrix algebra or None)."""
    with open(path, "rb") as fh:
        try:
            doc = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from exc
    return algebra_from_dict(doc, where=str(path))


def algebra_from_dict(doc, where="<spec>"):
    def need(key, table=None, src=None):
        src = src if src is not None else doc
        name = f"{table}.{key}" if table else key
        if key not in src:
            raise ValidationError(f"{where}: missing required key {name!r}")
        return src[key]

    fdesc = need("field")
    kind = need("kind", "field", fdesc)
    if kind == "gf":
        field = make_field("gf", p=need("p", "field", fdesc))
    elif kind == "cyclotomic":
        field = make_field("cyclotomic", n=need("n", "field", fdesc))
    else:
        raise ValidationError(f"{where}: unknown field.kind {kind!r}")

    ambient_rank = need("ambient_rank")
    gamma_e = need("gamma_e")
    commutation_raw = need("commutation")
    commutation = []
    for i, row in enumerate(commutation_raw):
        out = []
        for j, lit in enumerate(row):
            try:
                out.append(field.parse(str(lit)))
            except ParseError as exc:
                raise ParseError(
                    f"{where}: commutation[{i}][{j}]: {exc}"
                ) from exc
        commutation.append(out)
    algebra = make_algebra(field, ambient_rank, gamma_e, commutation)

    matrix_algebra = None
    if "matrix" in doc:
        mat = doc["matrix"]
        n = need("n", "matrix", mat)
        shifts = mat.get("shifts")
        matrix_algebra = ShiftedMatrixAlgebra(algebra, n, shifts)
    return algebra, matrix_algebra


def parse_shift_list(text, ambient_rank):
    """Parse shifts like '0,0;1,0' into vectors."""
    shifts = []
    for part in text.split(";"):
        v = [s.strip() for s in part.split(",")]
        try:
            vec = tuple(int(x) for x in v)
        except ValueError as exc:
            raise ParseError(f"bad shift vector {part!r}") from exc
        if len(vec) != ambient_rank:
            raise ValidationError(
                f"shift vector {part!r} must have length {ambient_rank}"
            )
        shifts.append(vec)
    return shifts


def parse_vector(text, ambient_rank):
    try:
        vec = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise ParseError(f"bad vector {text!r}") from exc
    if len(vec) != ambient_rank:
        raise ValidationError(f"vector {text!r} must have length {ambient_rank}")
    return vec


def element_to_terms(field, x):
    return [
        {"degree": list(d), "coeff": field.format(c)} for d, c in x.terms
    ]


def element_from_terms(algebra, terms, where="<element>"):
    out = {}
    field = algebra.field
    for idx, term in enumerate(terms):
        if "degree" not in term or "coeff" not in term:
            raise ValidationError(f"{where}: term {idx} needs degree and coeff")
        try:
            coeff = field.parse(str(term["coeff"]))
        except ParseError as exc:
            raise ParseError(f"{where}: term {idx}: {exc}") from exc
        degree = tuple(int(x) for x in term["degree"])
        if degree in out:
            coeff = field.add(out[degree], coeff)
        out[degree] = coeff
    return algebra.element(out)


def matrix_to_json(s, a):
    field = s.algebra.field
    return {
        "entries": [
            [element_to_terms(field, a.entries[i][j]) for j in range(s.n)]
            for i in range(s.n)
        ]
    }


def matrix_from_json(s, doc, where="<matrix>"):
    if "entries" not in doc:
        raise ValidationError(f"{where}: missing 'entries'")
    entries = doc["entries"]
    if len(entries) != s.n or any(len(r) != s.n for r in entries):
        raise ValidationError(f"{where}: entries must be {s.n} x {s.n}")
    rows = []
    for i, row in enumerate(entries):
        cells = []
        for j, terms in enumerate(row):
            cells.append(
                element_from_terms(s.algebra, terms, where=f"{where}[{i}][{j}]")
            )
        rows.append(cells)
    return s.matrix(rows)


def load_matrix(path, s):
    with open(path, "rb") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from exc
    return matrix_from_json(s, doc, where=str(path))


def dump_json(doc):
    return json.dumps(doc, sort_keys=True, indent=2)
