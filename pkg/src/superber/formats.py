"""JSON file formats for supermatrices, supertensors and verification reports.

Serialization is deterministic: keys in a fixed order, grid entries row-major,
Grassmann terms in canonical monomial order, tensor words lexicographic.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import ParseError, SuperberError
from .grassmann import DEFAULT_GENERATORS, from_struct, to_struct
from .supermatrix import SuperMatrix
from .supertensor import Signature, SuperTensor


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def _int_field(obj: dict, key: str, default: int | None = None) -> int:
    value = obj.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ParseError(f"field {key!r} must be a nonnegative integer, got {value!r}")
    return value


# -- matrices --------------------------------------------------------------------

def matrix_to_struct(a: SuperMatrix) -> dict:
    return {
        "m": a.m,
        "n": a.n,
        "gens": a.num_generators,
        "entries": [[to_struct(x) for x in row] for row in a.entries],
    }


def matrix_from_struct(obj: Any) -> SuperMatrix:
    if not isinstance(obj, dict):
        raise ParseError("matrix file must hold a JSON object")
    m, n = _int_field(obj, "m"), _int_field(obj, "n")
    ng = _int_field(obj, "gens", DEFAULT_GENERATORS)
    rows = obj.get("entries")
    size = m + n
    if not isinstance(rows, list) or len(rows) != size or any(
            not isinstance(r, list) or len(r) != size for r in rows):
        raise ParseError(f"'entries' must be a {size}x{size} grid")
    grid = tuple(tuple(from_struct(x, ng) for x in row) for row in rows)
    try:
        return SuperMatrix(m, n, grid, ng)
    except SuperberError as exc:
        raise ParseError(str(exc)) from exc


def dump_matrix(a: SuperMatrix) -> str:
    return dumps(matrix_to_struct(a))


def load_matrix(text: str) -> SuperMatrix:
    return matrix_from_struct(_loads(text))


# -- tensors ---------------------------------------------------------------------

def tensor_to_struct(t: SuperTensor) -> dict:
    sig = t.signature
    return {
        "signature": {"l": sig.l, "variance": sig.variance, "m": sig.m, "n": sig.n},
        "gens": t.num_generators,
        "terms": [{"word": list(w), "coef": to_struct(c)} for w, c in t.sorted_terms()],
    }


def tensor_from_struct(obj: Any) -> SuperTensor:
    if not isinstance(obj, dict) or not isinstance(obj.get("signature"), dict):
        raise ParseError("tensor file must hold an object with a 'signature'")
    s = obj["signature"]
    variance = s.get("variance")
    if not isinstance(variance, str):
        raise ParseError("signature needs a 'variance' string")
    l = _int_field(s, "l", len(variance))
    if l != len(variance):
        raise ParseError(f"signature length {l} disagrees with variance {variance!r}")
    ng = _int_field(obj, "gens", DEFAULT_GENERATORS)
    try:
        sig = Signature(variance, _int_field(s, "m"), _int_field(s, "n"))
        terms: dict = {}
        for term in obj.get("terms", []):
            word = tuple(int(x) for x in term["word"])
            if word in terms:
                raise ParseError(f"word {list(word)} listed twice")
            terms[word] = from_struct(term["coef"], ng)
        return SuperTensor(sig, terms, ng)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad tensor file: {exc}") from exc
    except SuperberError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from exc


def dump_tensor(t: SuperTensor) -> str:
    return dumps(tensor_to_struct(t))


def load_tensor(text: str) -> SuperTensor:
    return tensor_from_struct(_loads(text))
