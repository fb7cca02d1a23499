"""
JSON structure-constant files.

Example (Sweedler's algebra, see samples/sweedler_h4.json)::

    {
      "name": "H4", "field": "rationals", "dim": 4, "labels": ["1", "g", "x", "gx"],
      "unit": ["1", "0", "0", "0"], "counit": ["1", "1", "0", "0"],
      "mult": [[0, 0, 0, "1"], [1, 2, 3, "1"], [2, 1, 3, "-1"], ...],
      "comult": [[2, 2, 0, "1"], [2, 1, 2, "1"], ...],
      "antipode": [[2, 3, "-1"], ...]
    }

mult [i, j, k, c] means e_i·e_j has coefficient c on e_k; comult [i, j, k, c]
means Δ(e_i) has coefficient c on e_j⊗e_k; antipode [i, j, c] means S(e_i)
has coefficient c on e_j. Omitted entries are zero and repeated entries add
up. Scalars are strings in the field's literal syntax, never floats.
"""
import hashlib
import json
import logging
from typing import Any, Dict, List, Tuple

from pydantic import ValidationError

from algebra.hopf import HopfAlgebra
from shared.errors import HopfError, ParseError
from shared.linalg import SparseTensor, SparseVec, add_into
from shared.models import AlgebraFile
from shared.scalars import get_field

logger = logging.getLogger(__name__)


def _location(error: Dict[str, Any]) -> str:
    path = ""
    for part in error.get("loc", ()):
        path += f"[{part}]" if isinstance(part, int) else (f".{part}" if path else str(part))
    return path or "file"


def _scalar(field, value: Any, location: str) -> Any:
    try:
        return field.convert(value)
    except HopfError as e:
        raise ParseError(e.detail, location)


def from_model(model: AlgebraFile) -> HopfAlgebra:
    """HopfAlgebra from a validated file model (not yet axiom-checked)"""
    field = get_field(model.field)
    n = model.dim
    labels = model.labels or [f"e{i}" for i in range(n)]
    unit = {i: _scalar(field, c, f"unit[{i}]") for i, c in enumerate(model.unit)}
    counit = [_scalar(field, c, f"counit[{i}]") for i, c in enumerate(model.counit)]
    mult: Dict[Tuple[int, int], SparseVec] = {}
    for position, (i, j, k, c) in enumerate(model.mult):
        add_into(mult.setdefault((i, j), {}), k, _scalar(field, c, f"mult[{position}]"))
    comult: List[SparseTensor] = [{} for _ in range(n)]
    for position, (i, j, k, c) in enumerate(model.comult):
        add_into(comult[i], (j, k), _scalar(field, c, f"comult[{position}]"))
    antipode: List[SparseVec] = [{} for _ in range(n)]
    for position, (i, j, c) in enumerate(model.antipode):
        add_into(antipode[i], j, _scalar(field, c, f"antipode[{position}]"))
    return HopfAlgebra(field, labels, mult, {i: c for i, c in unit.items() if c}, comult, counit, antipode,
                       name=model.name or "H")


def parse_text(text: str) -> HopfAlgebra:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed JSON: {e.msg}", f"line {e.lineno} column {e.colno}")
    try:
        model = AlgebraFile.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        raise ParseError(first["msg"], _location(first))
    return from_model(model)


def parse(path: str) -> HopfAlgebra:
    """Read an algebra file; axioms are checked by the caller"""
    logger.debug("reading algebra file %s", path)
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as e:
        raise ParseError(f"cannot read file: {e.strerror}", path)
    return parse_text(text)


def to_model(H: HopfAlgebra) -> AlgebraFile:
    F = H.field
    return AlgebraFile(
        name=H.name,
        field=F.descriptor,
        dim=H.dim,
        labels=list(H.labels),
        unit=[F.format(H.unit_vector().get(i, F.zero)) for i in range(H.dim)],
        counit=[F.format(c) for c in H.counit_values],
        mult=[(i, j, k, F.format(c)) for (i, j), product in sorted(H.mult_table().items())
              for k, c in sorted(product.items())],
        comult=[(i, j, k, F.format(c)) for i, tensor in enumerate(H.comult_table())
                for (j, k), c in sorted(tensor.items())],
        antipode=[(i, j, F.format(c)) for i, column in enumerate(H.antipode_columns)
                  for j, c in sorted(column.items())],
    )


def serialize(H: HopfAlgebra) -> str:
    """Canonical JSON: sorted keys, fixed separators, one algebra per document"""
    return json.dumps(to_model(H).model_dump(mode="json"), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(H: HopfAlgebra) -> str:
    return hashlib.sha256(serialize(H).encode("utf-8")).hexdigest()
