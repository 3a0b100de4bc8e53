"""
JSON and CSV formats for configurations, coalgebras, run requests and pages.

Rationals are written as "p/q" strings; decimals are accepted on input and
converted exactly.
"""
import csv
import io
import json
import logging
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Tuple

from gravity_calc.exceptions import ParseError
from gravity_calc.models.coalgebra import LEFT, RIGHT, Coalgebra, Comodule
from gravity_calc.models.cubes import CubeConfig
from gravity_calc.models.graded import BasisElement, GradedSpace
from gravity_calc.models.page import BigradedPage, CobarComplexSlice
from gravity_calc.utils.coalgebra_core import UNIT_NAME, coalgebra_from_table, comodule_from_table
from gravity_calc.utils.linalg import sparse_triplets

MODES = ('shuffle', 'cobar', 'compare', 'e2')


def parse_json(text: str) -> Any:
    """
    Parse JSON keeping decimals exact.

    Raises:
        ParseError: with the line of the syntax error
    """
    try:
        return json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno)


def to_jsonable(value: Any) -> Any:
    """Replace Fractions by "p/q" strings and tuples by lists, recursively."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return value


def dumps(value: Any) -> str:
    return json.dumps(to_jsonable(value), indent=2, ensure_ascii=False)


def loads_config(text: str) -> CubeConfig:
    """Parse and validate a configuration file."""
    return CubeConfig.from_dict(parse_json(text))


def dumps_config(cfg: CubeConfig) -> str:
    return dumps(cfg.to_dict())


def as_integer(value: Any, what: str) -> int:
    """
    Read an integer field, rejecting fractional values instead of truncating.

    Accepts ints, rationals with denominator 1 and integer strings.
    """
    if isinstance(value, bool):
        raise ParseError(f"{what} must be an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError:
            pass
    raise ParseError(f"{what} must be an integer, got {to_jsonable(value)!r}")


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p ** 0.5) + 1))


def _prime(data: Mapping[str, Any]) -> int:
    p = as_integer(data.get('p', 2), 'p')
    if not is_prime(p):
        raise ParseError(f"p must be prime, got {p}")
    return p


def _basis_from_json(p: int, entries: Any, with_unit: bool) -> GradedSpace:
    if not isinstance(entries, list):
        raise ParseError("basis must be a list of {\"name\", \"deg\"} objects")
    basis = []
    names = set()
    for entry in entries:
        if not isinstance(entry, Mapping) or 'name' not in entry or 'deg' not in entry:
            raise ParseError(f"basis entry needs a name and an integer deg: {to_jsonable(entry)!r}")
        name = str(entry['name'])
        degree = as_integer(entry['deg'], f"deg of {name}")
        if degree < 0:
            raise ParseError(f"negative degree for {name}")
        weight = as_integer(entry.get('weight', 0), f"weight of {name}")
        basis.append(BasisElement(name, name, degree, weight))
        names.add(name)
    if with_unit and UNIT_NAME not in names:
        basis.insert(0, BasisElement(UNIT_NAME, UNIT_NAME, 0))
    return GradedSpace(p, tuple(basis))


def _table(p: int, raw: Any, what: str) -> Dict[str, List[Tuple[str, str, int]]]:
    if raw is None:
        return {}
    if not isinstance(raw, Mapping):
        raise ParseError(f"{what} must be an object mapping names to term lists")
    table = {}
    for name, terms in raw.items():
        if not isinstance(terms, list):
            raise ParseError(f"{what} of {name} must be a list of [left, right, coefficient] terms")
        rows = []
        for term in terms:
            if not isinstance(term, list) or len(term) not in (2, 3):
                raise ParseError(f"term of {name} must be [left, right, coefficient]: {to_jsonable(term)!r}")
            coef = as_integer(term[2], f"coefficient in {what} of {name}") if len(term) == 3 else 1
            rows.append((str(term[0]), str(term[1]), coef % p))
        table[str(name)] = rows
    return table


def coalgebra_from_json(data: Mapping[str, Any]) -> Coalgebra:
    """
    Build a validated coalgebra from
    {"p": 2, "basis": [{"name": "x", "deg": 2}], "coproduct": {"x^2": [["x", "x", "1"]]}}.

    The counit "1" in degree 0 is added when the basis does not list it.
    """
    if not isinstance(data, Mapping):
        raise ParseError("coalgebra must be a JSON object")
    p = _prime(data)
    space = _basis_from_json(p, data.get('basis', []), with_unit=True)
    return coalgebra_from_table(space, _table(p, data.get('coproduct'), 'coproduct'), UNIT_NAME)


def comodule_from_json(C: Coalgebra, data: Mapping[str, Any]) -> Comodule:
    """{"side": "right", "basis": [...], "coaction": {"m": [["m0", "x", "1"]]}}."""
    if not isinstance(data, Mapping):
        raise ParseError("comodule must be a JSON object")
    side = data.get('side', RIGHT)
    if side not in (LEFT, RIGHT):
        raise ParseError(f"comodule side must be '{LEFT}' or '{RIGHT}'")
    space = _basis_from_json(C.p, data.get('basis', []), with_unit=False)
    return comodule_from_table(C, space, side, _table(C.p, data.get('coaction'), 'coaction'))


def comodules_from_json(C: Coalgebra, data: Mapping[str, Any]) -> Tuple[Optional[Comodule], Optional[Comodule]]:
    """The optional "M" and "N" entries of a coalgebra file."""
    M = comodule_from_json(C, data['M']) if 'M' in data else None
    N = comodule_from_json(C, data['N']) if 'N' in data else None
    return M, N


@dataclass
class RunRequest:
    """A page/cotor/verify run, merged from request JSON, flags and config."""
    mode: str = 'e2'
    X: List[int] = field(default_factory=list)
    p: int = 2
    max_s: int = 5
    max_degree: int = 20
    max_weight: int = 6

    def __post_init__(self):
        if self.mode not in MODES:
            raise ParseError(f"mode must be one of {', '.join(MODES)}, got {self.mode!r}")
        for name in ('p', 'max_s', 'max_degree', 'max_weight'):
            if getattr(self, name) < 1:
                raise ParseError(f"{name} must be positive")
        if not is_prime(self.p):
            raise ParseError(f"p must be prime, got {self.p}")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


REQUEST_KEYS = {'maxS': 'max_s', 'maxDegree': 'max_degree', 'maxWeight': 'max_weight'}


def request_from_json(data: Mapping[str, Any], **overrides) -> RunRequest:
    """
    Read {"X": [1, 1], "p": 2, "maxS": 5, "maxDegree": 20, "maxWeight": 6,
    "mode": "e2"}; keyword overrides that are not None win.
    """
    if not isinstance(data, Mapping):
        raise ParseError("request must be a JSON object")
    values: Dict[str, Any] = {}
    for key, value in data.items():
        name = REQUEST_KEYS.get(key, key)
        if name in ('X', 'p', 'max_s', 'max_degree', 'max_weight', 'mode'):
            values[name] = value
    for name, value in overrides.items():
        if value is not None:
            values[name] = value
    X = values.get('X', [])
    if not isinstance(X, (list, tuple)):
        raise ParseError("X must be a list of sphere dimensions")
    values['X'] = [as_integer(d, 'sphere dimension') for d in X]
    for name in ('p', 'max_s', 'max_degree', 'max_weight'):
        if name in values:
            values[name] = as_integer(values[name], name)
    return RunRequest(**values)


def page_payload(
    pages: Mapping[str, BigradedPage],
    truncated: bool,
    box: Mapping[str, int],
    **extra: Any,
) -> Dict[str, Any]:
    """{"pages": {"E1": {"-s,t": dim}}, "truncated": bool, "box": {...}, ...}"""
    payload: Dict[str, Any] = {
        'pages': {name: page.to_dict() for name, page in pages.items()},
        'truncated': bool(truncated),
        'box': dict(box),
    }
    payload.update(extra)
    return payload


def parse_bidegree(key: str) -> Tuple[int, int]:
    """"-s,t" -> (s, t)."""
    try:
        minus_s, t = key.split(',')
        return -int(minus_s), int(t)
    except ValueError:
        raise ParseError(f"bad bidegree key {key!r}")


def pages_from_payload(payload: Mapping[str, Any]) -> Dict[str, Dict[Tuple[int, int], int]]:
    return {
        name: {parse_bidegree(k): int(v) for k, v in table.items()}
        for name, table in payload.get('pages', {}).items()
    }


def pages_to_csv(pages: Mapping[str, BigradedPage]) -> str:
    """Dims-only CSV: page,s,t,total,dim."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(['page', 's', 't', 'total', 'dim'])
    for name, page in pages.items():
        for (s, t), dim in page.dims.items():
            writer.writerow([name, -s, t, t - s, dim])
    return buffer.getvalue()


def matrices_payload(complex_: CobarComplexSlice) -> Dict[str, Any]:
    """Sparse triplets of every differential matrix, keyed "weight,-s,t"."""
    return {
        f"{w},{-s},{t}": {
            'shape': list(matrix.shape),
            'entries': [list(e) for e in sparse_triplets(matrix)],
        }
        for (w, s, t), matrix in sorted(complex_.matrices.items())
    }


def write_text(path: Optional[str], text: str) -> None:
    """Write to a file, or to stdout when path is None or '-'."""
    if path in (None, '-'):
        print(text)
        return
    with open(path, 'w', encoding='utf-8') as file:
        file.write(text)
        if not text.endswith('\n'):
            file.write('\n')
    logging.info(f"Wrote {path}")
