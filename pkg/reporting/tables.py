"""CSV and JSON artifact I/O with byte-stable output (LF endings, sorted keys, repr floats)"""
import csv
import json
import logging
import math
import os
from typing import Any, Dict, Iterable, List, Sequence

import numpy as np

logger = logging.getLogger(__name__)


def format_cell(value: Any) -> str:
    """Text for one CSV cell; floats use the shortest round-tripping form"""
    if value is None:
        return ''
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            return ''
        return repr(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def _ensure_parent(path: str) -> None:
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    _ensure_parent(path)
    with open(path, 'w', encoding='utf-8', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_cell(cell) for cell in row])
    logger.debug(f"Wrote CSV {path}")
    return path


def read_csv(path: str) -> List[Dict[str, str]]:
    with open(path, 'r', encoding='utf-8', newline='') as f:
        return list(csv.DictReader(f))


def to_jsonable(value: Any) -> Any:
    """Plain JSON types for numpy values; non-finite floats become null"""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


def dumps_json(data: Any) -> str:
    return json.dumps(to_jsonable(data), indent=2, sort_keys=True, ensure_ascii=False) + '\n'


def write_json(path: str, data: Any) -> str:
    _ensure_parent(path)
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(dumps_json(data))
    logger.debug(f"Wrote JSON {path}")
    return path


def read_json(path: str) -> Any:
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f)
