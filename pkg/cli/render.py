"""
Report rendering: canonical JSON for machines, indented text for people
"""

import json
from typing import Any, List


def render_json(report: Any) -> str:
    """
    Canonical serialization: sorted keys, fixed indentation, trailing newline.

    Identical reports render to identical bytes.
    """
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _scalar(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def _is_flat_list(value: Any) -> bool:
    return isinstance(value, list) and all(not isinstance(v, (dict, list)) or _is_flat_list(v) for v in value)


def _flat(value: Any) -> str:
    if isinstance(value, list):
        return "[" + ", ".join(_flat(v) for v in value) + "]"
    return _scalar(value)


def _lines(value: Any, indent: int) -> List[str]:
    pad = "  " * indent
    out = []
    if isinstance(value, dict):
        for key in sorted(value):
            item = value[key]
            if isinstance(item, dict) or (isinstance(item, list) and not _is_flat_list(item)):
                out.append(f"{pad}{key}:")
                out.extend(_lines(item, indent + 1))
            else:
                out.append(f"{pad}{key}: {_flat(item)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, dict):
                out.append(f"{pad}-")
                out.extend(_lines(item, indent + 1))
            else:
                out.append(f"{pad}- {_flat(item)}")
    else:
        out.append(f"{pad}{_scalar(value)}")
    return out


def render_text(report: Any) -> str:
    """Indented key/value rendering of a report, keys sorted like the JSON form"""
    return "\n".join(_lines(report, 0)) + "\n"
