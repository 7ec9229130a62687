from typing import Dict, List, Tuple
from src.envelope.category import Obj, WindowedCategory


def _cells(c: WindowedCategory, obj: Obj, kind: str) -> Dict[Tuple[int, int], int]:
    """Basis elements ending at obj, counted by (row, column) = (offset + 2 layer, offset)."""
    cells: Dict[Tuple[int, int], int] = {}
    for idx in c.into(obj):
        b = c.BASIS[idx]
        if b.origin[0] != kind:
            continue
        offset = b.source[1] - obj[1]
        key = (offset + 2 * b.level, offset)
        cells[key] = cells.get(key, 0) + 1
    return cells


def _grid(cells: Dict[Tuple[int, int], int], N: int) -> List[str]:
    columns = range(-(N - 1), N)
    rows = range(-(N - 1), N + 2 * (N - 1))
    lines = []
    for row in rows:
        line = "".join(f"{cells.get((row, col), '.'):>3}" for col in columns)
        if line.strip(" ."):
            lines.append(line)
    return lines


def rhombal_layout(c: WindowedCategory, obj: Obj) -> Dict[str, List[str]]:
    """
    ASCII layout of the right projective at obj: each cell holds the number of
    basis elements at a level offset (column) and filtration layer (row
    offset + 2 layer). For D the envelope and dual parts are drawn side by side.
    """
    layouts = {"C": _grid(_cells(c, obj, "C"), c.N)}
    if c.kind == "D":
        left, right = layouts["C"], _grid(_cells(c, obj, "D"), c.N)
        width = max((len(line) for line in left), default=0)
        height = max(len(left), len(right))
        left = left + [""] * (height - len(left))
        right = right + [""] * (height - len(right))
        layouts = {"C | C*": [f"{l:<{width}} | {r}" for l, r in zip(left, right)]}
    return layouts
