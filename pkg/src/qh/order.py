from typing import Dict, List
from src.envelope.category import Obj, WindowedCategory


class Order:
    """
    Level order on the objects of a windowed category.

    The first order puts (k, i) below (l, j) when i < j. With the tilde
    refinement, objects on one level are compared by putting untilded
    vertices above tilded ones. The second order is the exact opposite.
    """

    BASES = {"first": 1, "second": 2}

    def __init__(self, base: str, c: WindowedCategory, tilde_refinement: bool = None):
        if base not in self.BASES:
            raise ValueError(f"Unknown order {base}")
        self.base = base
        self.category = c
        self.tilde_refinement = c.kind == "D" if tilde_refinement is None else tilde_refinement
        self._position = {v: k for k, v in enumerate(c.VERTICES)}

    @property
    def INDEX(self) -> int:
        return self.BASES[self.base]

    def _first_key(self, obj: Obj) -> tuple:
        vertex, level = obj
        if self.tilde_refinement:
            return level, 0 if self.category.is_tilded(vertex) else 1
        return level, 0

    def rank_key(self, obj: Obj) -> tuple:
        key = self._first_key(obj)
        return key if self.base == "first" else tuple(-k for k in key)

    def greater(self, x: Obj, y: Obj) -> bool:
        """Strict comparison x > y."""
        return self.rank_key(x) > self.rank_key(y)

    def sort_key(self, obj: Obj) -> tuple:
        """Linear extension used for deterministic tie-breaks."""
        return self.rank_key(obj), self._position.get(obj[0], 0), str(obj[0])

    def minimal(self, objects: List[Obj]) -> Obj:
        return min(objects, key=self.sort_key)

    def spec(self) -> Dict[str, object]:
        return {"base": self.base, "tilde_refinement": self.tilde_refinement}
