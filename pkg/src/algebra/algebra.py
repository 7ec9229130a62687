import logging
import random
from collections import defaultdict
from typing import Dict, Hashable, Iterable, List, NamedTuple, Optional, Tuple
from src.algebra.interface import IAlgebra
from src.linalg.field import Field
from src.linalg.matrix import EchelonBasis
from src.models.m_errors import AlgebraErrors
from src.models.base_errors import PresentationError

logger = logging.getLogger(__name__)

Vector = Dict[int, object]


class BasisElement(NamedTuple):
    label: str
    source: Hashable
    target: Hashable
    level: int = 0
    grade: int = 0
    origin: tuple = ()


def add_into(target: Vector, source: Vector, scale, zero) -> Vector:
    """target += scale * source, dropping cancelled entries."""
    for key, coeff in source.items():
        value = target.get(key, zero) + scale * coeff
        if value == zero:
            target.pop(key, None)
        else:
            target[key] = value
    return target


class FiniteDimAlgebra(IAlgebra):
    """
    Locally unital finite-dimensional algebra (a finite linear category).

    Objects are hashable labels, every basis element lives in one hom block
    hom(source, target) and the product u * v means "u after v", so it is
    defined only when source(u) == target(v).

    Parameters:
        field (Field): scalars.
        objects (list): objects in a fixed order.
        basis (list[BasisElement]): basis elements.
        table (dict): (u, v) -> {w: coefficient}, nonzero products only.
        units (dict): object -> index of its identity basis element.
    """

    def __init__(
        self,
        field: Field,
        objects: Iterable[Hashable],
        basis: List[BasisElement],
        table: Dict[Tuple[int, int], Vector],
        units: Dict[Hashable, int],
        name: str = "",
    ):
        self._field = field
        self._objects = list(objects)
        self._basis = list(basis)
        self._table = table
        self._units = dict(units)
        self._unit_set = set(self._units.values())
        self.name = name
        self._homs: Dict[tuple, List[int]] = defaultdict(list)
        self._out: Dict[Hashable, List[int]] = defaultdict(list)
        self._in: Dict[Hashable, List[int]] = defaultdict(list)
        self._position: List[int] = []
        self._labels: Dict[str, int] = {}
        for idx, b in enumerate(self._basis):
            block = self._homs[(b.source, b.target)]
            self._position.append(len(block))
            block.append(idx)
            self._out[b.source].append(idx)
            self._in[b.target].append(idx)
            self._labels[b.label] = idx
        self._opposite: Optional["FiniteDimAlgebra"] = None
        self._generators: Optional[List[int]] = None

    @property
    def FIELD(self) -> Field:
        return self._field

    @property
    def OBJECTS(self) -> List[Hashable]:
        return self._objects

    @property
    def BASIS(self) -> List[BasisElement]:
        return self._basis

    @property
    def DIM(self) -> int:
        return len(self._basis)

    @property
    def UNITS(self) -> Dict[Hashable, int]:
        return self._units

    @property
    def TABLE(self) -> Dict[Tuple[int, int], Vector]:
        return self._table

    def hom(self, x: Hashable, y: Hashable) -> List[int]:
        return self._homs.get((x, y), [])

    def blocks(self) -> List[tuple]:
        return list(self._homs.keys())

    def out_of(self, x: Hashable) -> List[int]:
        return self._out.get(x, [])

    def into(self, y: Hashable) -> List[int]:
        return self._in.get(y, [])

    def position(self, idx: int) -> int:
        return self._position[idx]

    def index(self, label: str) -> int:
        if label not in self._labels:
            raise PresentationError(AlgebraErrors.UNKNOWN_LABEL.value.format(label=label))
        return self._labels[label]

    def has_label(self, label: str) -> bool:
        return label in self._labels

    def is_unit(self, idx: int) -> bool:
        return idx in self._unit_set

    def multiply(self, u: int, v: int) -> Vector:
        return self._table.get((u, v), {})

    def product(self, x: Vector, y: Vector) -> Vector:
        zero = self._field.zero
        out: Vector = {}
        for u, a in x.items():
            for v, b in y.items():
                uv = self._table.get((u, v))
                if uv:
                    add_into(out, uv, a * b, zero)
        return out

    def local(self, vec: Vector, x: Hashable, y: Hashable) -> list:
        """Dense coordinates of a vector supported in hom(x, y)."""
        block = self.hom(x, y)
        dense = [self._field.zero] * len(block)
        for idx, c in vec.items():
            dense[self._position[idx]] = c
        return dense

    def from_local(self, dense: list, x: Hashable, y: Hashable) -> Vector:
        zero = self._field.zero
        return {idx: c for idx, c in zip(self.hom(x, y), dense) if c != zero}

    def opposite(self) -> "FiniteDimAlgebra":
        if self._opposite is None:
            basis = [b._replace(source=b.target, target=b.source) for b in self._basis]
            table = {(v, u): w for (u, v), w in self._table.items()}
            op = self._make_opposite(basis, table)
            op._opposite = self
            self._opposite = op
        return self._opposite

    def _make_opposite(self, basis, table) -> "FiniteDimAlgebra":
        return FiniteDimAlgebra(self._field, self._objects, basis, table, self._units, f"{self.name}^op")

    def radical(self) -> List[int]:
        return [i for i in range(self.DIM) if i not in self._unit_set]

    def radical_square(self) -> Dict[tuple, EchelonBasis]:
        spans: Dict[tuple, EchelonBasis] = {}
        for (u, v), w in self._table.items():
            if not w or u in self._unit_set or v in self._unit_set:
                continue
            key = (self._basis[v].source, self._basis[u].target)
            if key not in spans:
                spans[key] = EchelonBasis(self._field, len(self.hom(*key)))
            spans[key].add(self.local(w, *key))
        return spans

    def generators(self) -> List[int]:
        """Basis elements completing a basis of rad^2 to a basis of rad, block by block."""
        if self._generators is None:
            squares = self.radical_square()
            chosen = []
            for key, block in self._homs.items():
                span = squares.get(key)
                span = span.copy() if span else EchelonBasis(self._field, len(block))
                for idx in block:
                    if idx in self._unit_set:
                        continue
                    unit = [self._field.zero] * len(block)
                    unit[self._position[idx]] = self._field.one
                    if span.add(unit):
                        chosen.append(idx)
            self._generators = sorted(chosen)
        return self._generators

    def composable_pairs(self) -> Iterable[Tuple[int, int]]:
        for v, bv in enumerate(self._basis):
            for u in self.out_of(bv.target):
                yield u, v

    def triples(self, limit: int, rng: random.Random) -> Iterable[Tuple[int, int, int]]:
        """All composable triples when there are at most limit of them, else limit seeded samples."""
        total = 0
        for bv in self._basis:
            total += len(self.out_of(bv.target)) * len(self.into(bv.source))
        if total <= limit:
            for v, bv in enumerate(self._basis):
                for u in self.out_of(bv.target):
                    for w in self.into(bv.source):
                        yield u, v, w
            return
        for _ in range(limit):
            v = rng.randrange(self.DIM)
            bv = self._basis[v]
            outs, ins = self.out_of(bv.target), self.into(bv.source)
            yield rng.choice(outs), v, rng.choice(ins)

    def associativity_failures(self, limit: int, rng: random.Random) -> List[Tuple[int, int, int]]:
        failures = []
        for u, v, w in self.triples(limit, rng):
            left = self.product(self.multiply(u, v), {w: self._field.one})
            right = self.product({u: self._field.one}, self.multiply(v, w))
            if left != right:
                failures.append((u, v, w))
        return failures

    def units_neutral(self) -> bool:
        one = self._field.one
        for idx, b in enumerate(self._basis):
            if self.multiply(self._units[b.target], idx) != {idx: one}:
                return False
            if self.multiply(idx, self._units[b.source]) != {idx: one}:
                return False
        return True

    def ideal_closure(self, seeds: Iterable[Vector]) -> Dict[tuple, EchelonBasis]:
        """Two-sided ideal generated by seeds, as spans per hom block."""
        spans: Dict[tuple, EchelonBasis] = {}
        queue: List[Tuple[tuple, list]] = []

        def push(vec: Vector):
            if not vec:
                return
            first = self._basis[next(iter(vec))]
            key = (first.source, first.target)
            if key not in spans:
                spans[key] = EchelonBasis(self._field, len(self.hom(*key)))
            dense = self.local(vec, *key)
            if spans[key].add(dense):
                queue.append((key, dense))

        for seed in seeds:
            push(seed)
        while queue:
            (x, y), dense = queue.pop()
            vec = self.from_local(dense, x, y)
            for b in self.out_of(y):
                if b not in self._unit_set:
                    push(self.product({b: self._field.one}, vec))
            for b in self.into(x):
                if b not in self._unit_set:
                    push(self.product(vec, {b: self._field.one}))
        return spans

    def quotient(self, ideal: Dict[tuple, EchelonBasis], name: str = "") -> Tuple["FiniteDimAlgebra", Dict[int, int]]:
        """Quotient by an ideal; the kept basis elements are the non-pivot ones of each block."""
        zero = self._field.zero
        kept: Dict[int, int] = {}
        basis = []
        for key, block in self._homs.items():
            span = ideal.get(key)
            free = span.complement() if span else list(range(len(block)))
            for pos in free:
                kept[block[pos]] = len(basis)
                basis.append(self._basis[block[pos]])
        table = {}
        for (u, v), w in self._table.items():
            if u not in kept or v not in kept or not w:
                continue
            key = (self._basis[v].source, self._basis[u].target)
            dense = self.local(w, *key)
            if key in ideal:
                dense, _ = ideal[key].reduce(dense)
            image = {}
            for idx, c in zip(self.hom(*key), dense):
                if c != zero:
                    image[kept[idx]] = c
            if image:
                table[(kept[u], kept[v])] = image
        units = {obj: kept[idx] for obj, idx in self._units.items() if idx in kept}
        objects = [obj for obj in self._objects if obj in units]
        return FiniteDimAlgebra(self._field, objects, basis, table, units, name or f"{self.name}/I"), kept

    def full_subcategory(self, objects: Iterable[Hashable], name: str = "") -> Tuple["FiniteDimAlgebra", Dict[int, int]]:
        """Corner algebra e A e on the given objects."""
        chosen = list(objects)
        allowed = set(chosen)
        kept: Dict[int, int] = {}
        basis = []
        for idx, b in enumerate(self._basis):
            if b.source in allowed and b.target in allowed:
                kept[idx] = len(basis)
                basis.append(b)
        table = {}
        for (u, v), w in self._table.items():
            if u in kept and v in kept and w:
                table[(kept[u], kept[v])] = {kept[k]: c for k, c in w.items()}
        units = {obj: kept[self._units[obj]] for obj in chosen}
        return FiniteDimAlgebra(self._field, chosen, basis, table, units, name or f"e{self.name}e"), kept

    def without(self, labels: Iterable[str]) -> "FiniteDimAlgebra":
        """Copy with the named basis elements and every product touching them removed."""
        dropped = {self.index(label) for label in labels}
        kept = {}
        basis = []
        for idx, b in enumerate(self._basis):
            if idx not in dropped:
                kept[idx] = len(basis)
                basis.append(b)
        table = {}
        for (u, v), w in self._table.items():
            if u in kept and v in kept:
                image = {kept[k]: c for k, c in w.items() if k in kept}
                if image:
                    table[(kept[u], kept[v])] = image
        units = {obj: kept[idx] for obj, idx in self._units.items()}
        return self._rebuild(basis, table, units)

    def _rebuild(self, basis, table, units) -> "FiniteDimAlgebra":
        return FiniteDimAlgebra(self._field, self._objects, basis, table, units, self.name)


def same_structure(a: FiniteDimAlgebra, b: FiniteDimAlgebra, label_map: Dict[str, str]) -> bool:
    """True when label_map is a bijection of bases carrying the structure constants of a onto b."""
    if a.DIM != b.DIM or len(label_map) != a.DIM:
        return False
    image = {}
    for idx, basis_element in enumerate(a.BASIS):
        target = label_map.get(basis_element.label)
        if target is None or not b.has_label(target):
            return False
        image[idx] = b.index(target)
    if len(set(image.values())) != a.DIM:
        return False
    for u in range(a.DIM):
        for v in range(a.DIM):
            mapped = {image[w]: c for w, c in a.multiply(u, v).items()}
            if mapped != b.multiply(image[u], image[v]):
                return False
    return True
