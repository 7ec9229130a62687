import logging
import random
from typing import Dict, List, Optional, Tuple
from src.envelope.category import Obj, WindowedCategory
from src.linalg.matrix import Mat, rank, solve
from src.module.homs import Morphism, find_surjection, kernel
from src.module.module import ModuleRep, render_object
from src.qh.order import Order
from src.qh.standard import standard_module

logger = logging.getLogger(__name__)

Flag = Dict[Obj, Mat]


class FiltrationStep:
    """
    One layer of a standard filtration: the flag F is given by basis columns in
    the coordinates of the filtered module and the surjection maps F, in those
    coordinates, onto the standard module at obj.
    """

    def __init__(self, obj: Obj, flag: Flag, surjection: Morphism, standard: ModuleRep):
        self.obj = obj
        self.flag = flag
        self.surjection = surjection
        self.standard = standard

    def to_dict(self) -> dict:
        return {
            "factor": render_object(self.obj),
            "flag_dims": {render_object(o): m.cols for o, m in self.flag.items() if m.cols},
            "flag": {render_object(o): m.render() for o, m in self.flag.items() if m.cols},
            "surjection": {render_object(o): m.render() for o, m in self.surjection.items()},
        }


class FiltrationWitness:
    def __init__(self, module: ModuleRep, order: Order, side: str):
        self.module = module
        self.order = order
        self.side = side
        self.steps: List[FiltrationStep] = []
        self.stuck: Optional[dict] = None

    @property
    def complete(self) -> bool:
        return self.stuck is None

    def factors(self) -> List[Obj]:
        return [step.obj for step in self.steps]

    def multiset(self) -> List[Tuple[str, int]]:
        counts: Dict[str, int] = {}
        for obj in sorted(self.factors(), key=self.order.sort_key):
            counts[render_object(obj)] = counts.get(render_object(obj), 0) + 1
        return list(counts.items())

    def to_dict(self) -> dict:
        return {
            "module": self.module.name,
            "complete": self.complete,
            "factors": [render_object(obj) for obj in self.factors()],
            "steps": [step.to_dict() for step in self.steps],
            "stuck": self.stuck,
        }


def _identity_flag(m: ModuleRep) -> Flag:
    return {obj: Mat.identity(m.FIELD, d) for obj, d in m.dims.items()}


def _standard(c: WindowedCategory, side: str, order: Order, obj: Obj, cache: Dict[Obj, ModuleRep]) -> ModuleRep:
    if obj not in cache:
        cache[obj] = standard_module(c, side, order, obj, interior=False)
    return cache[obj]


def _split(current: ModuleRep, phi: Morphism, flag: Flag) -> Tuple[ModuleRep, Flag]:
    sub, inclusions = current.submodule(kernel(current, phi))
    field = current.FIELD
    nested = {}
    for obj, outer in flag.items():
        inner = inclusions.get(obj)
        nested[obj] = outer @ inner if inner is not None else Mat.zeros(field, outer.rows, 0)
    return sub, nested


def delta_filtration(
    m: ModuleRep, c: WindowedCategory, order: Order, side: str, rng: random.Random
) -> FiltrationWitness:
    """
    Greedy top-down standard filtration: split off a standard quotient at the
    order-minimal object of the top and continue with the kernel. A failure
    is recorded as the stuck stage, not raised.
    """
    witness = FiltrationWitness(m, order, side)
    cache: Dict[Obj, ModuleRep] = {}
    current, flag = m, _identity_flag(m)
    while current.DIM:
        top = list(current.top())
        x = order.minimal(top)
        delta = _standard(c, side, order, x, cache)
        phi = find_surjection(current, delta, rng)
        if phi is None:
            witness.stuck = {
                "stage": len(witness.steps),
                "top": [render_object(obj) for obj in top],
                "candidate": render_object(x),
                "remaining": current.dimension_vector(),
            }
            logger.debug("filtration of %s stuck at %s", m.name, witness.stuck)
            break
        witness.steps.append(FiltrationStep(x, flag, phi, delta))
        current, flag = _split(current, phi, flag)
    return witness


def exhaustive_filtrations(
    m: ModuleRep, c: WindowedCategory, order: Order, side: str, rng: random.Random, limit: int = 256
) -> List[List[Tuple[str, int]]]:
    """
    Multisets of every complete standard filtration reachable by trying each
    top object at each stage. Small modules only.
    """
    cache: Dict[Obj, ModuleRep] = {}
    found: List[List[Tuple[str, int]]] = []
    explored = [0]

    def walk(current: ModuleRep, factors: List[Obj]):
        if explored[0] >= limit:
            return
        explored[0] += 1
        if not current.DIM:
            counts: Dict[str, int] = {}
            for obj in sorted(factors, key=order.sort_key):
                counts[render_object(obj)] = counts.get(render_object(obj), 0) + 1
            multiset = list(counts.items())
            if multiset not in found:
                found.append(multiset)
            return
        for y in sorted(current.top(), key=order.sort_key):
            if not c.window.safe(y[1]):
                continue
            phi = find_surjection(current, _standard(c, side, order, y, cache), rng)
            if phi is None:
                continue
            sub, _ = current.submodule(kernel(current, phi))
            walk(sub, factors + [y])

    walk(m, [])
    return found


def _coordinates(basis: Mat, vec: list) -> Optional[list]:
    if basis.cols == 0:
        return [] if all(a == basis.field.zero for a in vec) else None
    return solve(basis, vec)


def verify_filtration_witness(witness: FiltrationWitness) -> Tuple[bool, List[str]]:
    """
    Re-check a recorded filtration by linear algebra alone: each flag is a
    submodule, each surjection intertwines and is onto, its kernel is the
    next flag, the first flag is everything and the last one is zero.
    """
    m = witness.module
    field = m.FIELD
    problems: List[str] = []
    steps = witness.steps
    if not witness.complete:
        return False, ["filtration is incomplete"]
    if steps and any(steps[0].flag[obj].cols != d for obj, d in m.dims.items()):
        problems.append("first flag is not the whole module")
    for t, step in enumerate(steps):
        flag, phi, delta = step.flag, step.surjection, step.standard
        following = steps[t + 1].flag if t + 1 < len(steps) else None
        for idx in m.active():
            b = m.algebra.BASIS[idx]
            source, target = flag.get(b.source), flag.get(b.target)
            if source is None or target is None or not source.cols:
                continue
            for col in range(source.cols):
                image = m.apply(idx, source.column(col))
                coords = _coordinates(target, image)
                if coords is None:
                    problems.append(f"flag {t} is not closed under {b.label}")
                    break
                unit = [field.zero] * source.cols
                unit[col] = field.one
                left = phi[b.target].apply(coords) if b.target in phi else []
                right = delta.apply(idx, phi[b.source].apply(unit)) if b.source in phi else []
                if b.target in phi and left != (right or [field.zero] * delta.dim_at(b.target)):
                    problems.append(f"surjection {t} does not intertwine {b.label}")
                    break
        for obj, d in delta.dims.items():
            if obj not in phi or rank(phi[obj]) != d:
                problems.append(f"surjection {t} is not onto at {render_object(obj)}")
        for obj, basis in flag.items():
            expected = basis.cols - delta.dim_at(obj)
            inner = following.get(obj) if following is not None else None
            got = inner.cols if inner is not None else 0
            if got != expected:
                problems.append(f"flag {t + 1} has dimension {got} at {render_object(obj)}, expected {expected}")
                continue
            if inner is None or not got or obj not in phi:
                continue
            for col in range(inner.cols):
                coords = _coordinates(basis, inner.column(col))
                if coords is None or any(a != field.zero for a in phi[obj].apply(coords)):
                    problems.append(f"flag {t + 1} is not the kernel of surjection {t}")
                    break
    return not problems, problems


def check_projective_filtration(witness: FiltrationWitness, obj: Obj) -> Dict[str, object]:
    """Top factor at obj with multiplicity one and every other factor strictly above obj."""
    factors = witness.factors()
    order = witness.order
    others = factors[1:]
    return {
        "top": bool(factors) and factors[0] == obj,
        "multiplicity": factors.count(obj),
        "others_above": all(order.greater(y, obj) for y in others),
    }
