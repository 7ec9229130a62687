import logging
from typing import Dict
from src.envelope.category import Obj, WindowedCategory
from src.envelope.projectives import projective
from src.module.homs import hom_space
from src.module.module import ModuleRep, Span, render_object
from src.qh.order import Order

logger = logging.getLogger(__name__)


def _other(side: str) -> str:
    return "right" if side == "left" else "left"


def trace_above(p: ModuleRep, order: Order, obj: Obj) -> Span:
    """Submodule of p generated by its spaces at objects strictly above obj."""
    field = p.FIELD
    seeds = []
    for y in p.support():
        if order.greater(y, obj):
            for k in range(p.dims[y]):
                seeds.append((y, [field.one if r == k else field.zero for r in range(p.dims[y])]))
    return p.generated(seeds)


def standard_module(c: WindowedCategory, side: str, order: Order, obj: Obj, interior: bool = True) -> ModuleRep:
    """
    P(obj) modulo the trace of the projectives at strictly greater objects,
    which is the submodule generated by P(obj)(Y) for Y > obj.
    """
    p = projective(c, side, obj, interior)
    delta, _ = p.quotient(trace_above(p, order, obj), f"Delta^{order.INDEX},{side[0]}{render_object(obj)}")
    return delta


def costandard_module(c: WindowedCategory, side: str, order: Order, obj: Obj, interior: bool = True) -> ModuleRep:
    """Dual of the standard module on the opposite side for the same order."""
    standard = standard_module(c, _other(side), order, obj, interior)
    return standard.dual(f"Nabla^{order.INDEX},{side[0]}{render_object(obj)}")


def check_standard(delta: ModuleRep, order: Order, obj: Obj) -> Dict[str, object]:
    """
    Scalar endomorphisms, a one-dimensional top at obj and all other
    composition factors strictly below obj.
    """
    below = [render_object(y) for y in delta.support() if y != obj and not order.greater(obj, y)]
    endomorphisms = len(hom_space(delta, delta))
    return {
        "dimension_vector": delta.dimension_vector(),
        "end_dim": endomorphisms,
        "top_dim": delta.dim_at(obj),
        "not_below": below,
        "ok": endomorphisms == 1 and delta.dim_at(obj) == 1 and not below,
    }
