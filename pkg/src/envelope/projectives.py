from src.envelope.category import Obj, WindowedCategory
from src.module.module import ModuleRep, projective_module, render_object


def acting_algebra(c: WindowedCategory, side: str):
    """Right modules over c are left modules over its opposite."""
    return c if side == "left" else c.opposite()


def require_position(c: WindowedCategory, obj: Obj, interior: bool = True) -> None:
    if interior:
        c.window.require_interior(obj)
    else:
        c.window.require_safe(obj)


def projective(c: WindowedCategory, side: str, obj: Obj, interior: bool = True) -> ModuleRep:
    require_position(c, obj, interior)
    module = projective_module(acting_algebra(c, side), obj, side)
    module.name = f"P^{side[0]}{render_object(obj)}"
    return module


def injective(c: WindowedCategory, side: str, obj: Obj, interior: bool = True) -> ModuleRep:
    """Dual of the projective on the opposite side."""
    other = "right" if side == "left" else "left"
    dual = projective(c, other, obj, interior).dual()
    dual.name = f"I^{side[0]}{render_object(obj)}"
    return dual
