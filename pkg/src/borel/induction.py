import logging
import random
from typing import Dict, List
from src.borel.subalgebra import SubalgebraEmbedding, check_directed
from src.envelope.category import Obj, WindowedCategory
from src.envelope.projectives import acting_algebra, projective
from src.module.homs import find_isomorphism, intertwines
from src.module.module import ModuleRep, projective_module, render_object
from src.models.models import Certificate, Verdict
from src.models.m_errors import ModuleErrors
from src.models.base_errors import ComparisonFailed
from src.qh.certify import per_index
from src.qh.order import Order
from src.qh.standard import standard_module

logger = logging.getLogger(__name__)

# (subalgebra key, side) pairs expected to induce standard modules, per order
SUITES = {
    "first": [("B", "left"), ("Bbar", "left"), ("tildeB", "right")],
    "second": [("tildeB", "left"), ("B", "right"), ("Bbar", "right")],
}


def induce_simple(s: SubalgebraEmbedding, obj: Obj, side: str = "left") -> ModuleRep:
    """
    Induction of the simple at obj: the ambient projective at obj modulo the
    submodule generated by the non-unit subalgebra elements starting at obj.
    Right induction runs over the opposite algebras.
    """
    c = s.ambient
    p = projective(c, side, obj)
    algebra = acting_algebra(c, side)
    field = p.FIELD
    seeds = []
    for idx in s.non_units():
        b = algebra.BASIS[idx]
        if b.source != obj:
            continue
        vec = [field.zero] * p.dims[b.target]
        vec[algebra.position(idx)] = field.one
        seeds.append((b.target, vec))
    induced, _ = p.quotient(p.generated(seeds), f"{s.name}^{side[0]}(x)L{render_object(obj)}")
    return induced


def compare_induced(s: SubalgebraEmbedding, obj: Obj, side: str, order: Order, rng: random.Random) -> dict:
    """
    Raises:
        ComparisonFailed: with both dimension vectors.
    """
    induced = induce_simple(s, obj, side)
    standard = standard_module(s.ambient, side, order, obj)
    phi = find_isomorphism(induced, standard, rng)
    if phi is None or not intertwines(induced, standard, phi):
        raise ComparisonFailed(
            ModuleErrors.COMPARISON.value.format(induced=induced.name, standard=standard.name),
            {"induced": induced.dimension_vector(), "standard": standard.dimension_vector()},
        )
    return {"object": render_object(obj), "dimension_vector": standard.dimension_vector()}


def induction_suite(
    subalgebras: Dict[str, SubalgebraEmbedding],
    order_base: str,
    rng: random.Random,
    workers: int = 1,
    digest: str = "",
) -> Certificate:
    """
    Directedness and induction of every interior simple for each subalgebra in
    the suite of the order: Borel subalgebras induce on the left, Delta
    subalgebras on the right.
    """
    witnesses: List[dict] = []
    for key, side in SUITES[order_base]:
        s = subalgebras.get(key)
        if s is None:
            continue
        c = s.ambient
        order = Order(order_base, c)
        directed = check_directed(s.sub, order)
        objects = c.interior_objects()
        results = per_index(objects, lambda obj, local: compare_induced(s, obj, side, order, local), rng, workers)
        witnesses.append(
            {
                "subalgebra": s.describe(),
                "side": side,
                "directed": directed,
                "induced": results,
                "ok": directed["directed"],
            }
        )
        logger.info("induction through %s on the %s: %d objects", s.name, side, len(results))
    passed = all(w["ok"] for w in witnesses)
    ambient = next(iter(subalgebras.values())).ambient
    return Certificate(
        claim="borel_induction",
        target=ambient.kind,
        order={"base": order_base},
        input_digest=digest,
        header=ambient.header(),
        witnesses=witnesses,
        notes=["strong: simples induce to standards; exactness is read off the triangular decomposition"],
        verdict=Verdict.PASS.value if passed else Verdict.FAIL.value,
    )


def projective_dimension_vectors(s: SubalgebraEmbedding, c: WindowedCategory) -> Dict[str, object]:
    """Left projectives of the band subalgebra against the first-order left standard modules of c."""
    order = Order("first", c, tilde_refinement=False)
    mismatches = []
    for obj in c.interior_objects():
        own = projective_module(s.sub, obj).dimension_vector()
        expected = standard_module(c, "left", order, obj).dimension_vector()
        if own != expected:
            mismatches.append({"object": render_object(obj), "projective": own, "standard": expected})
    return {"ok": not mismatches, "mismatches": mismatches}
