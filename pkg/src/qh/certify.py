import logging
import random
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Tuple
from src.envelope.category import Obj, WindowedCategory
from src.envelope.projectives import projective
from src.module.homs import find_isomorphism, intertwines, render_morphism
from src.module.module import ModuleRep, render_object
from src.models.models import Certificate, Verdict
from src.models.m_errors import EnvelopeErrors, ModuleErrors
from src.models.base_errors import NoIsomorphism, PreconditionError, WindowTooSmall
from src.qh.filtration import check_projective_filtration, delta_filtration, verify_filtration_witness
from src.qh.order import Order
from src.qh.standard import check_standard, costandard_module, standard_module, trace_above

logger = logging.getLogger(__name__)

SECOND_ORDER_ON_D = "second order on D is the exact opposite of the extended first order"


def _interior(c: WindowedCategory) -> List[Obj]:
    c.window.require_module_scale()
    objects = c.interior_objects()
    if not objects:
        w = c.window
        raise WindowTooSmall(EnvelopeErrors.WINDOW_TOO_SMALL.value.format(lo=w.lo, hi=w.hi, N=w.N, need=w.module_span))
    return objects


def per_index(objects: List[Obj], check, rng: random.Random, workers: int = 1) -> List[dict]:
    """Run check(obj, rng) on every object; each index gets its own seeded generator so results do not depend on workers."""
    base = rng.getrandbits(64)
    jobs = [(obj, random.Random(base + k)) for k, obj in enumerate(objects)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda job: check(*job), jobs))
    return [check(obj, local) for obj, local in jobs]


def certify_index(c: WindowedCategory, order: Order, side: str, obj: Obj, rng: random.Random) -> dict:
    delta = standard_module(c, side, order, obj)
    standard = check_standard(delta, order, obj)
    witness = delta_filtration(projective(c, side, obj), c, order, side, rng)
    verified, problems = verify_filtration_witness(witness)
    shape = check_projective_filtration(witness, obj)
    ok = (
        standard["ok"]
        and witness.complete
        and verified
        and shape["top"]
        and shape["multiplicity"] == 1
        and shape["others_above"]
    )
    logger.debug("%s at %s: %s", c.name, render_object(obj), "ok" if ok else "failed")
    return {
        "object": render_object(obj),
        "standard": standard,
        "filtration": witness.to_dict(),
        "verified": verified,
        "problems": problems,
        "shape": shape,
        "ok": ok,
    }


def certify_quasi_hereditary(
    c: WindowedCategory, order: Order, side: str, rng: random.Random, workers: int = 1, digest: str = ""
) -> Certificate:
    """
    At every interior object: the standard module has scalar endomorphisms and
    its other factors lie below, and the projective has a verified standard
    filtration with the standard module on top once and all other factors above.
    """
    objects = _interior(c)
    witnesses = per_index(objects, lambda obj, local: certify_index(c, order, side, obj, local), rng, workers)
    notes = []
    if c.kind == "D" and order.base == "second":
        notes.append(SECOND_ORDER_ON_D)
    passed = all(w["ok"] for w in witnesses)
    logger.info("quasi-heredity of %s (%s, %s): %s", c.name, order.base, side, passed)
    return Certificate(
        claim="quasi_hereditary",
        target=c.kind,
        order={**order.spec(), "side": side},
        input_digest=digest,
        header=c.header(),
        witnesses=witnesses,
        notes=notes,
        verdict=Verdict.PASS.value if passed else Verdict.FAIL.value,
    )


def check_costandard_shift(c: WindowedCategory, obj: Obj, rng: random.Random, shift: Optional[int] = None) -> dict:
    """
    Explicit isomorphism between the second-order left costandard module at
    (x, i) and the first-order left standard module at (x, i + shift).

    Raises:
        NoIsomorphism: when no isomorphism is found or it fails to intertwine.
    """
    shift = c.N - 1 if shift is None else shift
    nabla = costandard_module(c, "left", Order("second", c), obj)
    moved = (obj[0], obj[1] + shift)
    delta = standard_module(c, "left", Order("first", c), moved, interior=False)
    phi = find_isomorphism(nabla, delta, rng)
    if phi is None or not intertwines(nabla, delta, phi):
        raise NoIsomorphism(
            ModuleErrors.NO_ISOMORPHISM.value.format(left=nabla.name, right=delta.name),
            {"left": nabla.dimension_vector(), "right": delta.dimension_vector()},
        )
    return {
        "object": render_object(obj),
        "shifted": render_object(moved),
        "shift": shift,
        "dimension_vector": delta.dimension_vector(),
        "isomorphism": render_morphism(phi),
    }


def costandard_shift_certificate(
    c: WindowedCategory, rng: random.Random, shift: Optional[int] = None, workers: int = 1, digest: str = ""
) -> Certificate:
    objects = [obj for obj in _interior(c) if c.window.safe(obj[1] + (c.N - 1 if shift is None else shift))]
    witnesses = per_index(objects, lambda obj, local: check_costandard_shift(c, obj, local, shift), rng, workers)
    applied = c.N - 1 if shift is None else shift
    return Certificate(
        claim="costandard_standard_shift",
        target=c.kind,
        order={"left": "second", "right": "first", "shift": applied},
        input_digest=digest,
        header=c.header(),
        witnesses=witnesses,
        notes=[f"costandard at (x, i) matched with standard at (x, i + {applied})"],
    )


def _dual_seeds(p: ModuleRep, obj: Obj) -> List[Tuple[Obj, list]]:
    algebra = p.algebra
    field = p.FIELD
    seeds = []
    for idx in algebra.out_of(obj):
        b = algebra.BASIS[idx]
        if b.origin and b.origin[0] == "D":
            vec = [field.zero] * p.dims[b.target]
            vec[algebra.position(idx)] = field.one
            seeds.append((b.target, vec))
    return seeds


def verify_dual_extension(c: WindowedCategory, d: WindowedCategory, obj: Obj, rng: random.Random) -> dict:
    """
    The first-order right standard module of D at (k, i) is an extension: the
    image U of the dual part is the second-order right costandard module of C
    at (k, i - N + 1) and the quotient by U is the first-order right standard
    module of C at (k, i).

    Raises:
        NoIsomorphism: naming the part that does not match.
    """
    if d.kind != "D":
        raise PreconditionError(EnvelopeErrors.NOT_TRIVIAL_EXTENSION.value.format(name=d.name))
    p = projective(d, "right", obj)
    delta_d, projections = p.quotient(trace_above(p, Order("first", d), obj), f"Delta^1,r_D{render_object(obj)}")
    images = []
    for y, vec in _dual_seeds(p, obj):
        if y in projections:
            images.append((y, projections[y].apply(vec)))
    u_spans = delta_d.generated(images)
    u, _ = delta_d.submodule(u_spans, "U")
    q, _ = delta_d.quotient(u_spans, "Q")
    restriction = {k: k for k in range(c.DIM)}
    c_op = c.opposite()
    u_c, q_c = u.restrict(c_op, restriction), q.restrict(c_op, restriction)
    delta_c = standard_module(c, "right", Order("first", c, tilde_refinement=False), obj)
    low = (obj[0], obj[1] - c.N + 1)
    nabla_c = costandard_module(c, "right", Order("second", c, tilde_refinement=False), low, interior=False)
    quotient_iso = find_isomorphism(q_c, delta_c, rng)
    if quotient_iso is None or not intertwines(q_c, delta_c, quotient_iso):
        raise NoIsomorphism(
            ModuleErrors.NO_ISOMORPHISM.value.format(left=q.name, right=delta_c.name),
            {"left": q_c.dimension_vector(), "right": delta_c.dimension_vector()},
        )
    sub_iso = find_isomorphism(u_c, nabla_c, rng)
    if sub_iso is None or not intertwines(u_c, nabla_c, sub_iso):
        raise NoIsomorphism(
            ModuleErrors.NO_ISOMORPHISM.value.format(left=u.name, right=nabla_c.name),
            {"left": u_c.dimension_vector(), "right": nabla_c.dimension_vector()},
        )
    additive = delta_d.DIM == delta_c.DIM + nabla_c.DIM
    return {
        "object": render_object(obj),
        "delta_D": delta_d.dimension_vector(),
        "quotient": {"module": delta_c.name, "isomorphism": render_morphism(quotient_iso)},
        "submodule": {"module": nabla_c.name, "isomorphism": render_morphism(sub_iso)},
        "dims": {"delta_D": delta_d.DIM, "delta_C": delta_c.DIM, "nabla_C": nabla_c.DIM},
        "additive": additive,
        "ok": additive,
    }


def dual_extension_certificate(
    c: WindowedCategory, d: WindowedCategory, rng: random.Random, workers: int = 1, digest: str = ""
) -> Certificate:
    objects = _interior(d)
    witnesses = per_index(objects, lambda obj, local: verify_dual_extension(c, d, obj, local), rng, workers)
    passed = all(w["ok"] for w in witnesses)
    return Certificate(
        claim="dual_extension",
        target=d.kind,
        order={"base": "first", "side": "right"},
        input_digest=digest,
        header=d.header(),
        witnesses=witnesses,
        verdict=Verdict.PASS.value if passed else Verdict.FAIL.value,
    )
