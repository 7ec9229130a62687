import os
import random
import unittest
from ddt import ddt, data, unpack
from src.algebra.extensions import tilde_extension
from src.algebra.filtration import radical_filtration
from src.algebra.paths import compute_basis
from src.envelope.category import build_C
from src.envelope.dual import build_D
from src.envelope.projectives import injective, projective
from src.envelope.window import Window
from src.linalg.matrix import EchelonBasis
from src.models.models import AlgebraPresentation, Verdict
from src.module.module import radical_layers, render_object
from src.models.base_errors import BoundaryTruncated, NoIsomorphism, PreconditionError, WindowTooSmall
from src.qh.certify import (
    SECOND_ORDER_ON_D,
    certify_quasi_hereditary,
    check_costandard_shift,
    costandard_shift_certificate,
    dual_extension_certificate,
)
from src.qh.filtration import delta_filtration, exhaustive_filtrations, verify_filtration_witness
from src.qh.layout import rhombal_layout
from src.qh.order import Order
from src.qh.standard import check_standard, costandard_module, standard_module
from src.qh.subquotient import subquotient_recovery
from src.utils.utils import load_model

CORPUS = os.path.join(os.path.dirname(__file__), "..", "..", "corpus")


def _load(name: str):
    return compute_basis(load_model(os.path.join(CORPUS, "algebras", name), AlgebraPresentation))


def _envelope(name: str, half_width: int = None):
    a = _load(name)
    f = radical_filtration(a)
    return build_C(a, f, Window.around(half_width or 4 * f.N, f.N))


def _tilde(name: str):
    a = _load(name)
    t = tilde_extension(a)
    f = t.filtration
    c = build_C(f.ALGEBRA, f, Window.around(4 * f.N, f.N), untilded=t.untilded)
    return a, c, build_D(c)


def _brute_force_layers(m):
    """Layers rad^k M / rad^(k+1) M with rad^(k+1) M spanned by every non-unit acting on rad^k M."""
    field = m.FIELD
    current = {obj: [[field.one if i == k else field.zero for i in range(d)] for k in range(d)] for obj, d in m.dims.items()}
    layers = []
    while any(current.values()):
        image = {obj: EchelonBasis(field, d) for obj, d in m.dims.items()}
        for idx in m.active():
            b = m.algebra.BASIS[idx]
            for vec in current[b.source]:
                image[b.target].add(m.apply(idx, vec))
        layers.append(
            {render_object(obj): len(vecs) - image[obj].rank for obj, vecs in current.items() if len(vecs) > image[obj].rank}
        )
        current = {obj: list(span.rows) for obj, span in image.items()}
    return layers


@ddt
class TestOrder(unittest.TestCase):
    @data(("first", ("1", 1), ("1", 0), True), ("second", ("1", 1), ("1", 0), False), ("second", ("1", -1), ("1", 0), True))
    @unpack
    def test_levels(self, base, x, y, expected):
        # Arrange
        order = Order(base, _envelope("d.json"))

        # Act / Assert
        self.assertEqual(order.greater(x, y), expected)
        self.assertFalse(order.greater(x, x))

    def test_tilde_refinement_on_dual_extension(self):
        # Arrange
        _, c, d = _tilde("k.json")

        # Act
        refined = Order("first", d)
        plain = Order("first", c)

        # Assert
        self.assertTrue(refined.tilde_refinement)
        self.assertFalse(plain.tilde_refinement)
        self.assertTrue(refined.greater(("1", 0), ("1~", 0)))
        self.assertFalse(refined.greater(("1~", 0), ("1", 0)))
        self.assertEqual(refined.minimal([("1", 0), ("1~", 0)]), ("1~", 0))

    def test_unknown_order(self):
        # Act / Assert
        with self.assertRaises(ValueError):
            Order("third", _envelope("k.json"))


@ddt
class TestStandardModules(unittest.TestCase):
    @data(("first", {"(1,-1)": 1, "(1,0)": 1}), ("second", {"(1,0)": 1, "(1,1)": 1}))
    @unpack
    def test_left_standard_of_dual_numbers(self, base, expected):
        # Arrange
        c = _envelope("d.json")
        order = Order(base, c)

        # Act
        delta = standard_module(c, "left", order, ("1", 0))
        result = check_standard(delta, order, ("1", 0))

        # Assert
        self.assertEqual(delta.dimension_vector(), expected)
        self.assertTrue(result["ok"], result)
        self.assertEqual(result["end_dim"], 1)

    @data(("d.json", "first"), ("d.json", "second"), ("a2.json", "first"), ("a2.json", "second"))
    @unpack
    def test_composition_series_match_iterated_radical(self, name, base):
        # Arrange
        c = _envelope(name)
        order = Order(base, c)

        for obj in c.interior_objects():
            delta = standard_module(c, "left", order, obj)

            # Act
            layers = radical_layers(delta)
            expected = _brute_force_layers(delta)

            # Assert
            self.assertEqual(layers, expected, obj)
            factors = {}
            for layer in layers:
                for key, count in layer.items():
                    factors[key] = factors.get(key, 0) + count
            self.assertEqual(factors, delta.dimension_vector())
            self.assertEqual(layers[0], {render_object(obj): 1})

    def test_costandard_is_dual_of_right_standard(self):
        # Arrange
        c = _envelope("d.json")
        order = Order("second", c)

        # Act
        nabla = costandard_module(c, "left", order, ("1", 0))
        right = standard_module(c, "right", order, ("1", 0))

        # Assert
        self.assertEqual(nabla.side, "left")
        self.assertEqual(nabla.dimension_vector(), right.dimension_vector())

    def test_injective_is_dual_of_right_projective(self):
        # Arrange
        c = _envelope("d.json")

        # Act
        i = injective(c, "left", ("1", 0))

        # Assert
        self.assertIs(i.algebra, c)
        self.assertEqual(i.side, "left")
        self.assertEqual(i.dimension_vector(), {"(1,-1)": 1, "(1,0)": 2, "(1,1)": 1})

    def test_projective_at_boundary(self):
        # Arrange
        c = _envelope("d.json")

        # Act / Assert
        with self.assertRaises(BoundaryTruncated):
            projective(c, "left", ("1", c.window.hi))


@ddt
class TestStandardFiltration(unittest.TestCase):
    def test_projective_of_dual_numbers(self):
        # Arrange
        c = _envelope("d.json")
        order = Order("first", c)
        p = projective(c, "left", ("1", 0))

        # Act
        witness = delta_filtration(p, c, order, "left", random.Random(0))
        verified, problems = verify_filtration_witness(witness)

        # Assert
        self.assertTrue(witness.complete)
        self.assertTrue(verified, problems)
        self.assertEqual(witness.multiset(), [("(1,0)", 1), ("(1,1)", 1)])

    @data("d.json", "a2.json")
    def test_exhaustive_search_agrees_with_greedy(self, name):
        # Arrange
        c = _envelope(name)
        order = Order("first", c)
        obj = (c.VERTICES[0], 0)
        p = projective(c, "left", obj)

        # Act
        greedy = delta_filtration(p, c, order, "left", random.Random(1))
        found = exhaustive_filtrations(p, c, order, "left", random.Random(1))

        # Assert
        self.assertEqual(found, [greedy.multiset()])

    def test_incomplete_witness_fails_verification(self):
        # Arrange
        c = _envelope("d.json")
        order = Order("first", c)
        witness = delta_filtration(projective(c, "left", ("1", 0)), c, order, "left", random.Random(0))
        witness.stuck = {"stage": 0}

        # Act
        verified, problems = verify_filtration_witness(witness)

        # Assert
        self.assertFalse(verified)
        self.assertEqual(problems, ["filtration is incomplete"])


@ddt
class TestCertify(unittest.TestCase):
    @data(
        ("k.json", "first", "left"),
        ("k.json", "first", "right"),
        ("k.json", "second", "left"),
        ("k.json", "second", "right"),
        ("d.json", "first", "left"),
        ("d.json", "first", "right"),
        ("d.json", "second", "left"),
        ("d.json", "second", "right"),
        ("n3.json", "first", "left"),
        ("n3.json", "first", "right"),
        ("n3.json", "second", "left"),
        ("n3.json", "second", "right"),
        ("a2.json", "first", "left"),
        ("a2.json", "first", "right"),
        ("a2.json", "second", "left"),
        ("a2.json", "second", "right"),
    )
    @unpack
    def test_envelope_is_quasi_hereditary(self, name, base, side):
        # Arrange
        c = _envelope(name)

        # Act
        certificate = certify_quasi_hereditary(c, Order(base, c), side, random.Random(0), digest="abc")

        # Assert
        self.assertEqual(certificate.verdict, Verdict.PASS.value)
        self.assertEqual(len(certificate.witnesses), len(c.interior_objects()))
        self.assertEqual(certificate.input_digest, "abc")

    def test_results_do_not_depend_on_workers(self):
        # Arrange
        c = _envelope("d.json")
        order = Order("first", c)

        # Act
        serial = certify_quasi_hereditary(c, order, "left", random.Random(3))
        pooled = certify_quasi_hereditary(c, order, "left", random.Random(3), workers=4)

        # Assert
        self.assertEqual(serial.model_dump(), pooled.model_dump())

    @data("k.json", "d.json", "a2.json")
    def test_dual_extension_first_order(self, name):
        # Arrange
        _, _, d = _tilde(name)

        # Act
        certificate = certify_quasi_hereditary(d, Order("first", d), "left", random.Random(0))

        # Assert
        self.assertEqual(certificate.verdict, Verdict.PASS.value)
        self.assertEqual(len(certificate.witnesses), len(d.interior_objects()))
        self.assertEqual(certificate.notes, [])

    @data("k.json", "d.json", "a2.json")
    def test_dual_extension_second_order(self, name):
        # Arrange
        _, _, d = _tilde(name)

        # Act
        certificate = certify_quasi_hereditary(d, Order("second", d), "left", random.Random(0))

        # Assert
        self.assertEqual(certificate.verdict, Verdict.PASS.value)
        self.assertIn(SECOND_ORDER_ON_D, certificate.notes)

    @data(("d.json", 4), ("a2.json", 4), ("k.json", 2))
    @unpack
    def test_window_too_small(self, name, half_width):
        # Arrange
        c = _envelope(name, half_width)

        # Act / Assert
        with self.assertRaises(WindowTooSmall):
            certify_quasi_hereditary(c, Order("first", c), "left", random.Random(0))


@ddt
class TestCostandardShift(unittest.TestCase):
    @data("k.json", "d.json", "n3.json", "a2.json")
    def test_default_shift(self, name):
        # Arrange
        c = _envelope(name)

        # Act
        certificate = costandard_shift_certificate(c, random.Random(0))

        # Assert
        self.assertEqual(certificate.verdict, Verdict.PASS.value)
        self.assertEqual(certificate.order["shift"], c.N - 1)
        self.assertTrue(certificate.witnesses)

    def test_dual_numbers_match(self):
        # Arrange
        c = _envelope("d.json")

        # Act
        result = check_costandard_shift(c, ("1", 0), random.Random(0))

        # Assert
        self.assertEqual(result["shifted"], "(1,1)")
        self.assertEqual(result["dimension_vector"], {"(1,0)": 1, "(1,1)": 1})

    def test_wrong_shift_has_no_isomorphism(self):
        # Arrange
        c = _envelope("d.json")

        # Act / Assert
        with self.assertRaises(NoIsomorphism):
            check_costandard_shift(c, ("1", 0), random.Random(0), shift=c.N)


@ddt
class TestDualExtension(unittest.TestCase):
    @data("k.json", "a2.json")
    def test_standard_of_dual_extension_splits(self, name):
        # Arrange
        _, c, d = _tilde(name)

        # Act
        certificate = dual_extension_certificate(c, d, random.Random(0))

        # Assert
        self.assertEqual(certificate.verdict, Verdict.PASS.value)
        self.assertEqual(len(certificate.witnesses), len(d.interior_objects()))
        self.assertTrue(all(w["additive"] for w in certificate.witnesses))
        self.assertTrue(any("~" in w["object"] for w in certificate.witnesses))

    def test_requires_dual_extension(self):
        # Arrange
        _, c, _ = _tilde("k.json")

        # Act / Assert
        with self.assertRaises(PreconditionError):
            dual_extension_certificate(c, c, random.Random(0))

    @data(("k.json", 1), ("d.json", 2), ("a2.json", 3))
    @unpack
    def test_subquotient_recovers_algebra(self, name, dim):
        # Arrange
        a, _, d = _tilde(name)

        # Act
        quotient, certificate = subquotient_recovery(a, d, 0, "abc")

        # Assert
        self.assertEqual(certificate.verdict, Verdict.PASS.value)
        self.assertEqual(quotient.DIM, dim)
        self.assertIsNone(certificate.witnesses[0]["failed_stage"])

    def test_subquotient_needs_dual_extension(self):
        # Arrange
        a, c, _ = _tilde("k.json")

        # Act / Assert
        with self.assertRaises(PreconditionError):
            subquotient_recovery(a, c, 0)


class TestLayout(unittest.TestCase):
    def test_envelope_layout(self):
        # Arrange
        c = _envelope("d.json")

        # Act
        layout = rhombal_layout(c, ("1", 0))

        # Assert
        self.assertEqual(list(layout), ["C"])
        self.assertTrue(layout["C"])

    def test_dual_extension_layout_is_side_by_side(self):
        # Arrange
        _, _, d = _tilde("k.json")

        # Act
        layout = rhombal_layout(d, ("1", 0))

        # Assert
        self.assertEqual(list(layout), ["C | C*"])
        self.assertTrue(all(" | " in line for line in layout["C | C*"]))
