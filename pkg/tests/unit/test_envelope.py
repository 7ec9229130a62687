import os
import random
import unittest
from ddt import ddt, data, unpack
from src.algebra.extensions import tilde_extension
from src.algebra.filtration import radical_filtration
from src.algebra.forms import TraceForm, check_symmetric, gram_matrix
from src.algebra.paths import compute_basis
from src.envelope.category import build_C, dump_category, slot_cutoff
from src.envelope.checks import band_violations, shift_check, structural_suite
from src.envelope.dual import build_D, check_dual_action, restricted_dual
from src.envelope.presentation import compare_golden, quiver_presentation
from src.envelope.symmetric import form_on_C, form_on_D
from src.envelope.window import Window
from src.models.models import AlgebraPresentation, GoldenPresentation
from src.models.base_errors import BoundaryTruncated, PairingFailed, WindowTooSmall
from src.utils.utils import load_model

CORPUS = os.path.join(os.path.dirname(__file__), "..", "..", "corpus")


def _load(name: str):
    return compute_basis(load_model(os.path.join(CORPUS, "algebras", name), AlgebraPresentation))


def _envelope(name: str, half_width: int = None):
    a = _load(name)
    f = radical_filtration(a)
    window = Window.around(half_width or 4 * f.N, f.N)
    return a, f, build_C(a, f, window)


def _tilde_envelope(name: str):
    t = tilde_extension(_load(name))
    f = t.filtration
    return build_C(f.ALGEBRA, f, Window.around(4 * f.N, f.N), untilded=t.untilded)


@ddt
class TestWindow(unittest.TestCase):
    def test_margin_and_interior(self):
        # Arrange
        w = Window.around(8, 2)

        # Act / Assert
        self.assertEqual(w.margin, 4)
        self.assertEqual(w.interior_levels(), list(range(-4, 5)))
        self.assertTrue(w.safe(-7))
        self.assertFalse(w.safe(-8))

    def test_module_scale(self):
        # Arrange
        w = Window(lo=-3, hi=3, N=2)

        # Act / Assert
        with self.assertRaises(WindowTooSmall):
            w.require_module_scale()

    @data(1, 2, 3)
    def test_half_width_two_n_is_too_small(self, n):
        # Arrange
        w = Window.around(2 * n, n)

        # Act / Assert
        with self.assertRaises(WindowTooSmall):
            w.require_module_scale()

    @data(1, 2, 3)
    def test_half_width_two_n_plus_one_is_enough(self, n):
        # Arrange
        w = Window.around(2 * n + 1, n)

        # Act
        w.require_module_scale()

        # Assert
        self.assertEqual(w.interior_levels(), [-1, 0, 1])

    def test_boundary(self):
        # Arrange
        w = Window.around(8, 2)

        # Act / Assert
        with self.assertRaises(BoundaryTruncated):
            w.require_interior(("1", 5))
        w.require_interior(("1", 4))


@ddt
class TestBuildC(unittest.TestCase):
    @data(((0, 1), (1, 2)), ((0, 0), (0, 2)), ((1, 0), (0, 1)), ((0, 2), (0, 0)), ((2, 0), (0, 0)))
    @unpack
    def test_slot_cutoff(self, slot, expected):
        # Arrange
        _, f, _ = _envelope("d.json")

        # Act / Assert
        self.assertEqual(slot_cutoff(f, *slot), expected)

    @data(("k.json", 9), ("d.json", 66), ("a2.json", 99))
    @unpack
    def test_dimensions(self, name, dim):
        # Arrange
        _, _, c = _envelope(name)

        # Act / Assert
        self.assertEqual(c.DIM, dim)
        self.assertEqual(dump_category(c)["dim"], dim)

    def test_hom_blocks_of_dual_numbers(self):
        # Arrange
        _, _, c = _envelope("d.json")

        # Act
        up = [c.BASIS[idx].label for idx in c.hom(("1", 0), ("1", 1))]
        down = [c.BASIS[idx].label for idx in c.hom(("1", 1), ("1", 0))]

        # Assert
        self.assertEqual(up, ["x[0>1]"])
        self.assertEqual(down, ["e1[1>0]"])
        self.assertEqual(c.hom(("1", 0), ("1", 2)), [])

    @data(("e1[1>0]", "x[0>1]", "x[0>0]"), ("x[0>1]", "e1[1>0]", "x[1>1]"), ("e1[1>0]", "e1[2>1]", None))
    @unpack
    def test_composition_reduces_into_slot(self, left, right, expected):
        # Arrange
        _, _, c = _envelope("d.json")

        # Act
        product = c.multiply(c.index(left), c.index(right))

        # Assert
        if expected is None:
            self.assertEqual(product, {})
        else:
            self.assertEqual(product, {c.index(expected): c.FIELD.one})

    @data("k.json", "d.json", "n3.json", "a2.json")
    def test_band_and_shift(self, name):
        # Arrange
        _, _, c = _envelope(name)

        # Act / Assert
        self.assertEqual(band_violations(c), [])
        self.assertTrue(shift_check(c))

    @data("d.json", "a2.json")
    def test_structural_suite_small_window(self, name):
        # Arrange
        a = _load(name)
        f = radical_filtration(a)
        c = build_C(a, f, Window.around(2 * f.N, f.N))

        # Act
        suite = structural_suite(c, 10000, random.Random(0))

        # Assert
        self.assertTrue(all(suite.values()), suite)


@ddt
class TestDualAndForms(unittest.TestCase):
    def test_dual_action(self):
        # Arrange
        _, _, c = _envelope("a2.json", 4)

        # Act
        failures = check_dual_action(c, restricted_dual(c), 10000, random.Random(0))

        # Assert
        self.assertEqual(failures, [])

    def test_build_D_doubles_dimension(self):
        # Arrange
        _, _, c = _envelope("d.json")

        # Act
        d = build_D(c)

        # Assert
        self.assertEqual(d.DIM, 2 * c.DIM)
        self.assertEqual(d.kind, "D")
        self.assertEqual(len(d.form), len(c.OBJECTS))

    @data("d.json", "n3.json")
    def test_form_on_C_nondegenerate(self, name):
        # Arrange
        a, _, c = _envelope(name)
        t = check_symmetric(a, a.functional(load_model(os.path.join(CORPUS, "algebras", name), AlgebraPresentation).trace))

        # Act
        result = form_on_C(c, t, 2000, random.Random(0))

        # Assert
        self.assertGreater(result["slot_pairs"], 0)
        self.assertIsNotNone(c.form)

    def test_form_on_C_pairing_fails_without_symmetric_algebra(self):
        # Arrange
        a, f, c = _envelope("a2.json")
        functional = {a.index("e1"): a.FIELD.one, a.index("e2"): a.FIELD.one}
        unit_form = TraceForm(a, functional, gram_matrix(a, functional))

        # Act / Assert
        with self.assertRaises(PairingFailed):
            form_on_C(c, unit_form, 2000, random.Random(0))

    @data("k.json", "d.json")
    def test_form_on_D(self, name):
        # Arrange
        d = build_D(_tilde_envelope(name))

        # Act
        result = form_on_D(d, 2000, random.Random(0))

        # Assert
        self.assertGreater(result["slot_pairs"], 0)


class TestPresentation(unittest.TestCase):
    def test_dual_numbers_generators(self):
        # Arrange
        _, _, c = _envelope("d.json")

        # Act
        presentation = quiver_presentation(c)
        labels = {c.BASIS[g].label for g in presentation.generators}

        # Assert
        self.assertIn("x[0>1]", labels)
        self.assertIn("e1[1>0]", labels)
        self.assertNotIn("x[0>0]", labels)

    def test_golden_a2(self):
        # Arrange
        golden = load_model(os.path.join(CORPUS, "golden", "a2.json"), GoldenPresentation)
        c = _tilde_envelope("k.json")
        d = build_D(c)

        # Act
        result = compare_golden(c, d, golden)

        # Assert
        self.assertEqual(result["mismatches"], [])
        self.assertTrue(result["generators"])
        self.assertTrue(result["relations"])
        self.assertTrue(result["dotted_products_vanish"])
        self.assertTrue(result["dotted_generate_dual"])
