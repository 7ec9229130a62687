from enum import Enum


class LinalgErrors(Enum):
    DIMENSION_MISMATCH = 'Right-hand side has length {got}, matrix has {rows} rows'
    NOT_PRIME = 'Field modulus {p} is not prime'
    BAD_SCALAR = 'Cannot parse scalar "{text}"'
    ZERO_DENOMINATOR = 'Zero denominator in scalar "{text}"'


class AlgebraErrors(Enum):
    UNKNOWN_VERTEX = 'Arrow {arrow} uses undeclared vertex {vertex}'
    DUPLICATE_NAME = 'Name {name} is declared twice'
    UNKNOWN_ARROW = 'Relation uses undeclared arrow {arrow}'
    EMPTY_PATH = 'Relation terms must contain at least one arrow'
    NOT_A_PATH = 'Arrows {path} do not compose to a path'
    NOT_PARALLEL = 'Relation {index} mixes paths with different endpoints'
    NON_HOMOGENEOUS = 'Relation {index} mixes path lengths {lengths}'
    NOT_STABILIZED = 'New basis elements still appear at degree cap {cap}'
    NON_ADMISSIBLE = 'Relation {index} involves a path of length {length} < 2'
    NON_SPLIT = 'A/I1 has dimension {dim} for {vertices} vertices; simples are not split'
    UNKNOWN_LABEL = 'Unknown basis label {label}'


class FiltrationErrors(Enum):
    NOT_DESCENDING = 'Filtration layers must descend strictly from A to 0 (layer {index})'
    NOT_AN_IDEAL = 'Layer I_{index} is not closed under {side} multiplication'
    NOT_MULTIPLICATIVE = 'I_{i} * I_{j} is not contained in I_{target}'
    LAYER_NOT_SEMISIMPLE = 'I_1 does not annihilate layer {index} on the {side}'
    NOT_GRADED = 'Algebra is not positively graded: {reason}'
    MISMATCH = 'The active filtration differs from the grading filtration at layer {index}'
    BAD_FILE = 'Filtration file {path} could not be read: {reason}'
    FILE_WITH_TILDE = 'A filtration file cannot be transported to the tilde extension'


class EnvelopeErrors(Enum):
    WINDOW_TOO_SMALL = 'Window [{lo}, {hi}] is too small for N = {N}; need hi - lo >= {need}'
    BOUNDARY = 'Object {obj} is not interior to the window [{lo}, {hi}] with margin {margin}'
    INEXACT = 'Component {element} of a product leaves slot {slot}'
    FORM_DEGENERATE = 'Form is degenerate on the slot pair {pair}'
    PAIRING = 'Pairing condition fails at j = {index}'
    NOT_TRIVIAL_EXTENSION = 'Category {name} is not a windowed trivial extension'


class ModuleErrors(Enum):
    NO_ISOMORPHISM = 'No isomorphism between {left} and {right}'
    COMPARISON = 'Induced module {induced} does not match the standard module {standard}'
    DEGENERATE = 'Form is degenerate; radical vector {vector}'
    NOT_SYMMETRIC = 'Form is not symmetric on the pair ({u}, {v})'


class BorelErrors(Enum):
    NOT_CLOSED = 'Subalgebra {name} is not closed: {u} * {v} leaves the image'


class CliErrors(Enum):
    INPUT_NOT_FOUND = 'Input file {path} not found'
    BAD_INPUT = 'Input file {path} is not a valid presentation: {reason}'
    BAD_TARGET = 'Command {command} does not accept target {target}'
    UNKNOWN_EXAMPLE = 'No golden example named {name}'
