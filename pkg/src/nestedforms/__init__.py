"""Binary quadratic forms of nested discriminants D and D*f^2."""

from .arith import is_discriminant, is_fundamental, is_odd_prime, is_perfect_square, kronecker, xgcd
from .errors import FormatError, PreconditionError
from .forms import IDENTITY, S, T, Form, IntMatrix2, T_pow, act, content, discriminant, is_primitive
from .nesting import (
    DescentResult,
    FiberClass,
    LiftIndex,
    decompose_det_f,
    descend,
    fiber,
    integral_conjugate,
    lift_g,
    normalize_for_descent,
    primitive_lift_indices,
    semi_equivalent,
    to_principal_lift,
)
from .reduction import ClassSet, automorphisms, class_set, equivalent, normalize_coprime, reduce

__version__ = "0.1.0"
