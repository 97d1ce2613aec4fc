"""Group gradings on the queer Lie and Jordan superalgebras Q(n).

Exact arithmetic throughout: rationals or prime fields GF(p) carrying the
roots of unity a computation needs.
"""

from .abelgroup import AbelianGroup, GroupElement, GroupHom, adjoin_square_root, square_roots
from .exactfield import QQ, Field, Matrix, provision_field
from .grading import Grading, verify_algebra_grading
from .matgrad import EvenPartGrading, classify_type, fine_catalog
from .qgrad import SuperGrading, extend_to_Q, fine_on_Q

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "GroupElement",
    "GroupHom",
    "adjoin_square_root",
    "square_roots",
    "QQ",
    "Field",
    "Matrix",
    "provision_field",
    "Grading",
    "verify_algebra_grading",
    "EvenPartGrading",
    "classify_type",
    "fine_catalog",
    "SuperGrading",
    "extend_to_Q",
    "fine_on_Q",
]
