"""Exact computation in graded division algebras.

Strict Bruhat normal forms, the homogeneous Dieudonne determinant, reduced
norms on the degree-0 part, closed-form reduced Whitehead groups SK and
SK^h, and brute-force finite-group oracles cross-checking every closed
form.  All arithmetic is exact.
"""

from .algebra import (
    AbelianizedUnit,
    AlgebraElement,
    GradedDivisionAlgebra,
    HomogeneousUnit,
    make_algebra,
)
from .bruhat import BruhatForm, bruhat_decompose, is_strict
from .dieudonne import check_diagram, delta_monomial, det0, det_E, in_kernel
from .gmatrix import (
    GradedMatrix,
    MonomialMatrix,
    ShiftedMatrixAlgebra,
    normalize_shift,
)
from .grading import (
    INFINITE,
    FiniteAbelianGroup,
    Lattice,
    coset_order,
    exterior_square,
    quotient,
    smith_normal_form,
)
from .oracle import FiniteMatrixGroup, closure, commutator_subgroup_Sh, sk_oracle
from .scalars import CyclotomicField, PrimeField, RootsOfUnity, make_field, mu, order_of_unit
from .sk import (
    GroupDescription,
    eta,
    in_Sh1,
    kernel_group,
    nrd_S,
    nrd_S0,
    sk_E,
    sk_h_shifted,
    sk_h_unshifted,
    xi,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianizedUnit",
    "AlgebraElement",
    "BruhatForm",
    "CyclotomicField",
    "FiniteAbelianGroup",
    "FiniteMatrixGroup",
    "GradedDivisionAlgebra",
    "GradedMatrix",
    "GroupDescription",
    "HomogeneousUnit",
    "INFINITE",
    "Lattice",
    "MonomialMatrix",
    "PrimeField",
    "RootsOfUnity",
    "ShiftedMatrixAlgebra",
    "bruhat_decompose",
    "check_diagram",
    "closure",
    "commutator_subgroup_Sh",
    "coset_order",
    "delta_monomial",
    "det0",
    "det_E",
    "eta",
    "exterior_square",
    "in_Sh1",
    "in_kernel",
    "is_strict",
    "kernel_group",
    "make_algebra",
    "make_field",
    "mu",
    "normalize_shift",
    "nrd_S",
    "nrd_S0",
    "order_of_unit",
    "quotient",
    "sk_E",
    "sk_h_shifted",
    "sk_h_unshifted",
    "sk_oracle",
    "smith_normal_form",
    "xi",
]
