"""Exact twisted doubles of cocommutative Hopf algebras.

Construction of the crossed product H* #_sigma H from a normalized
3-cocycle, machine verification of every quasi-Hopf / quasitriangular /
integral / modular identity it satisfies, and enumeration of the ribbon
elements u (zeta beta # 1) indexed by the square roots of the modular
function among the characters.
"""

__version__ = "0.1.0"

from .cocycle import (
    Cocycle3,
    builtin_cyclic_cocycle,
    cocycle_from_spec,
    product_cocycle,
    table_cocycle,
    trivial_cocycle,
    verify_3cocycle,
)
from .domega import (
    DoubleAlgebra,
    build_double,
    export_structure,
    iso_maps,
    modular_elements,
    verify_double,
)
from .groups import GroupTable, cyclic_group, product_of_cyclics, symmetric_group
from .hopf import (
    HopfAlgebra,
    dual_hopf,
    group_algebra,
    grouplikes_of_dual,
    integral_on,
    left_integral,
    modular_mu,
    square_roots,
    verify_hopf_axioms,
)
from .quasihopf import (
    QuasiHopfAlgebra,
    build_dual_twisted,
    drinfeld_twist,
    element_u,
    from_hopf,
    modular_g,
    quasi_cointegral,
    quasi_integral,
    verify_antipode,
    verify_qt,
    verify_quasi_bialgebra,
)
from .ribbon import (
    RibbonResult,
    candidate_to_ribbon,
    canonical_ribbon_check,
    certificates_json,
    is_ribbon,
    ribbon_family,
    verify_ribbon_family,
)
from .scalars import CyclotomicField, PrimeField, RationalField, field_from_descriptor
from .session import SessionSpec
from .tensors import AlgebraOps, LinearMap, MultilinearForm, TensorElement

__all__ = [name for name in dir() if not name.startswith("_")]
