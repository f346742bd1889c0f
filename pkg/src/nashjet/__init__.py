"""Higher-order Jacobian matrices, higher Nash blowup local algebras and their
graded derivations, computed exactly over the rationals."""

__version__ = "0.1.0"

from .poly import (  # noqa: E402
    MultiIndex,
    ParseError,
    Polynomial,
    WeightSystem,
    euler_apply,
    hasse_derivative,
    is_weighted_homogeneous,
    parse_polynomial,
    partial_derivative,
    weighted_degree,
)
from .jacobian import (  # noqa: E402
    JacobianMatrix,
    MinorIdeal,
    MinorLimitError,
    build_jacobian,
    index_sets,
    maximal_minors,
    minor_degree_table,
)
from .groebner import (  # noqa: E402
    GradedQuotient,
    MonomialOrder,
    graded_dimensions,
    groebner_basis,
    ideal_contains,
    ideal_equal,
    normal_form,
    quotient_basis,
)
from .derivations import (  # noqa: E402
    derivation_space,
    full_derivation_dims,
    negative_derivation_scan,
)
from .verify import SingularityInstance, Verdict, run_catalog, verify_instance  # noqa: E402
