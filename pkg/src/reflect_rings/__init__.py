"""Exact enumeration of integral binary forms and reflection identities."""

from .errors import (
    BadDiscriminant,
    BadInput,
    BadParams,
    BadPrimes,
    MultipleRoots,
    NotARing,
    ReflectRingsError,
    SingularResolvent,
    ZeroDiscriminant,
    ZeroInvariant,
)
from .forms import (
    IDENTITY,
    BinaryForm,
    MonicCubic,
    Unimodular,
    act,
    disc,
    form,
    hessian,
    projective_root_count,
    quartic_resolvent,
    reduce_cubic,
    splitting_type,
    stabilizer_order,
    superdiscriminant,
)
from .cubic import (
    TRACED3,
    CubicClass,
    LocalCondition,
    check_cubic_ON,
    check_disc_reduction,
    enumerate_cubics,
    h,
    h3,
    ring_multiply,
    ring_structure,
    ring_trace,
    shintani_coeffs,
    trace_ideal_in_3Z,
)
from .quad import (
    QuadClass,
    check_quadratic_ON,
    count_q,
    enumerate_quadratics,
    legendre,
    legendre_check,
    qcounts,
)
from .localfourier import (
    CycValue,
    FilteredGroup,
    LevelFunction,
    SUBRING_TYPES,
    SubringParams,
    fixture_ring,
    fourier,
    make_filtered_group,
    ring_disc,
    subring_oracle,
    subring_series,
    traced_subring_count,
)
from .classgroup import (
    ClassGroupData,
    QForm,
    canonical,
    class_group,
    compose,
    cross_check_maps,
    genus_check,
    inverse_class,
    is_fundamental,
    principal_form,
    scholz_check,
    scholz_sweep,
)
from .quartic import (
    SIGN_CONDITIONS,
    QuarterForm,
    QuarticClass,
    SymmetricPair,
    check_BQ,
    count_1211q,
    count_quartics,
    count_supereven,
    count_symmetric_matrices,
    invariants_IJ,
    is_supereven,
    quartic_classes,
    quartic_invariants,
    quarter_classes,
    search_boxes,
    supereven_classes,
    symmetric_matrices,
    two_adic_admissible,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
