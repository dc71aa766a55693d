"""Exception types shared across the package."""


class ReflectRingsError(Exception):
    """Base class for all errors raised by this package."""


class BadInput(ReflectRingsError):
    """Input violates a documented precondition."""


class ZeroDiscriminant(BadInput):
    """A form with discriminant zero where a nondegenerate one is required."""


class ZeroInvariant(BadInput):
    """The quadratic invariant a(b^2 - 4ac) vanishes."""


class BadPrimes(BadInput):
    """Prime arguments do not satisfy the required congruences."""


class SingularResolvent(BadInput):
    """A monic cubic with repeated roots where a separable one is required."""


class MultipleRoots(BadInput):
    """A polynomial has a repeated root where distinct roots are required."""


class NotARing(BadInput):
    """Structure constants fail the commutative unital ring axioms."""


class BadParams(BadInput):
    """Parameter combination outside the supported range or congruence."""


class BadDiscriminant(BadInput):
    """Not a valid discriminant for the requested construction."""
