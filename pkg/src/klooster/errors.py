"""Exception taxonomy.

Two families matter to callers: validation errors (a mathematical
precondition on the inputs does not hold) and guard errors (the inputs
are legal but the computation would exceed a feasibility cap).  The CLI
maps them to exit codes 1 and 2.
"""


class KloosterError(Exception):
    """Base class for all library-raised errors."""


class ValidationError(KloosterError):
    """A precondition on the inputs does not hold."""


class GuardError(KloosterError):
    """The requested computation exceeds a built-in feasibility guard."""


# -- validation -------------------------------------------------------------

class NotInvertible(ValidationError):
    """gcd(x, m) > 1, so x has no inverse mod m."""


class EvenModulus(ValidationError):
    """Jacobi symbols are only defined for odd moduli."""


class NonResidue(ValidationError):
    """The argument is not a square modulo the given prime (power)."""


class ZeroInput(ValidationError):
    """The argument is divisible by p where a unit is required."""


class RequiresNAtLeastTwo(ValidationError):
    """The closed form only applies to exponents n >= 2."""


class OutOfTable(ValidationError):
    """Requested limit exceeds the sieve table that was supplied."""


class NotCoprime(ValidationError):
    """The residue class is not coprime to the modulus."""


class IntervalTooLong(ValidationError):
    """Interval length exceeds the modulus it is reduced against."""


class HTooSmall(ValidationError):
    """The differencing shift range is empty (floor(K / p^s) < 1)."""


class InvalidC(ValidationError):
    """The collision exponent c is outside (0, 2^-2^L]."""


class InvalidL(ValidationError):
    """The differencing depth must satisfy l >= 2."""


class NonResidueAtTau(ValidationError):
    """A phase-function argument is not a square at the named offset."""

    def __init__(self, tau, message=None):
        self.tau = tau
        super().__init__(message or f"non-residue argument at offset {tau}")


class NonUnitAtTau(ValidationError):
    """A phase-function argument is divisible by p at the named offset."""

    def __init__(self, tau, message=None):
        self.tau = tau
        super().__init__(message or f"non-unit argument at offset {tau}")


# -- guards -----------------------------------------------------------------

class ModulusTooLarge(GuardError):
    """Modulus exceeds the runtime guard for this evaluation path."""


class LimitTooLarge(GuardError):
    """Sieve limit exceeds the 2^31 table cap."""


class TupleTooLong(GuardError):
    """Subset enumeration over more than 20 coordinates is refused."""


class SearchTooLarge(GuardError):
    """Exhaustive enumeration would exceed the point budget."""


# -- I/O --------------------------------------------------------------------

class CorruptCache(KloosterError):
    """A sieve cache file failed magic/version/length validation."""
