"""
Exception hierarchy for the HPPK toolkit
"""


class HppkError(Exception):
    """Base class for every error raised by this package"""


class NotInvertible(HppkError, ArithmeticError):
    """Raised when an element has no inverse modulo the given modulus"""


class SeedLength(HppkError, ValueError):
    """Raised when a DRBG seed is not exactly 32 bytes"""


class ParameterError(HppkError, ValueError):
    """Raised for inconsistent or unsupported parameter sets"""


class DecapsulationFailure(HppkError):
    """Raised when a ciphertext segment has no recoverable root"""


class MalformedSignature(HppkError, ValueError):
    """Raised when signature components violate their encoding bounds"""


class LengthMismatch(HppkError, ValueError):
    """Raised when encoded bytes do not match the expected layout length"""


class RangeViolation(HppkError, ValueError):
    """Raised when a decoded element is outside its modulus bound"""


class ParseError(HppkError, ValueError):
    """Raised for malformed KAT or artifact text; carries the 1-based line number"""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class NotFound(HppkError, LookupError):
    """Raised when an exhaustive search finds no consistent candidate"""


class AttackRefused(HppkError, ValueError):
    """Raised when an attack is asked to run outside toy-scale limits"""
