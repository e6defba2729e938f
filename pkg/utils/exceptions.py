"""
Custom exception classes for the coprimary filtration toolkit
Provides specific exception types for different error scenarios
"""


class CoprimeError(Exception):
    """Base exception class for all toolkit errors"""

    # CLI exit code when this error escapes a command
    exit_code = 2

    def __init__(self, message: str, details: dict = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self):
        """Convert exception to dictionary for logging/JSON error objects"""
        return {
            'error_type': self.__class__.__name__,
            'message': self.message,
            'details': self.details
        }


# Arithmetic Exceptions
class ArithmeticDomainError(CoprimeError):
    """Raised when inputs mix coefficient domains or leave an operation's domain"""
    pass


# Poset Exceptions
class PosetError(CoprimeError):
    """Base class for specialization-poset errors"""
    pass


class MixedRingError(PosetError):
    """Raised when primes from different rings are combined"""
    pass


class CapExceededError(PosetError):
    """Raised when linear-extension enumeration exceeds its cap"""
    pass


class CyclicOrderError(PosetError):
    """Raised when a strict order relation is reflexive, intransitive or cyclic"""
    pass


# Module Exceptions
class ModuleError(CoprimeError):
    """Base class for module backend errors"""
    pass


class UnsupportedBackendError(ModuleError):
    """Raised when an operation is not available for a ring backend"""
    pass


class PreconditionError(ModuleError):
    """Raised when an operation's mathematical precondition fails"""
    pass


class AmbientMismatchError(ModuleError):
    """Raised when submodules of different ambient modules are combined"""
    pass


class ZeroModuleError(ModuleError):
    """Raised when an operation requires a nonzero module"""
    pass


class ModuleTooLargeError(ModuleError):
    """Raised when the brute-force oracle is asked to enumerate too much"""
    pass


# Filtration Exceptions
class FiltrationError(CoprimeError):
    """Base class for filtration construction errors"""
    pass


class InvalidOrderError(FiltrationError):
    """Raised when an order is not a linear extension of Ass(M)"""
    pass


class MalformedChainError(FiltrationError):
    """Raised when a candidate chain is not a chain of submodules of M"""
    pass


# Equivalence Exceptions
class EquivalenceError(CoprimeError):
    """Base class for equivalence and swap errors"""
    pass


class SwapNotApplicableError(EquivalenceError):
    """Raised when the closure condition for an adjacent swap fails"""
    pass


class DifferentModulesError(EquivalenceError):
    """Raised when filtrations of different modules are compared"""
    pass


class TooManyExtensionsError(EquivalenceError):
    """Raised when an extension survey would enumerate too many orders"""
    pass


# Decomposition Exceptions
class DecompositionError(CoprimeError):
    """Base class for direct-sum decomposition errors"""
    exit_code = 3


class ClosuresIntersectError(DecompositionError):
    """Raised when two associated primes are not comaximal"""
    pass


# Verification Exceptions
class VerificationFailedError(CoprimeError):
    """Raised when a certificate that must hold does not"""
    exit_code = 3


# Parse Exceptions
class ParseError(CoprimeError):
    """Base class for problem-file errors; carries a source location"""

    exit_code = 1

    def __init__(self, message: str, line: int = 0, column: int = 0, details: dict = None):
        details = dict(details or {})
        details.update({'line': line, 'column': column})
        super().__init__(f"{line}:{column}: {message}", details)
        self.line = line
        self.column = column


class LexicalError(ParseError):
    """Raised when the input contains a character that starts no token"""
    pass


class SyntacticError(ParseError):
    """Raised when tokens do not match the grammar"""
    pass


class SemanticError(ParseError):
    """Raised when a well-formed declaration makes no mathematical sense"""
    pass


# Configuration Exceptions
class ConfigurationError(CoprimeError):
    """Base class for configuration errors"""
    pass


class InvalidConfigurationError(ConfigurationError):
    """Raised when configuration is invalid"""
    pass


def handle_exception(exception: Exception, logger=None, reported: bool = False):
    """
    Centralized exception handler that logs and formats exceptions

    Args:
        exception: The exception to handle
        logger: Logger instance (optional)
        reported: The caller shows the error dict to the user itself, so the
            console handler skips the log record

    Returns:
        Dictionary with error information
    """
    if isinstance(exception, CoprimeError):
        error_dict = exception.to_dict()
    else:
        error_dict = {
            'error_type': exception.__class__.__name__,
            'message': str(exception),
            'details': {}
        }

    if logger:
        logger.error(
            f"{error_dict['error_type']}: {error_dict['message']}",
            exc_info=not isinstance(exception, CoprimeError),
            extra={'extra_data': error_dict, 'reported': reported}
        )

    return error_dict


def exit_code_for(exception: Exception) -> int:
    """Map an exception to the CLI exit code; unknown failures count as unsupported input"""
    return getattr(exception, 'exit_code', 2)
