"""
Centralized error handling, exit codes and logging setup for slope-diameter
"""
import logging
import os
import sys
import traceback
from typing import Dict, Any, Optional
from datetime import datetime

import structlog

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_ASSERTION = 2


def configure_logging(level: Optional[str] = None, log_file: Optional[str] = None) -> None:
    """Configure stdlib logging plus structlog; logs go to stderr (and optionally a file)"""
    level_name = (level or os.getenv("SLOPE_DIAMETER_LOG_LEVEL", "WARNING")).upper()
    log_file = log_file or os.getenv("SLOPE_DIAMETER_LOG_FILE")

    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))

    logging.basicConfig(
        level=getattr(logging, level_name, logging.WARNING),
        format='%(message)s',
        handlers=handlers,
        force=True
    )

    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.format_exc_info,
            structlog.processors.KeyValueRenderer(key_order=["timestamp", "level", "event"]),
        ],
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )


# stderr logging from the first import on, in every process
configure_logging()


class SlopeDiameterError(Exception):
    """Base exception for slope-diameter"""
    default_code = "UNKNOWN"

    def __init__(self, message: str, error_code: Optional[str] = None, details: Dict = None):
        self.message = message
        self.error_code = error_code or self.default_code
        self.details = details or {}
        self.timestamp = datetime.now().isoformat()
        super().__init__(self.message)

    def __reduce__(self):
        # keep code and details when crossing a process boundary
        return (self.__class__, (self.message, self.error_code, self.details))


class InputError(SlopeDiameterError):
    """Bad user input: malformed text or values outside an operation's domain"""
    default_code = "INPUT_ERROR"


class MathematicalAssertionError(SlopeDiameterError):
    """A claim that must hold exactly did not"""
    default_code = "ASSERTION_FAILED"


class ParseError(InputError):
    default_code = "PARSE_ERROR"


class OutOfRange(InputError):
    default_code = "OUT_OF_RANGE"


class InvalidConway(InputError):
    default_code = "INVALID_CONWAY"


class NotInvertible(InputError):
    default_code = "NOT_INVERTIBLE"


class PositionOutOfRange(InputError):
    default_code = "POSITION_OUT_OF_RANGE"


class InvalidMask(InputError):
    default_code = "INVALID_MASK"


class UndefinedCF(MathematicalAssertionError):
    """A tail of the continued fraction evaluates to zero"""
    default_code = "UNDEFINED_CF"


class SideConditionViolated(MathematicalAssertionError):
    """A substitution would create a zero term"""
    default_code = "SIDE_CONDITION_VIOLATED"


class SeifertNotFound(MathematicalAssertionError):
    default_code = "SEIFERT_NOT_FOUND"


class SeifertNotUnique(MathematicalAssertionError):
    default_code = "SEIFERT_NOT_UNIQUE"


class EnginesDisagree(MathematicalAssertionError):
    default_code = "ENGINES_DISAGREE"


class LemmaViolation(MathematicalAssertionError):
    default_code = "LEMMA_VIOLATION"


class TheoremViolation(MathematicalAssertionError):
    default_code = "THEOREM_VIOLATION"


class ErrorHandler:
    """Centralized error handling with user-facing messages and exit codes"""

    ERROR_MESSAGES = {
        "PARSE_ERROR": {
            "user_message": "Could not read the fraction. Use the form p/q, e.g. 2/7.",
            "technical_message": "Fraction text did not match p/q"
        },
        "OUT_OF_RANGE": {
            "user_message": "The fraction must satisfy 0 < p/q < 1.",
            "technical_message": "Rational outside the open unit interval"
        },
        "INVALID_CONWAY": {
            "user_message": "Conway notation must be a non-empty list of positive integers.",
            "technical_message": "Conway list empty or has a nonpositive entry"
        },
        "NOT_INVERTIBLE": {
            "user_message": "p and q must be coprime.",
            "technical_message": "p has no inverse modulo q"
        },
        "POSITION_OUT_OF_RANGE": {
            "user_message": "Substitution position does not index a term.",
            "technical_message": "Position outside the partial quotients"
        },
        "INVALID_MASK": {
            "user_message": "Substitution mask must be 0/1 with no adjacent 1s and one bit per term.",
            "technical_message": "Mask length or adjacency check failed"
        },
        "UNDEFINED_CF": {
            "user_message": "The continued fraction does not evaluate to a rational number.",
            "technical_message": "Division by zero during nested evaluation"
        },
        "SIDE_CONDITION_VIOLATED": {
            "user_message": "The substitution is not applicable here.",
            "technical_message": "Successor or predecessor term would become zero"
        },
        "SEIFERT_NOT_FOUND": {
            "user_message": "No all-even expansion was found; the enumeration is incomplete.",
            "technical_message": "Seifert expansion missing"
        },
        "SEIFERT_NOT_UNIQUE": {
            "user_message": "More than one all-even expansion was found.",
            "technical_message": "Seifert expansion ambiguous"
        },
        "ENGINES_DISAGREE": {
            "user_message": "The tree and substitution enumerations produced different expansions.",
            "technical_message": "Dual-engine mismatch"
        },
        "LEMMA_VIOLATION": {
            "user_message": "A subexpansion of absolute value at least one was reached.",
            "technical_message": "Tree remainder bound violated"
        },
        "THEOREM_VIOLATION": {
            "user_message": "Diameter differs from twice the crossing number.",
            "technical_message": "D(K) != 2c(K)"
        }
    }

    @classmethod
    def exit_code_for(cls, error: BaseException) -> int:
        """Map an exception to the CLI exit-code contract"""
        if isinstance(error, MathematicalAssertionError):
            return EXIT_ASSERTION
        return EXIT_USAGE

    @classmethod
    def handle_error(cls, error: Exception, context: str = "") -> Dict[str, Any]:
        """Log the error and return a structured description of it"""
        if isinstance(error, SlopeDiameterError):
            error_code = error.error_code
            details = error.details
        else:
            error_code = cls._map_exception_to_code(error)
            details = {}

        logger.error("operation_failed", context=context, error_code=error_code,
                     error=str(error), details=details)
        logger.debug("traceback", trace=traceback.format_exc())

        user_message = cls.ERROR_MESSAGES.get(error_code, {}).get("user_message", str(error))

        return {
            "success": False,
            "error_code": error_code,
            "user_message": user_message,
            "technical_details": str(error),
            "details": details,
            "context": context,
            "timestamp": datetime.now().isoformat(),
            "exit_code": cls.exit_code_for(error)
        }

    @classmethod
    def _map_exception_to_code(cls, error: Exception) -> str:
        """Map common exceptions to error codes"""
        mapping = {
            "FileNotFoundError": "IO_ERROR",
            "PermissionError": "IO_ERROR",
            "IsADirectoryError": "IO_ERROR",
            "ValueError": "INPUT_ERROR",
            "ZeroDivisionError": "UNDEFINED_CF"
        }
        return mapping.get(type(error).__name__, "UNKNOWN_ERROR")


# Global error handler instance
error_handler = ErrorHandler()
