###########################################################
# ERRORS                                                  #
# Every error raised on purpose by lotto-edge derives     #
# from LottoEdgeError. The entry script prints the class  #
# name and exits with 1.                                  #
###########################################################


class LottoEdgeError(Exception):
    """Base class of all the errors lotto-edge raises on purpose"""


class DomainError(LottoEdgeError, ValueError):
    """A numeric argument is outside of the domain of the operation"""


class ConfigError(LottoEdgeError, ValueError):
    """A lottery config, an asset universe or a setting is malformed"""


class TheoremHypothesisError(LottoEdgeError, ValueError):
    """The general U/L bounds only hold for major lotteries (t >= 500) with F >= 0.8"""


class SingularMatrixError(LottoEdgeError, ArithmeticError):
    """A pivot fell below tolerance while solving for the efficient portfolio"""


class NotPositiveDefiniteError(LottoEdgeError, ValueError):
    """The covariance matrix is not positive definite"""


class SizeGuardError(LottoEdgeError, ValueError):
    """The exhaustive oracle was asked for a lottery too large to sum over"""


class DrawingParseError(LottoEdgeError, ValueError):
    """One or more rows of a drawings file could not be parsed.
    `problems` is a list of (row_number, message) tuples, row numbers counting the header as row 1
    """

    def __init__(self, message, problems=None):
        self.problems = problems or []
        details = "; ".join(f"row {row}: {msg}" for row, msg in self.problems)
        super().__init__(f"{message}: {details}" if details else message)
