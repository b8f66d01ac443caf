"""Error hierarchy shared by every service and the command line."""


class ReciplabError(Exception):
    """Root of all toolkit errors."""


class PreconditionError(ReciplabError, ValueError):
    """The caller supplied arguments outside an operation's domain."""


class InvalidParams(PreconditionError):
    """Parameter tuple violates its structural invariants."""


class PoleProximity(PreconditionError):
    """Evaluation point lies too close to a pole; resample."""


class IntegerArgument(PreconditionError):
    """A rational argument is an integer where a non-integer is required."""


class NotCoprime(PreconditionError):
    """Moduli that must be (pairwise) coprime are not."""


class NotMultiplicityFree(PreconditionError):
    """Two factors share a pole in the fundamental strip."""


class ParityMismatch(PreconditionError):
    """The parity condition attached to a formula does not hold."""


class InadmissibleTriple(PreconditionError):
    """(K1, K2, J) is not one of the admissible kind triples."""


class NotApplicable(PreconditionError):
    """The requested law makes no statement for these parameters."""


class NoConvergence(ReciplabError, ArithmeticError):
    """An iterative numerical extractor hit its cap without settling."""
