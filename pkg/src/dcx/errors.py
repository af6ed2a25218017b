"""Exception taxonomy shared by every layer of the engine.

All input problems raise subclasses of ValidationError so callers can
distinguish "bad data" from genuine bugs.  Internal cross-check failures
raise EngineInconsistency, which the CLI maps to its alarm exit code.
"""


class ValidationError(ValueError):
    """Input fails a structural precondition."""


class ParseError(ValidationError):
    """A ring/module/complex file could not be parsed."""


class NotCommutative(ValidationError):
    """Structure constants define a non-commutative product."""


class NotAssociative(ValidationError):
    """Structure constants define a non-associative product."""


class NotLocal(ValidationError):
    """The algebra has no unique maximal ideal with residue field k."""


class NotArtinian(ValidationError):
    """A monomial quotient has an infinite standard-monomial basis."""


class NotArtinianLocal(ValidationError):
    """The candidate maximal ideal is not nilpotent."""


class NotModule(ValidationError):
    """Action matrices violate the module axioms."""


class NotSemidualizing(ValidationError):
    """An operation required a semidualizing complex and got a certified non-example."""


class ZeroComplex(ValidationError):
    """A numerical invariant of the zero complex was requested."""


class WindowExceeded(ValidationError):
    """A requested degree lies outside the certified computation window."""


class RankBudgetExceeded(ValidationError):
    """A resolution step would exceed the total free-rank budget."""


class EngineInconsistency(RuntimeError):
    """Two independently certified computation routes disagree.

    This is the bug alarm: it is never raised for inconclusive data,
    only when exact certificates contradict each other.
    """
