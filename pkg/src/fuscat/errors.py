"""Exception hierarchy shared by every fuscat module."""


class FuscatError(Exception):
    """Base class for all errors raised by fuscat."""


# group construction
class MalformedTable(FuscatError):
    pass


class NoIdentity(FuscatError):
    pass


class NoInverse(FuscatError):
    pass


class NotAssociative(FuscatError):
    pass


class NotBijective(FuscatError):
    pass


class NotASubgroup(FuscatError):
    pass


class NotAPGroup(FuscatError):
    pass


class NotSylow(FuscatError):
    pass


class KNotClosed(FuscatError):
    pass


# size limits; the CLI maps all of these to exit code 3
class CapExceeded(FuscatError):
    pass


class OrderCapExceeded(CapExceeded):
    pass


class HomSetCapExceeded(CapExceeded):
    pass


class SizeCapExceeded(CapExceeded):
    pass


# morphisms
class DomainMismatch(FuscatError):
    pass


class NotAnIsomorphism(FuscatError):
    pass


class NotContained(FuscatError):
    pass


class NotAHomomorphism(FuscatError):
    pass


# integer-linear layer
class QNotProper(FuscatError):
    pass


class NotInKernel(FuscatError):
    pass


class ChainBroken(FuscatError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"chain equation {index} fails")


class NoChain(FuscatError):
    pass


class NotAlperin(FuscatError):
    pass


# axioms / verification
class NotFullyKNormalized(FuscatError):
    pass


class SylowFailed(FuscatError):
    pass


class BadFamily(FuscatError):
    pass


# io
class ParseError(FuscatError):
    pass


class ValidationError(FuscatError):
    def __init__(self, key, message):
        self.key = key
        super().__init__(f"{key}: {message}")


class IncompleteMap(FuscatError):
    pass


class CacheCorrupt(FuscatError):
    pass
