"""Exception types raised by the library.

Every error that reports a concrete violation carries the offending
indices so callers (and the CLI) can point at the exact element, triple,
or premise that failed.
"""


class PermutableError(Exception):
    """Base class for all library errors."""


class NotAssociative(PermutableError):
    def __init__(self, triple):
        self.triple = tuple(int(t) for t in triple)
        i, j, k = self.triple
        super().__init__(f"multiplication not associative at triple ({i}, {j}, {k})")


class NoIdentity(PermutableError):
    def __init__(self):
        super().__init__("table has no two-sided identity element")


class NoInverse(PermutableError):
    def __init__(self, element):
        self.element = int(element)
        super().__init__(f"element {self.element} has no two-sided inverse")


class NotBijectiveRows(PermutableError):
    def __init__(self, index, axis):
        self.index = int(index)
        self.axis = axis
        super().__init__(f"{axis} {self.index} of the table is not a permutation")


class OrderCapExceeded(PermutableError):
    def __init__(self, reached, cap):
        self.reached = int(reached)
        self.cap = int(cap)
        super().__init__(f"group order reached {reached}, cap is {cap}")


class SubgroupLimitExceeded(PermutableError):
    def __init__(self, detail):
        super().__init__(detail)


class InvalidAction(PermutableError):
    def __init__(self, row, detail="row is not an automorphism"):
        self.row = int(row)
        super().__init__(f"action row {self.row}: {detail}")


class NotNormal(PermutableError):
    def __init__(self, element=None):
        self.element = None if element is None else int(element)
        msg = "subgroup is not normal"
        if element is not None:
            msg += f" (conjugation by element {self.element} escapes)"
        super().__init__(msg)


class NotASupplement(PermutableError):
    def __init__(self):
        super().__init__("H*S does not cover the whole group")


class NoComplementFound(PermutableError):
    def __init__(self, detail="no permutable complement exists"):
        super().__init__(detail)


class NoChainFound(PermutableError):
    def __init__(self, level, detail):
        self.level = int(level)
        super().__init__(f"complement chain stuck at level {level}: {detail}")


class HypothesisViolated(PermutableError):
    def __init__(self, premise):
        self.premise = premise
        super().__init__(f"hypothesis violated: {premise}")


class NotAbelianNormal(PermutableError):
    def __init__(self, detail):
        super().__init__(detail)


class NotSemidirect(PermutableError):
    def __init__(self, detail):
        super().__init__(detail)


class LineNotInvariant(PermutableError):
    def __init__(self, line_index, element):
        self.line_index = int(line_index)
        self.element = int(element)
        super().__init__(
            f"line {self.line_index} is moved by conjugation with element {self.element}"
        )


class BadParams(PermutableError):
    def __init__(self, detail):
        super().__init__(detail)


class ParseError(PermutableError):
    def __init__(self, location, detail):
        self.location = location
        super().__init__(f"{location}: {detail}")
