"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`WebflatError`,
so the command line front end can tell contract violations (exit 1) apart from
usage errors and genuine bugs.
"""


class WebflatError(Exception):
    """Base class for mathematical contract errors."""

    code = "WebflatError"

    def payload(self):
        return {"error": self.code, "message": str(self)}


class NotDivisible(WebflatError, ArithmeticError):
    code = "NotDivisible"


class BothConstant(WebflatError, ValueError):
    code = "BothConstant"


class ZeroPolynomial(WebflatError, ValueError):
    code = "ZeroPolynomial"


class SingularMatrix(WebflatError, ValueError):
    code = "SingularMatrix"


class NotEuler(WebflatError, ValueError):
    code = "NotEuler"


class IncompleteSingularLocus(WebflatError):
    code = "IncompleteSingularLocus"

    def __init__(self, message, points=None):
        super().__init__(message)
        self.points = points or []


class NonIsolated(WebflatError):
    code = "NonIsolated"


class Degenerate(WebflatError):
    code = "Degenerate"


class IndeterminateCS(WebflatError):
    code = "IndeterminateCS"


class DegenerateDual(WebflatError):
    code = "DegenerateDual"


class NotAThreeWeb(WebflatError):
    code = "NotAThreeWeb"


class ZeroResultant(WebflatError):
    code = "ZeroResultant"


class WrongScale(WebflatError):
    code = "WrongScale"

    def __init__(self, valuation):
        super().__init__(f"scaled family has eps-valuation {valuation}, expected 0")
        self.valuation = valuation

    def payload(self):
        return {"error": self.code, "message": str(self), "valuation": self.valuation}


class DegenerateLimit(WebflatError):
    code = "DegenerateLimit"


class NotDoubleInflection(WebflatError):
    code = "NotDoubleInflection"

    def __init__(self, message, data=None):
        super().__init__(message)
        self.data = data

    def payload(self):
        out = super().payload()
        if self.data is not None:
            out["data"] = {k: str(v) for k, v in dict(self.data).items()}
        return out


class HypothesisViolated(WebflatError):
    code = "HypothesisViolated"


class UnknownEntry(WebflatError, KeyError):
    code = "UnknownEntry"

    def __str__(self):
        return Exception.__str__(self)


class ParseError(WebflatError, ValueError):
    """Syntax error in the form language, with position information."""

    code = "ParseError"

    def __init__(self, message, text, offset, expected=()):
        self.text_src = text
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        before = text[:offset]
        self.line = before.count("\n") + 1
        self.column = offset - (before.rfind("\n") + 1) + 1
        exp = f"; expected one of {', '.join(self.expected)}" if self.expected else ""
        super().__init__(f"{message} at line {self.line}, column {self.column} (offset {offset}){exp}")

    def payload(self):
        return {
            "error": self.code,
            "message": str(self),
            "line": self.line,
            "column": self.column,
            "offset": self.offset,
            "expected": list(self.expected),
        }
