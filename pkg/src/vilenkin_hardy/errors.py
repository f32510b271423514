class VilenkinHardyError(Exception):
    pass


class InvalidGeometry(VilenkinHardyError, ValueError):
    pass


class InvalidParams(VilenkinHardyError, ValueError):
    pass


class HypothesisViolation(InvalidParams):
    """A theorem hypothesis failed; ``inequality`` names it."""

    def __init__(self, inequality, detail=""):
        self.inequality = inequality
        msg = f"hypothesis violated: {inequality}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class PoleAtUnitRatio(VilenkinHardyError, ArithmeticError):
    pass


class DivergentNorm(VilenkinHardyError, ArithmeticError):
    pass


class DivergentOperator(VilenkinHardyError, ArithmeticError):
    pass


class UnrepresentableResult(VilenkinHardyError, ArithmeticError):
    pass


class SeriesConvergenceError(VilenkinHardyError, ArithmeticError):
    """A numerically summed series did not settle within its iteration cap."""


class PrecisionExhausted(VilenkinHardyError, ArithmeticError):
    pass


class PrecisionIndeterminate(PrecisionExhausted):
    pass


class UnsupportedModel(VilenkinHardyError, ValueError):
    pass


class GridTooLarge(VilenkinHardyError, ValueError):
    pass
