"""Exception types raised by the pipeline.

Every error carries a short machine-readable ``kind`` used by the CLI
when reporting failures and by the scanner when writing status columns.
"""


class ShaForgeError(Exception):
    kind = "error"


class FactorTooHard(ShaForgeError):
    kind = "unfactored"

    def __init__(self, cofactor):
        super().__init__(f"unfactored composite cofactor with {len(str(cofactor))} digits")
        self.cofactor = cofactor


class SingularCurve(ShaForgeError):
    kind = "singular-curve"


class BadReduction(ShaForgeError):
    kind = "bad-reduction"


class BudgetExceeded(ShaForgeError):
    kind = "budget-exceeded"

    def __init__(self, m, max_terms):
        super().__init__(f"{m} terms needed, budget is {max_terms}")
        self.m = m
        self.max_terms = max_terms


class ApparentPositiveRank(ShaForgeError):
    kind = "apparent-positive-rank"


class NotASquare(ShaForgeError):
    kind = "not-a-square"


class ClassInconsistent(ShaForgeError):
    kind = "class-inconsistent"


class DegenerateParameters(ShaForgeError):
    kind = "degenerate-parameters"


class CheckpointCorrupt(ShaForgeError):
    kind = "checkpoint-corrupt"


class ScanHalted(ShaForgeError):
    kind = "scan-halted"
