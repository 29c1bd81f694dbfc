"""Exception hierarchy. Every error carries a stable machine-readable code
used by the CLI when mapping failures to exit status and JSON diagnostics."""


class TilecutError(Exception):
    code = "error"


class SingularMatrix(TilecutError):
    code = "singular-matrix"


class EmptyPeriod(TilecutError):
    code = "empty-period"


class NotExpanding(TilecutError):
    code = "not-expanding"


class DuplicateDigits(TilecutError):
    code = "duplicate-digits"


class SpecSyntaxError(TilecutError):
    """Malformed tile-spec input; carries 1-based line and column."""

    code = "syntax-error"

    def __init__(self, message, line, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ValidationError(TilecutError):
    code = "validation-error"


class NonConvergence(TilecutError):
    code = "non-convergence"


class BudgetExceeded(TilecutError):
    code = "budget-exceeded"


class MixedLevels(TilecutError):
    code = "mixed-levels"


class NotAPartition(TilecutError):
    code = "not-a-partition"


class ValueCollision(TilecutError):
    """Two distinct digit words at the same level share a lattice value;
    partition arguments on words are unsound for such systems."""

    code = "value-collision"


class SeparationFails(TilecutError):
    code = "separation-fails"

    def __init__(self, level, witness=None):
        msg = f"partition does not separate the level-{level} graph"
        if witness is not None:
            msg += f" (witness path {witness})"
        super().__init__(msg)
        self.level = level
        self.witness = witness


class InductionFails(TilecutError):
    code = "induction-fails"

    def __init__(self, level, detail):
        super().__init__(f"inductive step fails at level {level}: {detail}")
        self.level = level
        self.detail = detail


class NotConnected(TilecutError):
    code = "not-connected"


class CertificateFormatError(TilecutError):
    code = "certificate-format"
