"""
Exception taxonomy for the flexi-clique toolkit
The CLI maps these onto exit codes (see flexi_cli.py)
"""


class FlexiError(Exception):
    """Base class for every error raised by the toolkit"""


class TauError(FlexiError, ValueError):
    """Exponent outside [0, 1) or unparsable exponent text"""


class GraphInputError(FlexiError):
    """Malformed edge list, unknown dataset or infeasible generator arguments"""


class GraphSizeError(GraphInputError):
    """Too many distinct node identifiers for the dense index space"""


class OracleSizeError(FlexiError):
    """Brute-force oracle refused: graph above its node cap"""


class ConnectivityContractError(FlexiError, RuntimeError):
    """Dynamic connectivity used outside its contract (double insert/delete, dead node)"""


class InvariantViolation(FlexiError, AssertionError):
    """A debug-mode invariant check failed inside a solver"""
