class JacobiNoConvergence(ArithmeticError):
    """Raised when the sweep budget runs out before the off-diagonal norm is small."""
