class DomainError(ValueError):
    """An input violates a mathematical precondition (rank bound, level, size)."""
