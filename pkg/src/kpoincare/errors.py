class DomainError(ValueError):
    """Input lies outside the domain of a chart or factorization."""
