"""Classification of order-64 groups up to monoidal equivalence."""

__version__ = "0.1.0"
