"""fktor: exact computation of filtrated K-theory invariants over finite spaces."""

__version__ = "0.1.0"
