"""Step-indexed denotational semantics for Monadic System F-mu-ref."""

__version__ = "0.1.0"
