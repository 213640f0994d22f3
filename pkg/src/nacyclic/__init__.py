"""Nonassociative cyclic algebras over finite and local fields."""

__version__ = "0.1.0"
