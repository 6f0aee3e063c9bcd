"""Difference families, cyclotomic liftings, and super-regular 2-designs."""

__version__ = "0.1.0"
