"""Verification toolkit for cotangent/cosecant product-to-sum identities and Dedekind-sum reciprocity."""

__version__ = "0.1.0"
