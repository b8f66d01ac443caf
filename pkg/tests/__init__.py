"""Test package for reciplab."""
