"""Unit tests for the reciplab services, models and reporting."""
