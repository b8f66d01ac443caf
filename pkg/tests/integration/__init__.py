"""CLI and acceptance-suite tests."""
