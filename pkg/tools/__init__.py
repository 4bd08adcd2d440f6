"""Scenario files, serialization, DOT export and output directories."""
