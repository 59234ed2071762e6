"""Test package marker to enable relative imports in test modules."""

