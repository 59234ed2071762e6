"""Integration tests package marker for relative imports (e.g., .conftest)."""

