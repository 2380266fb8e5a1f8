"""spiralcolor test suite."""
