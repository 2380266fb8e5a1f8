"""Command handlers for spiralcolor."""
