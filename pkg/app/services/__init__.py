"""Core services: graphs, decomposition, coloring, oracle and harness."""
