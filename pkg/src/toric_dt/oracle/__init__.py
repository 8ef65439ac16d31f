"""Independent oracles used to check the closed formulas."""
