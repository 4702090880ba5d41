# Test package for the quantum continual-learning workbench
