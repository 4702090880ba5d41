# Quantum continual-learning workbench source package
