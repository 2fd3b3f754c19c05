"""First-order logic over automatic sequences, decided by finite automata."""

__version__ = "0.1.0"
