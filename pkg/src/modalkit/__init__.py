"""modalkit: finite modal spaces, weak implication, proof systems, and the modal lambda calculus."""

__version__ = "0.1.0"
