"""Exact models of tensor products of U_q(sl2) modules as invariant functions
on a variety of flags with a square-zero endomorphism."""

__version__ = "0.1.0"
