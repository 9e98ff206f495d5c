"""
Exception types raised by the toolkit.

The command-line entry point maps each kind to an exit code: invariant violations exit with 1,
the `ValueError` family exits with 2 like an argparse usage error.
"""

class QuadTitchmarshError(Exception):
    pass


class ConfigurationError(QuadTitchmarshError, ValueError):
    """
    A limit or setting is outside its supported range (e.g. a sieve too small for N).
    """


class DomainError(QuadTitchmarshError, ValueError):
    """
    An argument lies outside the mathematical domain of an operation (even modulus where an odd
    one is required, non-coprime CRT moduli, Z out of range).
    """


class SizeGuardError(QuadTitchmarshError, ValueError):
    """
    A direct evaluation was requested for a modulus above its complexity guard.
    """


class InvariantViolation(QuadTitchmarshError, AssertionError):
    """
    A checked mathematical identity or bound failed. This falsifies the implementation.
    """
