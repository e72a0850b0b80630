"""Exact computations in pro-p Iwahori Hecke algebras: parabolic induction,
coinduction, Steinberg quotients, supersingular characters and the
congruences that compare them."""

__version__ = "0.1.0"

from .instances import load_instance, instance_names  # noqa: E402,F401
