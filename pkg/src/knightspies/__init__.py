"""Knights and spies: interrogation strategies, adversaries, exact
combinatorics, a Monte Carlo harness and a playable two-player game."""

__version__ = "0.1.0"
