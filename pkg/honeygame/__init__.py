"""
Honeypot deployment game for blockchain-IoT networks.

Bayesian equilibrium solver for the defender/attacker game plus a Monte Carlo
engine that scores fixed-threshold and F1-driven deployment strategies.
"""

__version__ = "0.1.0"
