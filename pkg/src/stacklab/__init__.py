"""stacklab: repeated Stackelberg games against discounted agents.

Subpackages: core (games/agents/screens/regret), ssg (security-game search),
demand (posted prices), classify (strategic classification), finite (small
matrix games), oracles (brute-force references), harness (CLI + sweeps).
"""

__version__ = "0.1.0"
