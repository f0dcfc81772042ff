"""Physical constants (SI, CODATA 2018 exact values where defined)."""

HBAR = 1.054_571_817e-34        # reduced Planck constant [J s]
K_BOLTZMANN = 1.380_649e-23     # Boltzmann constant [J/K], exact
FLUX_QUANTUM = 2.067_833_848e-15  # magnetic flux quantum h/(2e) [Wb]
