from src.policies.closed_form import ClosedFormPolicy, PolicyCoefficients, coefficients, optimal_order
from src.policies.oracle import brute_force_oracle
