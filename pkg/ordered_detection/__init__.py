# ordered_detection - one-bit distributed detection with modulus-ordered transmissions
# Exact order-statistics error probabilities, EVT threshold design and
# Monte Carlo simulation of sensor networks of random size.

__version__ = "0.1.0"
