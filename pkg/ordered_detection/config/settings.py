"""
Ordered Detection Settings

Numerical tolerances, simulation sizing and output locations.
"""
import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables
for env_path in ['.env.local', '.env', '../.env.local', '../.env']:
    if os.path.exists(env_path):
        load_dotenv(dotenv_path=env_path)
        break

# Numerics
TAIL_EPS = 1e-14             # Infinite ranges are cut at quantile(eps), quantile(1 - eps)
QUAD_TOL = 1e-10             # Absolute quadrature tolerance
QUAD_LIMIT = 500             # Max subintervals for adaptive quadrature
QUAD_ACCEPT_FACTOR = 100     # Flagged quadrature accepted while abserr <= factor * tol
ROOT_TOL = 1e-12             # Bracket width for root finding
PMF_MASS_TOL = 1e-10         # Truncated size pmf must keep 1 - PMF_MASS_TOL of the mass
POISSON_TRUNCATION_SD = 12   # Poisson pmf kept on mean +/- 12 standard deviations

# Expectations over the size-limit law R
EXPECTATION_MC_SAMPLES = 10**6
EXPECTATION_REL_TOL = 1e-4

# Tail dominance classification (ratio right tail / left tail)
TAIL_RATIO_RIGHT = 1e3
TAIL_RATIO_LEFT = 1e-3
TAIL_GRID_EXPONENTS = range(2, 13)   # x = quantile(1 - 10**-k)

# Monte Carlo
CONFIDENCE_LEVEL = 0.95      # Wilson intervals
DEFAULT_TRIALS = 10**6       # Per (hypothesis, nu) grid point
MAX_BLOCK_TRIALS = 10_000    # Trials per random-stream block
MAX_BLOCK_SAMPLES = 2_000_000  # Sensor samples per block (bounds memory)
MC_WORKERS = int(os.getenv('MC_WORKERS', '1'))

# Output directories
DATA_DIR = Path(os.getenv('ORDERED_DETECTION_DATA_DIR', Path(__file__).parent.parent.parent / 'data'))
RESULTS_DIR = DATA_DIR / 'results'
