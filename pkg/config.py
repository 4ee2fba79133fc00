import os
from dotenv import load_dotenv

load_dotenv()

# =====================================================
# PROTOCOL DEFAULTS
# =====================================================
# Not read from the environment: CLI output depends on arguments only.

# Monte-Carlo runs per estimate
DEFAULT_RUNS = 100

# IC activation probability
DEFAULT_P = 0.1

# FIS-v-p sweeps use an initial spreaders fraction of 0.2
DEFAULT_SWEEP_FRACTION = 0.2

# Plain Louvain
DEFAULT_RESOLUTION = 1.0

# Louvain passes stop once modularity improves by less than this
LOUVAIN_MIN_GAIN = 1e-9

# Live-edge enumeration is 2^E, keep it small
EXACT_SPREAD_MAX_EDGES = 20

# Scores written to CSV
SCORE_DECIMALS = 6

# Work block sizes (never depend on the worker count)
BRANDES_BLOCK = 64
MONTE_CARLO_BLOCK = 50
SCORE_BLOCK = 2048

# =====================================================
# SERVICE SETTINGS
# =====================================================
APP_HOST = os.getenv("HOST", "0.0.0.0")
APP_PORT = int(os.getenv("PORT", 8000))
DEBUG = os.getenv("DEBUG", "False").lower() == "true"
LOG_LEVEL = os.getenv("LOG_LEVEL", "DEBUG" if DEBUG else "INFO").upper()

# Largest edge list accepted by the HTTP service
MAX_UPLOAD_EDGES = int(os.getenv("MAX_UPLOAD_EDGES", 200000))

LOG_FORMAT = "%(asctime)s:%(levelname)s:%(name)s:%(message)s"

VERSION = "1.0.0"
