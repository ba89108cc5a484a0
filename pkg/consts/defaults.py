from fractions import Fraction

# Conjugacy search
CONJUGACY_TOL = 1e-10
CONJUGACY_STARTS = 10
CONJUGACY_MAX_SPECIES = 8
CONJUGACY_LOG_BOUND = 20.0
MAX_DENOMINATOR = 10 ** 6

# Langevin simulation
EM_STEP = 1e-3
EM_HORIZON = 1.0
PSD_TOL = 1e-10
BOX_LOWER = 1e-6
BOX_UPPER = 1e3
SIMULATION_BATCH = 1000

# Witness synthesis
WITNESS_BASE_RATE = Fraction(1)

SEED = 0
THREADS = 1

CONFIG_FILE = "rxnident.toml"
CONFIG_TABLE = "rxnident"
THREADS_ENV = "RXNIDENT_THREADS"
CONFIG_ENV = "RXNIDENT_CONFIG"
