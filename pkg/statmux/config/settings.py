from pathlib import Path

# Package Root
PACKAGE_ROOT = Path(__file__).parent.parent

# Bundled fixtures
FIXTURE_DIR = PACKAGE_ROOT / "fixtures"
VARIANCE_GRID_FIXTURE = FIXTURE_DIR / "class_variance_grid.csv"
PSNR_FOUR_STREAMS_FIXTURE = FIXTURE_DIR / "psnr_four_streams.csv"
PSNR_FIVE_STREAMS_FIXTURE = FIXTURE_DIR / "psnr_five_streams.csv"
SIX_CLASS_PACK = FIXTURE_DIR / "six_class_pack.yaml"
EXAMPLE_CONFIG = FIXTURE_DIR / "example_config.yaml"

# Scenario file schema
SCHEMA_VERSION = 1

# Super GOP geometry
SUPER_GOP_FRAMES = 10
FRAME_RATE = 25.0
GOP_COUNT = 13

# Allocation
FLOOR_FRACTION = 0.05

# 8-bit luma peak
PSNR_PEAK = 255.0

# sigma drift (geometric AR(1))
SIGMA_DRIFT_PHI = 0.9
SIGMA_DRIFT_SD = 0.1

# synthetic complexity path
COMPLEXITY_DRIFT_PHI = 0.8
COMPLEXITY_DRIFT_SD = 0.1

# Output files
GOP_REPORT_FILE = "gop_report.csv"
SUMMARY_FILE = "summary.csv"
RUN_INFO_FILE = "run.yaml"
TABLE_FILE = "table1.txt"
SWEEP_FILE = "sweep.csv"
VARIANCE_PLOT_FILE = "variance_by_gop.dat"
FIT_FILE = "fit.csv"
FIT_PLOT_FILE = "rd_fit.dat"
